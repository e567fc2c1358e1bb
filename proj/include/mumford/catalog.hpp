#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mumford/realize.hpp"
#include "mumford/tree.hpp"

namespace mumford {

// ---- bounds for the enumerators ---------------------------------------------

struct EnumBounds {
    uint64_t qmax = 9;   // q = p^n
    uint64_t nmax = 3;   // Borel rank multipliers n_1, n_2, ...
    uint64_t mmax = 12;  // torus orders m for the Borel-Borel family
    uint64_t lmax = 15;  // dihedral orders
    uint64_t n0max = 2;  // rank of the designated p-group middle vertex
};

struct FamilyInstance {
    std::string family_id;
    std::map<std::string, uint64_t> params;
    TreeOfGroups tree;
};

// ---- slot lookup -------------------------------------------------------------

// Tag of the (skip+1)-th branch slot of `vspec` that accepts an edge group
// `espec` in characteristic p.
inline std::string slot_for(const GroupSpec& vspec, const GroupSpec& espec, uint64_t p,
                            int skip = 0) {
    auto vc = canon_at(vspec, p);
    auto ec = canon_at(espec, p);
    if (!vc || !ec) throw invalid_input("slot_for: spec not embeddable");
    for (const auto& s : branch_data(vspec, p)) {
        if (detail::slot_accepts_edge(*vc, s.group, *ec, p)) {
            if (skip == 0) return s.tag;
            --skip;
        }
    }
    throw invalid_input("slot_for: " + vspec.str() + " has no slot for " + espec.str());
}

// ---- chain / star builders ----------------------------------------------------

struct ChainSpec {
    // vertices and the edge groups between consecutive ones; designated marks
    // the p-group middle vertices of the maxp construction
    std::vector<GroupSpec> v;
    std::vector<GroupSpec> e;
    std::vector<bool> designated;  // per vertex; empty = none
    // optional explicit slot override per edge side; "" = use slot_for
    std::vector<std::pair<std::string, std::string>> slots;
};

inline TreeOfGroups chain_tree(uint64_t p, const ChainSpec& c, size_t from, size_t to) {
    TreeOfGroups t;
    t.p = p;
    for (size_t i = from; i <= to; ++i) {
        TreeVertex tv;
        tv.id = "v" + std::to_string(i - from + 1);
        tv.group = c.v[i];
        tv.designated = !c.designated.empty() && c.designated[i];
        t.vertices.push_back(tv);
    }
    for (size_t i = from; i < to; ++i) {
        TreeEdge te;
        te.u = "v" + std::to_string(i - from + 1);
        te.v = "v" + std::to_string(i - from + 2);
        te.group = c.e[i];
        std::string su, sv;
        if (!c.slots.empty()) {
            su = c.slots[i].first;
            sv = c.slots[i].second;
        }
        te.slot_u = su.empty() ? slot_for(c.v[i], c.e[i], p) : su;
        te.slot_v = sv.empty() ? slot_for(c.v[i + 1], c.e[i], p) : sv;
        t.edges.push_back(te);
    }
    return t;
}

// A star with a central vertex and chain arms.  Each arm is a chain whose
// first edge attaches to the center at an explicit slot.
struct ArmSpec {
    std::string center_slot;
    std::vector<GroupSpec> v;  // outward
    std::vector<GroupSpec> e;  // e[0] joins center to v[0]
};

inline TreeOfGroups star_tree(uint64_t p, const GroupSpec& center,
                              const std::vector<ArmSpec>& arms,
                              const std::vector<size_t>& arm_lengths) {
    TreeOfGroups t;
    t.p = p;
    t.vertices.push_back({"c", center, false});
    for (size_t a = 0; a < arms.size(); ++a) {
        std::string prev = "c";
        for (size_t i = 0; i < arm_lengths[a]; ++i) {
            std::string id = "a" + std::to_string(a + 1) + "_" + std::to_string(i + 1);
            t.vertices.push_back({id, arms[a].v[i], false});
            TreeEdge te;
            te.u = prev;
            te.v = id;
            te.group = arms[a].e[i];
            te.slot_u = (i == 0) ? arms[a].center_slot
                                 : slot_for(arms[a].v[i - 1], arms[a].e[i], p);
            te.slot_v = slot_for(arms[a].v[i], arms[a].e[i], p);
            t.edges.push_back(te);
            prev = id;
        }
    }
    return t;
}

namespace detail {

// All contiguous subchains with at least one edge, as instances.
inline void emit_chain_truncations(uint64_t p, const std::string& family_id,
                                   const std::map<std::string, uint64_t>& params,
                                   const ChainSpec& c, std::vector<FamilyInstance>& out) {
    const size_t n = c.v.size();
    for (size_t from = 0; from + 1 < n; ++from)
        for (size_t to = from + 1; to < n; ++to) {
            FamilyInstance fi;
            fi.family_id = family_id;
            fi.params = params;
            fi.params["trunc_from"] = from;
            fi.params["trunc_to"] = to;
            try {
                fi.tree = chain_tree(p, c, from, to);
            } catch (const invalid_input&) {
                continue;  // a sub-spec is invalid at this p; shorter cuts may be fine
            }
            if (!validate(fi.tree).empty()) continue;
            out.push_back(std::move(fi));
        }
}

inline void dedup_instances(std::vector<FamilyInstance>& v) {
    std::sort(v.begin(), v.end(), [](const FamilyInstance& a, const FamilyInstance& b) {
        if (a.family_id != b.family_id) return a.family_id < b.family_id;
        return a.params < b.params;
    });
    std::set<std::string> seen;
    std::vector<FamilyInstance> out;
    for (auto& fi : v)
        if (seen.insert(tree_canonical_form(fi.tree)).second) out.push_back(std::move(fi));
    v = std::move(out);
}

inline bool borel_ok(uint64_t rank, uint64_t m, uint64_t p) {
    return rank >= 1 && spec_valid(borel(rank, m), p);
}

}  // namespace detail

// ---- the two-branch-point families (maximal chains and their truncations) ----

inline std::vector<FamilyInstance> enumerate_two_branch(uint64_t p, const EnumBounds& B) {
    std::vector<FamilyInstance> out;
    auto add = [&](const std::string& id, std::map<std::string, uint64_t> params, ChainSpec c) {
        detail::emit_chain_truncations(p, id, params, c, out);
    };

    std::vector<std::pair<uint64_t, uint64_t>> qs;  // (q, n)
    for (uint64_t q = p, n = 1; q <= B.qmax; q *= p, ++n) qs.push_back({q, n});

    for (auto [q, n] : qs) {
        for (uint64_t n1 = 1; n1 <= B.nmax; ++n1)
            for (uint64_t n2 = 1; n2 <= B.nmax; ++n2) {
                // (i)
                if (n1 >= 1 && n2 >= 2 && q > 2 && detail::borel_ok(2 * n * n1, q + 1, p) &&
                    detail::borel_ok(n * n2, q - 1, p))
                    add("3.2.i", {{"q", q}, {"n1", n1}, {"n2", n2}},
                        {{borel(2 * n * n1, q + 1), pgl2(q), borel(n * n2, q - 1)},
                         {cyclic(q + 1), borel(n, q - 1)}});
                // (ii)
                if (n1 >= 2 && n2 >= 2 && q > 2 && detail::borel_ok(n * n1, q - 1, p) &&
                    detail::borel_ok(n * n2, q - 1, p))
                    add("3.2.ii", {{"q", q}, {"n1", n1}, {"n2", n2}},
                        {{borel(n * n1, q - 1), pgl2(q), pgl2(q), borel(n * n2, q - 1)},
                         {borel(n, q - 1), cyclic(q + 1), borel(n, q - 1)}});
                if (p != 2) {
                    const uint64_t h = (q - 1) / 2, k = (q + 1) / 2;
                    const uint64_t s = (q > 3) ? 2 : 1;
                    // (iii)
                    if (n1 >= 1 && n2 >= 2 && detail::borel_ok(s * n * n1, k, p) &&
                        (h == 1 ? true : detail::borel_ok(n * n2, h, p)))
                        add("3.2.iii", {{"q", q}, {"n1", n1}, {"n2", n2}},
                            {{borel(s * n * n1, k), psl2(q), borel(n * n2, h)},
                             {cyclic(k), borel(n, h)}});
                    // (iv)
                    if (n1 >= 2 && n2 >= 2 && detail::borel_ok(n * n1, h, p) &&
                        detail::borel_ok(n * n2, h, p))
                        add("3.2.iv", {{"q", q}, {"n1", n1}, {"n2", n2}},
                            {{borel(n * n1, h), psl2(q), psl2(q), borel(n * n2, h)},
                             {borel(n, h), cyclic(k), borel(n, h)}});
                }
                // (xi)
                if (p == 2 && q > 2 && n1 >= 2 && n2 >= 2 &&
                    detail::borel_ok(n * n2, q - 1, p))
                    add("3.2.xi", {{"q", q}, {"n1", n1}, {"n2", n2}},
                        {{borel(n1, 1), dihedral(q + 1), pgl2(q), borel(n * n2, q - 1)},
                         {cyclic(2), cyclic(q + 1), borel(n, q - 1)}});
            }
    }

    // (v): Borel-Borel over the shared torus; m = 1 gives the decomposable
    // free products of p-groups
    for (uint64_t m = 1; m <= B.mmax; ++m) {
        if (m % p == 0) continue;
        for (uint64_t n1 = 1; n1 <= B.nmax; ++n1)
            for (uint64_t n2 = n1; n2 <= B.nmax; ++n2) {
                if (m > 1 && (!detail::borel_ok(n1, m, p) || !detail::borel_ok(n2, m, p)))
                    continue;
                FamilyInstance fi;
                fi.family_id = "3.2.v";
                fi.params = {{"m", m}, {"n1", n1}, {"n2", n2}};
                if (m == 1) {
                    fi.tree = free_product_tree(p, borel(n1, 1), borel(n2, 1));
                } else {
                    fi.tree = two_vertex_tree(p, borel(n1, m), "torus", cyclic(m), borel(n2, m),
                                              "torus");
                }
                if (validate(fi.tree).empty()) out.push_back(std::move(fi));
            }
    }

    if (p == 3) {
        for (uint64_t n1 = 1; n1 <= B.nmax; ++n1)
            for (uint64_t n2 = 1; n2 <= B.nmax; ++n2) {
                // (vi)
                if (n2 >= 2 && detail::borel_ok(2 * n1, 5, p) && detail::borel_ok(n2, 2, p))
                    add("3.2.vi", {{"n1", n1}, {"n2", n2}},
                        {{borel(2 * n1, 5), a5(), borel(n2, 2)}, {cyclic(5), borel(1, 2)}});
                // (vii)
                if (n1 >= 2 && n2 >= 2)
                    add("3.2.vii", {{"n1", n1}, {"n2", n2}},
                        {{borel(n1, 2), a5(), a5(), borel(n2, 2)},
                         {borel(1, 2), cyclic(5), borel(1, 2)}});
                // (viii)
                if (n1 >= 2 && n2 >= 2 && 9 <= B.qmax)
                    add("3.2.viii", {{"n1", n1}, {"n2", n2}},
                        {{borel(n1, 2), a5(), psl2(9), borel(2 * n2, 4)},
                         {borel(1, 2), cyclic(5), borel(2, 4)}});
            }
    }

    if (p == 2) {
        for (uint64_t l = 3; l <= B.lmax; l += 2) {
            for (uint64_t n1 = 2; n1 <= B.nmax; ++n1)
                for (uint64_t n2 = 2; n2 <= B.nmax; ++n2) {
                    // (ix): l | 2^{n1} - 1
                    if (detail::borel_ok(n1, l, p))
                        add("3.2.ix", {{"l", l}, {"n1", n1}, {"n2", n2}},
                            {{borel(n1, l), dihedral(l), borel(n2, 1)},
                             {cyclic(l), cyclic(2)}});
                    // (x)
                    add("3.2.x", {{"l", l}, {"n1", n1}, {"n2", n2}},
                        {{borel(n1, 1), dihedral(l), dihedral(l), borel(n2, 1)},
                         {cyclic(2), cyclic(l), cyclic(2)}});
                }
        }
    }

    detail::dedup_instances(out);
    return out;
}

// ---- the three-branch-point families ------------------------------------------

inline std::vector<FamilyInstance> enumerate_three_branch(uint64_t p, const EnumBounds& B) {
    std::vector<FamilyInstance> out;
    auto add_chain = [&](const std::string& id, std::map<std::string, uint64_t> params,
                         ChainSpec c) { detail::emit_chain_truncations(p, id, params, c, out); };

    std::vector<std::pair<uint64_t, uint64_t>> qs;
    for (uint64_t q = p, n = 1; q <= B.qmax; q *= p, ++n) qs.push_back({q, n});

    if (p == 2) {
        for (uint64_t n0 = 1; n0 <= B.n0max; ++n0)
            for (uint64_t l = 3; l <= B.lmax; l += 2)
                for (uint64_t m = 3; m <= B.lmax; m += 2)
                    for (uint64_t n1 = 2; n1 <= B.nmax; ++n1)
                        for (uint64_t n2 = 2; n2 <= B.nmax; ++n2) {
                            if (detail::borel_ok(n1, l, p) && detail::borel_ok(n2, m, p)) {
                                ChainSpec c;
                                c.v = {borel(n1, l), dihedral(l), borel(n0, 1), dihedral(m),
                                       borel(n2, m)};
                                c.e = {cyclic(l), cyclic(2), cyclic(2), cyclic(m)};
                                c.designated = {false, false, true, false, false};
                                add_chain("4.3.i",
                                          {{"l", l}, {"m", m}, {"n0", n0}, {"n1", n1}, {"n2", n2}},
                                          c);
                            }
                            if (detail::borel_ok(n1, l, p)) {
                                ChainSpec c;
                                c.v = {borel(n1, l), dihedral(l), borel(n0, 1), dihedral(m),
                                       dihedral(m), borel(n2, 1)};
                                c.e = {cyclic(l), cyclic(2), cyclic(2), cyclic(m), cyclic(2)};
                                c.designated = {false, false, true, false, false, false};
                                add_chain("4.3.ii",
                                          {{"l", l}, {"m", m}, {"n0", n0}, {"n1", n1}, {"n2", n2}},
                                          c);
                            }
                            {
                                ChainSpec c;
                                c.v = {borel(n1, 1), dihedral(l), dihedral(l), borel(n0, 1),
                                       dihedral(m), dihedral(m), borel(n2, 1)};
                                c.e = {cyclic(2), cyclic(l), cyclic(2), cyclic(2), cyclic(m),
                                       cyclic(2)};
                                c.designated = {false, false, false, true, false, false, false};
                                add_chain("4.3.iii",
                                          {{"l", l}, {"m", m}, {"n0", n0}, {"n1", n1}, {"n2", n2}},
                                          c);
                            }
                        }
        // (iv), (v)
        for (uint64_t n0 = 1; n0 <= B.n0max; ++n0)
            for (auto [q, n] : qs) {
                if (q <= 2) continue;
                for (uint64_t l = 3; l <= B.lmax; l += 2)
                    for (uint64_t n1 = 2; n1 <= B.nmax; ++n1)
                        for (uint64_t j2 = 2; j2 <= B.nmax; ++j2)
                            if (detail::borel_ok(n1, l, p) &&
                                detail::borel_ok(n * j2, q - 1, p)) {
                                ChainSpec c;
                                c.v = {borel(n1, l),     dihedral(l), borel(n0, 1),
                                       dihedral(q + 1), pgl2(q),     borel(n * j2, q - 1)};
                                c.e = {cyclic(l), cyclic(2), cyclic(2), cyclic(q + 1),
                                       borel(n, q - 1)};
                                c.designated = {false, false, true, false, false, false};
                                add_chain("4.3.iv",
                                          {{"q", q}, {"l", l}, {"n0", n0}, {"n1", n1}, {"n2", j2}},
                                          c);
                            }
                for (auto [q2, nn2] : qs) {
                    if (q2 <= 2) continue;
                    for (uint64_t j1 = 2; j1 <= B.nmax; ++j1)
                        for (uint64_t j2 = 2; j2 <= B.nmax; ++j2)
                            if (detail::borel_ok(n * j1, q - 1, p) &&
                                detail::borel_ok(nn2 * j2, q2 - 1, p)) {
                                ChainSpec c;
                                c.v = {borel(n * j1, q - 1), pgl2(q),  dihedral(q + 1),
                                       borel(n0, 1),         dihedral(q2 + 1), pgl2(q2),
                                       borel(nn2 * j2, q2 - 1)};
                                c.e = {borel(n, q - 1), cyclic(q + 1),  cyclic(2), cyclic(2),
                                       cyclic(q2 + 1), borel(nn2, q2 - 1)};
                                c.designated = {false, false, false, true, false, false, false};
                                add_chain("4.3.v",
                                          {{"q1", q}, {"q2", q2}, {"n0", n0}, {"n1", j1},
                                           {"n2", j2}},
                                          c);
                            }
                }
            }
    }

    if (p == 3) {
        for (uint64_t n0 = 1; n0 <= B.n0max; ++n0)
            for (uint64_t n1 = 1; n1 <= B.nmax; ++n1)
                for (uint64_t n2 = 1; n2 <= B.nmax; ++n2) {
                    {
                        ChainSpec c;
                        c.v = {borel(n1, 2), psl2(3), borel(n0, 1), psl2(3), borel(n2, 2)};
                        c.e = {cyclic(2), cyclic(3), cyclic(3), cyclic(2)};
                        c.designated = {false, false, true, false, false};
                        add_chain("4.4.i", {{"n0", n0}, {"n1", n1}, {"n2", n2}}, c);
                    }
                    if (n2 >= 2) {
                        ChainSpec c;
                        c.v = {borel(n1, 2), psl2(3), borel(n0, 1), psl2(3), psl2(3),
                               borel(n2, 1)};
                        c.e = {cyclic(2), cyclic(3), cyclic(3), cyclic(2), cyclic(3)};
                        c.designated = {false, false, true, false, false, false};
                        add_chain("4.4.ii", {{"n0", n0}, {"n1", n1}, {"n2", n2}}, c);
                    }
                    if (n1 >= 2 && n2 >= 2) {
                        ChainSpec c;
                        c.v = {borel(n1, 1), psl2(3), psl2(3), borel(n0, 1), psl2(3), psl2(3),
                               borel(n2, 1)};
                        c.e = {cyclic(3), cyclic(2), cyclic(3), cyclic(3), cyclic(2), cyclic(3)};
                        c.designated = {false, false, false, true, false, false, false};
                        add_chain("4.4.iii", {{"n0", n0}, {"n1", n1}, {"n2", n2}}, c);
                    }
                }
    }

    // ---- tame-center stars (4.5 - 4.8) ----
    auto add_star = [&](const std::string& id, std::map<std::string, uint64_t> params,
                        const GroupSpec& center, const std::vector<ArmSpec>& arms) {
        // truncations: every combination of arm prefixes with at least one edge
        std::vector<size_t> lens(arms.size(), 0);
        while (true) {
            size_t total = 0;
            for (size_t i = 0; i < arms.size(); ++i) total += lens[i];
            if (total >= 1) {
                FamilyInstance fi;
                fi.family_id = id;
                fi.params = params;
                for (size_t i = 0; i < arms.size(); ++i)
                    fi.params["arm" + std::to_string(i + 1)] = lens[i];
                bool built = true;
                try {
                    fi.tree = star_tree(p, center, arms, lens);
                } catch (const invalid_input&) {
                    built = false;
                }
                if (built && validate(fi.tree).empty()) out.push_back(std::move(fi));
            }
            // odometer
            size_t i = 0;
            for (; i < arms.size(); ++i) {
                if (lens[i] < arms[i].v.size()) {
                    ++lens[i];
                    for (size_t j = 0; j < i; ++j) lens[j] = 0;
                    break;
                }
            }
            if (i == arms.size()) break;
        }
    };

    auto borel_arm = [&](const std::string& slot, uint64_t rank, uint64_t m,
                         const GroupSpec& egrp) {
        ArmSpec a;
        a.center_slot = slot;
        a.v = {borel(rank, m)};
        a.e = {egrp};
        return a;
    };

    if (p > 5) {
        for (uint64_t n1 = 1; n1 <= B.nmax; ++n1)
            for (uint64_t n2 = 1; n2 <= B.nmax; ++n2)
                for (uint64_t n3 = 1; n3 <= B.nmax; ++n3) {
                    add_star("4.5", {{"n1", n1}, {"n2", n2}, {"n3", n3}}, a5(),
                             {borel_arm("c2", n1, 2, cyclic(2)),
                              borel_arm("c3", n2, 3, cyclic(3)),
                              borel_arm("c5", n3, 5, cyclic(5))});
                }
    }
    if (p > 3) {
        for (uint64_t n1 = 1; n1 <= B.nmax; ++n1)
            for (uint64_t n2 = 1; n2 <= B.nmax; ++n2)
                for (uint64_t n3 = 1; n3 <= B.nmax; ++n3) {
                    if (detail::borel_ok(n1, 2, p) && detail::borel_ok(n2, 3, p) &&
                        detail::borel_ok(n3, 4, p))
                        add_star("4.6.i", {{"n1", n1}, {"n2", n2}, {"n3", n3}}, s4(),
                                 {borel_arm("c2", n1, 2, cyclic(2)),
                                  borel_arm("c3", n2, 3, cyclic(3)),
                                  borel_arm("c4", n3, 4, cyclic(4))});
                    // 4.6(ii): p = 5 replaces the C_3 arm
                    if (p == 5 && detail::borel_ok(n1, 2, p) && detail::borel_ok(n3, 4, p))
                        for (uint64_t n4 = 2; n4 <= B.nmax; ++n4) {
                            if (!detail::borel_ok(n4, 2, p)) continue;
                            ArmSpec rep;
                            rep.center_slot = "c3";
                            rep.v = {psl2(5), borel(n4, 2)};
                            rep.e = {cyclic(3), borel(1, 2)};
                            add_star("4.6.ii", {{"n1", n1}, {"n3", n3}, {"n4", n4}}, s4(),
                                     {borel_arm("c2", n1, 2, cyclic(2)), rep,
                                      borel_arm("c4", n3, 4, cyclic(4))});
                        }
                    // 4.6(iii): p = 7 replaces the C_4 arm
                    if (p == 7 && detail::borel_ok(n1, 2, p) && detail::borel_ok(n2, 3, p))
                        for (uint64_t n5 = 2; n5 <= B.nmax; ++n5) {
                            if (!detail::borel_ok(n5, 3, p)) continue;
                            ArmSpec rep;
                            rep.center_slot = "c4";
                            rep.v = {psl2(7), borel(n5, 3)};
                            rep.e = {cyclic(4), borel(1, 3)};
                            add_star("4.6.iii", {{"n1", n1}, {"n2", n2}, {"n5", n5}}, s4(),
                                     {borel_arm("c2", n1, 2, cyclic(2)),
                                      borel_arm("c3", n2, 3, cyclic(3)), rep});
                        }
                }
        // 4.7
        for (uint64_t n1 = 1; n1 <= B.nmax; ++n1)
            for (uint64_t n2 = 1; n2 <= B.nmax; ++n2)
                for (uint64_t n3 = 1; n3 <= B.nmax; ++n3) {
                    if (detail::borel_ok(n1, 2, p) && detail::borel_ok(n2, 3, p) &&
                        detail::borel_ok(n3, 3, p))
                        add_star("4.7.i", {{"n1", n1}, {"n2", n2}, {"n3", n3}}, a4(),
                                 {borel_arm("c2", n1, 2, cyclic(2)),
                                  borel_arm("c3-a", n2, 3, cyclic(3)),
                                  borel_arm("c3-b", n3, 3, cyclic(3))});
                    if (p == 5 && detail::borel_ok(n1, 2, p))
                        for (uint64_t n4 = 2; n4 <= B.nmax; ++n4) {
                            if (!detail::borel_ok(n4, 2, p)) continue;
                            ArmSpec rep;
                            rep.center_slot = "c3-a";
                            rep.v = {psl2(5), borel(n4, 2)};
                            rep.e = {cyclic(3), borel(1, 2)};
                            if (detail::borel_ok(n3, 3, p))
                                add_star("4.7.ii", {{"n1", n1}, {"n3", n3}, {"n4", n4}}, a4(),
                                         {borel_arm("c2", n1, 2, cyclic(2)), rep,
                                          borel_arm("c3-b", n3, 3, cyclic(3))});
                            // both arms replaced
                            ArmSpec rep2 = rep;
                            rep2.center_slot = "c3-b";
                            add_star("4.7.ii2", {{"n1", n1}, {"n4", n4}}, a4(),
                                     {borel_arm("c2", n1, 2, cyclic(2)), rep, rep2});
                        }
                }
    }
    // 4.8: dihedral center, p > 2
    if (p > 2) {
        for (uint64_t l = 2; l <= B.lmax; ++l) {
            if (l % p == 0) continue;
            for (uint64_t n1 = 1; n1 <= B.nmax; ++n1)
                for (uint64_t n2 = 1; n2 <= B.nmax; ++n2) {
                    if (!detail::borel_ok(n1, 2, p) || !detail::borel_ok(n2, 2, p)) continue;
                    auto arm1 = borel_arm("c2-a", n1, 2, cyclic(2));
                    auto arm2 = borel_arm("c2-b", n2, 2, cyclic(2));
                    for (uint64_t n3 = 1; n3 <= B.nmax; ++n3)
                        if (detail::borel_ok(n3, l, p))
                            add_star("4.8.i", {{"l", l}, {"n1", n1}, {"n2", n2}, {"n3", n3}},
                                     dihedral(l),
                                     {arm1, arm2, borel_arm("cyclic", n3, l, cyclic(l))});
                    // (ii): l = q + 1
                    for (uint64_t q = p, n = 1; q <= B.qmax; q *= p, ++n) {
                        if (l == q + 1) {
                            for (uint64_t j = 2; j <= B.nmax; ++j)
                                if (detail::borel_ok(n * j, q - 1, p)) {
                                    ArmSpec rep;
                                    rep.center_slot = "cyclic";
                                    rep.v = {pgl2(q), borel(n * j, q - 1)};
                                    rep.e = {cyclic(q + 1), borel(n, q - 1)};
                                    add_star("4.8.ii",
                                             {{"l", l}, {"q", q}, {"n1", n1}, {"n2", n2},
                                              {"n4", j}},
                                             dihedral(l), {arm1, arm2, rep});
                                }
                        }
                        if (2 * l == q + 1) {
                            for (uint64_t j = 2; j <= B.nmax; ++j) {
                                uint64_t h = (q - 1) / 2;
                                if (h == 1 || detail::borel_ok(n * j, h, p)) {
                                    ArmSpec rep;
                                    rep.center_slot = "cyclic";
                                    rep.v = {psl2(q), borel(n * j, h)};
                                    rep.e = {cyclic(l), borel(n, h)};
                                    add_star("4.8.iii",
                                             {{"l", l}, {"q", q}, {"n1", n1}, {"n2", n2},
                                              {"n5", j}},
                                             dihedral(l), {arm1, arm2, rep});
                                }
                            }
                        }
                    }
                    // (iv): p = 3, l = 5
                    if (p == 3 && l == 5)
                        for (uint64_t n6 = 2; n6 <= B.nmax; ++n6)
                            if (detail::borel_ok(n6, 2, p)) {
                                ArmSpec rep;
                                rep.center_slot = "cyclic";
                                rep.v = {a5(), borel(n6, 2)};
                                rep.e = {cyclic(5), borel(1, 2)};
                                add_star("4.8.iv", {{"l", l}, {"n1", n1}, {"n2", n2}, {"n6", n6}},
                                         dihedral(l), {arm1, arm2, rep});
                            }
                    // (v): p = 3 replaces a C_2 arm by PSL2(3) *_{C_3} B(n7,1)
                    if (p == 3)
                        for (uint64_t n7 = 2; n7 <= B.nmax; ++n7)
                            for (uint64_t n3 = 1; n3 <= B.nmax; ++n3)
                                if (detail::borel_ok(n3, l, p)) {
                                    ArmSpec rep;
                                    rep.center_slot = "c2-a";
                                    rep.v = {psl2(3), borel(n7, 1)};
                                    rep.e = {cyclic(2), cyclic(3)};
                                    add_star("4.8.v",
                                             {{"l", l}, {"n2", n2}, {"n3", n3}, {"n7", n7}},
                                             dihedral(l),
                                             {rep, arm2, borel_arm("cyclic", n3, l, cyclic(l))});
                                }
                }
        }
    }

    detail::dedup_instances(out);
    return out;
}

// ---- small-mu list -------------------------------------------------------------

inline std::vector<std::pair<FamilyInstance, Rational>> enumerate_small_mu(uint64_t p,
                                                                           const EnumBounds& B) {
    std::vector<std::pair<FamilyInstance, Rational>> out;
    auto push = [&](std::vector<FamilyInstance>&& v) {
        for (auto& fi : v) {
            Rational m = mu(fi.tree);
            // mu <= 0 belongs to finite or genus <= 1 quotients, outside the lists
            if (Rational(0) < m && m < Rational(1, 12)) out.push_back({std::move(fi), m});
        }
    };
    push(enumerate_two_branch(p, B));
    push(enumerate_three_branch(p, B));
    return out;
}

}  // namespace mumford
