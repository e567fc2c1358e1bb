#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mumford/catalog.hpp"

namespace mumford {

// ---- the bound F(g) = g(sqrt(8g+1) + 3), handled exactly ----------------------

enum class BoundCmp { Less, Equal, Greater };

// Exact trichotomy of N against F(g), g >= 2.
inline BoundCmp f_compare(const BigInt& N, const BigInt& g) {
    if (g < 2) throw invalid_input("f_compare: g >= 2 required");
    // F(g) = 3g + g sqrt(8g+1) > 3g
    if (N <= 3 * g) return BoundCmp::Less;
    BigInt lhs = (N - 3 * g) * (N - 3 * g);
    BigInt rhs = g * g * (8 * g + 1);
    if (lhs < rhs) return BoundCmp::Less;
    if (lhs == rhs) return BoundCmp::Equal;
    return BoundCmp::Greater;
}

// floor(F(g)), exact via integer square root.
inline BigInt f_floor(const BigInt& g) {
    if (g < 2) throw invalid_input("f_floor: g >= 2 required");
    return 3 * g + isqrt(g * g * (8 * g + 1));
}

// Whether F(g) is an integer (8g+1 a perfect square), and its exact value then.
inline std::optional<BigInt> f_exact(const BigInt& g) {
    BigInt r = isqrt(8 * g + 1);
    if (r * r == 8 * g + 1) return 3 * g + g * r;
    return std::nullopt;
}

// g_0 := 1 + mu N_0 >= 5 and N_0 <= F(g_0); false when g_0 is not an integer.
inline bool suitable(const BigInt& n0, const Rational& mu_val) {
    if (!(mu_val > Rational(0))) throw invalid_input("suitable: mu must be positive");
    Rational g0 = Rational(1) + mu_val * Rational(n0);
    if (!g0.is_integer()) return false;
    BigInt g = g0.num();
    if (g < 5) return false;
    return f_compare(n0, g) != BoundCmp::Greater;
}

// ---- Tables of suitable lower bounds N_0 ---------------------------------------

struct BoundRow {
    std::string table;  // "8.4" or "8.5"
    std::string label;
    TreeOfGroups tree;
    BigInt n0;
    Rational mu_val;
    Rational g0;
    BigInt lcm_orders;
};

namespace detail {

inline std::optional<BoundRow> make_bound_row(const std::string& table, const std::string& label,
                                              const TreeOfGroups& t, const BigInt& n0) {
    if (!validate(t).empty()) return std::nullopt;
    BoundRow row;
    row.table = table;
    row.label = label;
    row.tree = t;
    row.n0 = n0;
    row.mu_val = mu(t);
    if (!(row.mu_val > Rational(0))) return std::nullopt;
    row.g0 = Rational(1) + row.mu_val * Rational(n0);
    row.lcm_orders = big_lcm(spec_order(t.vertices[0].group, t.p),
                             spec_order(t.vertices[1].group, t.p));
    // the defining property of the tables
    if (!row.g0.is_integer()) return std::nullopt;
    if (!suitable(n0, row.mu_val)) return std::nullopt;
    if (table == "8.4" && row.n0 != row.lcm_orders)
        throw check_failed("table 8.4 row " + label + ": N0 differs from lcm");
    if (table == "8.5" && !(row.n0 > row.lcm_orders))
        throw check_failed("table 8.5 row " + label + ": N0 not above lcm");
    return row;
}

}  // namespace detail

// The instantiated rows of the suitable-bound tables for characteristic p and
// the given q = p^n.  Rows whose printed side conditions fail at (p, q), or
// whose g_0 falls below the suitability threshold, are omitted.
inline std::vector<BoundRow> bound_tables(uint64_t p, uint64_t q) {
    uint32_t n;
    if (!is_power_of(q, p, &n)) throw invalid_input("bound_tables: q must be a power of p");
    std::vector<BoundRow> rows;
    auto push = [&](std::optional<BoundRow> r) {
        if (r) rows.push_back(std::move(*r));
    };
    BigInt Q(static_cast<unsigned long>(q));
    BigInt pgl_order = Q * Q * Q - Q;

    if (q > 2) {
        push(detail::make_bound_row(
            "8.4", "pgl-dihedral",
            two_vertex_tree(p, pgl2(q), "torus-qplus1", cyclic(q + 1), dihedral(q + 1), "cyclic"),
            pgl_order));
        push(detail::make_bound_row(
            "8.4", "pgl-pgl",
            two_vertex_tree(p, pgl2(q), "torus-qplus1", cyclic(q + 1), pgl2(q), "torus-qplus1"),
            pgl_order));
        // m = 4 instantiation of the m > 3 row
        if (spec_valid(borel(4 * n, q - 1), p))
            push(detail::make_bound_row(
                "8.4", "pgl-borel-m4",
                two_vertex_tree(p, pgl2(q), "borel", borel(n, q - 1), borel(4 * n, q - 1),
                                "borel"),
                big_pow(Q, 4) * (Q * Q - 1)));
        // m = 1 instantiation of the m >= 1 row
        if (spec_valid(borel(2 * n, q + 1), p))
            push(detail::make_bound_row(
                "8.4", "pgl-qplus-m1",
                two_vertex_tree(p, pgl2(q), "torus-qplus1", cyclic(q + 1), borel(2 * n, q + 1),
                                "torus"),
                Q * Q * (Q * Q - 1)));
    }
    if (p == 3 && q == 3)
        push(detail::make_bound_row(
            "8.4", "pgl3-borel-m3",
            two_vertex_tree(3, pgl2(3), "borel", borel(1, 2), borel(3, 2), "borel"), 216));
    if (p > 2 && q > 2) {
        const uint64_t h = (q - 1) / 2, k = (q + 1) / 2;
        push(detail::make_bound_row(
            "8.4", "psl-dihedral",
            two_vertex_tree(p, psl2(q), "torus-qplus1", cyclic(k), dihedral(k), "cyclic"),
            pgl_order / 2));
        push(detail::make_bound_row(
            "8.4", "psl-psl",
            two_vertex_tree(p, psl2(q), "torus-qplus1", cyclic(k), psl2(q), "torus-qplus1"),
            pgl_order / 2));
        if (h > 1 && spec_valid(borel(4 * n, h), p))
            push(detail::make_bound_row(
                "8.4", "psl-borel-m4",
                two_vertex_tree(p, psl2(q), "borel", borel(n, h), borel(4 * n, h), "borel"),
                big_pow(Q, 4) * (Q * Q - 1) / 2));
        if (spec_valid(borel(2 * n, k), p))
            push(detail::make_bound_row(
                "8.4", "psl-qplus-m1",
                two_vertex_tree(p, psl2(q), "torus-qplus1", cyclic(k), borel(2 * n, k), "torus"),
                Q * Q * (Q * Q - 1) / 2));
    }
    if (p == 3 && q == 3)
        push(detail::make_bound_row(
            "8.4", "psl3-borel-m3",
            two_vertex_tree(3, psl2(3), "borel", borel(1, 1), borel(3, 1), "p-group"), 108));
    if (p == 5 && q == 5) {
        push(detail::make_bound_row(
            "8.4", "psl5-borel-m2",
            two_vertex_tree(5, psl2(5), "borel", borel(1, 2), borel(2, 2), "borel"), 300));
        push(detail::make_bound_row(
            "8.4", "psl5-borel-m3",
            two_vertex_tree(5, psl2(5), "borel", borel(1, 2), borel(3, 2), "borel"), 1500));
    }

    // ---- table 8.5 ----
    if (q > 3 && spec_valid(borel(3 * n, q - 1), p))
        push(detail::make_bound_row(
            "8.5", "pgl-borel-m3",
            two_vertex_tree(p, pgl2(q), "borel", borel(n, q - 1), borel(3 * n, q - 1), "borel"),
            big_pow(Q, 6)));
    if (p > 2 && q > 5 && spec_valid(borel(3 * n, (q - 1) / 2), p))
        push(detail::make_bound_row(
            "8.5", "psl-borel-m3",
            two_vertex_tree(p, psl2(q), "borel", borel(n, (q - 1) / 2), borel(3 * n, (q - 1) / 2),
                            "borel"),
            big_pow(Q, 6)));
    if (p > 2 && q > 3 && spec_valid(borel(2 * n, q - 1), p))
        push(detail::make_bound_row(
            "8.5", "pgl-borel-m2",
            two_vertex_tree(p, pgl2(q), "borel", borel(n, q - 1), borel(2 * n, q - 1), "borel"),
            pgl_order * pgl_order / 2));
    if (p == 2 && q >= 4)
        push(detail::make_bound_row(
            "8.5", "pgl-borel-m2",
            two_vertex_tree(p, pgl2(q), "borel", borel(n, q - 1), borel(2 * n, q - 1), "borel"),
            pgl_order * pgl_order));
    if (p > 2 && q > 5 && spec_valid(borel(2 * n, (q - 1) / 2), p))
        push(detail::make_bound_row(
            "8.5", "psl-borel-m2",
            two_vertex_tree(p, psl2(q), "borel", borel(n, (q - 1) / 2), borel(2 * n, (q - 1) / 2),
                            "borel"),
            pgl_order * pgl_order / 4));
    if (q - 1 > 5 && spec_valid(borel(n, q - 1), p)) {
        push(detail::make_bound_row(
            "8.5", "borel-borel",
            two_vertex_tree(p, borel(n, q - 1), "torus", cyclic(q - 1), borel(n, q - 1), "torus"),
            big_pow(BigInt(static_cast<unsigned long>(p)), 2 * n) *
                static_cast<unsigned long>(q - 1)));
        push(detail::make_bound_row(
            "8.5", "borel-dihedral",
            two_vertex_tree(p, borel(n, q - 1), "torus", cyclic(q - 1), dihedral(q - 1),
                            "cyclic"),
            (Q * Q + Q) * static_cast<unsigned long>(q - 1)));
    }
    return rows;
}

// ---- Max(g) and the automorphism bound ------------------------------------------

struct AutBound {
    BigInt bound;              // the theorem bound for this (g, p)
    bool exceptional = false;  // the p = 3, g = 6 exception
    std::optional<BigInt> max_known;  // exact Max(g) for g <= 6
};

inline AutBound aut_bound(const BigInt& g, uint64_t p) {
    if (g < 2) throw invalid_input("aut_bound: g >= 2 required");
    AutBound out;
    BigInt linear = 12 * (g - 1);
    BigInt ff = f_floor(g);
    out.bound = std::max(linear, ff);
    if (p == 3 && g == 6) {
        out.bound = 72;
        out.exceptional = true;
    }
    if (g <= 5) out.max_known = linear;
    if (g == 6) out.max_known = (p == 3) ? BigInt(72) : BigInt(60);
    return out;
}

// ---- the mu = 1/12 amalgams -------------------------------------------------------

inline std::vector<FamilyInstance> mu_twelfth(uint64_t p) {
    struct Cand {
        std::string id;
        GroupSpec g1, g2;
        uint64_t edge_m;
    };
    std::vector<Cand> cands = {{"D3*C2*D2", dihedral(3), dihedral(2), 2},
                               {"S4*C4*D4", s4(), dihedral(4), 4},
                               {"A4*C3*D3", a4(), dihedral(3), 3},
                               {"A5*C5*D5", a5(), dihedral(5), 5}};
    std::vector<FamilyInstance> out;
    for (const auto& c : cands) {
        if (!embeddable(c.g1, p) || !embeddable(c.g2, p)) continue;
        std::string s1, s2;
        try {
            s1 = slot_for(c.g1, cyclic(c.edge_m), p);
            s2 = slot_for(c.g2, cyclic(c.edge_m), p);
        } catch (const invalid_input&) {
            continue;
        }
        auto t = two_vertex_tree(p, c.g1, s1, cyclic(c.edge_m), c.g2, s2);
        if (!validate(t).empty()) continue;
        if (realizable_edgewise(t) == Realizability::No) continue;
        if (mu(t) != Rational(1, 12))
            throw check_failed("mu_twelfth: " + c.id + " does not have mu 1/12");
        FamilyInstance fi;
        fi.family_id = c.id;
        fi.tree = t;
        out.push_back(std::move(fi));
    }
    return out;
}

// ---- minimal genus with automorphism group PGL2(F_q) ------------------------------

inline std::pair<BigInt, std::vector<FamilyInstance>> min_genus_pgl2(uint64_t q) {
    if (q <= 2) throw invalid_input("min_genus_pgl2: q > 2 required");
    uint64_t p = 2;
    for (uint64_t d = 2; d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    uint32_t n;
    if (!is_power_of(q, p, &n)) throw invalid_input("min_genus_pgl2: q must be a prime power");
    BigInt genus = BigInt(static_cast<unsigned long>(q)) * static_cast<unsigned long>(q - 1) / 2;
    std::vector<FamilyInstance> fams;
    {
        FamilyInstance fi;
        fi.family_id = "pgl-dihedral";
        fi.params = {{"q", q}};
        fi.tree = two_vertex_tree(p, pgl2(q), "torus-qplus1", cyclic(q + 1), dihedral(q + 1),
                                  "cyclic");
        require_valid(fi.tree);
        fams.push_back(std::move(fi));
    }
    {
        FamilyInstance fi;
        fi.family_id = "dihedral-borel";
        fi.params = {{"q", q}};
        fi.tree = two_vertex_tree(p, dihedral(q - 1), slot_for(dihedral(q - 1), cyclic(q - 1), p),
                                  cyclic(q - 1), borel(n, q - 1),
                                  slot_for(borel(n, q - 1), cyclic(q - 1), p));
        require_valid(fi.tree);
        fams.push_back(std::move(fi));
    }
    if (q == 4) {
        FamilyInstance fi;
        fi.family_id = "pgl2-2-pgroup";
        fi.params = {{"q", q}};
        fi.tree = two_vertex_tree(2, pgl2(2), slot_for(pgl2(2), cyclic(2), 2), cyclic(2),
                                  borel(2, 1), "p-group");
        require_valid(fi.tree);
        fams.push_back(std::move(fi));
    }
    return {genus, fams};
}

// ---- tame orbifold families (four branch points) -----------------------------------

struct TameTuple {
    FamilyInstance instance;
    std::array<BigInt, 4> indices;
};

inline std::vector<TameTuple> tame_orbifold_tuples(uint64_t p, const EnumBounds& B) {
    std::vector<TameTuple> out;
    std::set<std::string> seen;
    auto push = [&](const std::string& id, TreeOfGroups t) {
        if (!validate(t).empty()) return;
        if (branch_count(t).br != 4) return;
        if (!seen.insert(tree_canonical_form(t)).second) return;
        auto r = ramification(t);
        if (r.indices.size() != 4) return;
        TameTuple tt;
        tt.instance.family_id = id;
        tt.instance.tree = std::move(t);
        for (int i = 0; i < 4; ++i) tt.indices[i] = r.indices[i];
        out.push_back(std::move(tt));
    };

    // (i) decomposable: C_l * C_m
    for (uint64_t l = 2; l <= B.lmax; ++l) {
        if (l % p == 0) continue;
        for (uint64_t m = l; m <= B.lmax; ++m) {
            if (m % p == 0) continue;
            push("tame-free", free_product_tree(p, cyclic(l), cyclic(m)));
        }
    }
    // (ii) indecomposable tame pairs with a shared cyclic branch group
    std::vector<GroupSpec> tame;
    for (uint64_t l = 2; l <= B.lmax; ++l)
        if ((2 * l) % p != 0 && l % p != 0) tame.push_back(dihedral(l));
    for (const auto& g : {a4(), s4(), a5()})
        if (spec_order(g, p) % static_cast<unsigned long>(p) != 0) tame.push_back(g);
    for (size_t i = 0; i < tame.size(); ++i)
        for (size_t j = i; j < tame.size(); ++j)
            for (const auto& s1 : branch_data(tame[i], p)) {
                if (s1.group.family != Family::Cyclic) continue;
                for (const auto& s2 : branch_data(tame[j], p)) {
                    if (!(s2.group == s1.group)) continue;
                    push("tame-pair", two_vertex_tree(p, tame[i], s1.tag, s1.group, tame[j],
                                                      s2.tag));
                }
            }
    return out;
}

// ---- full realizability verdict -----------------------------------------------------

inline Realizability realizable(const TreeOfGroups& t) {
    require_valid(t);
    auto edge = realizable_edgewise(t);
    if (edge != Realizability::Unknown) return edge;

    const uint64_t p = t.p;
    // decomposable special cases
    if (t.decomposable()) {
        if (t.vertices.size() == 2 && t.edges.size() == 1) {
            auto c1 = canon_at(t.vertices[0].group, p), c2 = canon_at(t.vertices[1].group, p);
            bool cyc1 = c1->family == Family::Cyclic || *c1 == borel(1, 1);
            bool cyc2 = c2->family == Family::Cyclic || *c2 == borel(1, 1);
            if (cyc1 && cyc2) return Realizability::Yes;  // C_l * C_m
            bool pg1 = c1->family == Family::Borel && c1->b == 1;
            bool pg2 = c2->family == Family::Borel && c2->b == 1;
            if (pg1 && pg2) return Realizability::Yes;  // B(n1,1) * B(n2,1)
        }
        return Realizability::Unknown;
    }

    // catalog pattern match with bounds adapted to the tree
    EnumBounds B;
    B.qmax = 2;
    B.nmax = 2;
    B.lmax = 3;
    B.n0max = 1;
    for (const auto& v : t.vertices) {
        auto c = canon_at(v.group, p);
        if (c->family == Family::PGL2 || c->family == Family::PSL2)
            B.qmax = std::max(B.qmax, c->a);
        if (c->family == Family::A5 && p == 3) B.qmax = std::max<uint64_t>(B.qmax, 9);
        if (c->family == Family::Dihedral) B.lmax = std::max(B.lmax, c->a + 1);
        if (c->family == Family::Borel) {
            B.nmax = std::max(B.nmax, c->a);
            B.mmax = std::max(B.mmax, c->b);
            if (c->b == 1) B.n0max = std::max(B.n0max, c->a);
        }
    }
    std::string form = tree_canonical_form(t);
    for (const auto& fi : enumerate_two_branch(p, B))
        if (tree_canonical_form(fi.tree) == form) return Realizability::Yes;
    for (const auto& fi : enumerate_three_branch(p, B))
        if (tree_canonical_form(fi.tree) == form) return Realizability::Yes;
    for (const auto& tt : tame_orbifold_tuples(p, B))
        if (tree_canonical_form(tt.instance.tree) == form) return Realizability::Yes;

    // star amalgams over a single subgroup
    {
        bool same_edge = true;
        GroupSpec H = t.edges.front().group;
        for (const auto& e : t.edges) same_edge = same_edge && iso_eq(e.group, H, p);
        if (same_edge && t.vertices.size() >= 3) {
            // path shape: collect degree sequence
            std::vector<int> deg(t.vertices.size(), 0);
            for (const auto& e : t.edges) {
                deg[t.vertex_index(e.u)]++;
                deg[t.vertex_index(e.v)]++;
            }
            int ends = 0, mids = 0, stars = 0;
            for (int d : deg) {
                if (d == 1) ++ends;
                else if (d == 2) ++mids;
                else ++stars;
            }
            if (ends == 2 && stars == 0) {
                // walk the path
                int cur = -1;
                for (size_t i = 0; i < deg.size(); ++i)
                    if (deg[i] == 1) {
                        cur = static_cast<int>(i);
                        break;
                    }
                std::vector<GroupSpec> parts;
                std::set<int> used_edges;
                int prev = -1;
                while (cur >= 0) {
                    parts.push_back(t.vertices[cur].group);
                    int nxt = -1;
                    for (size_t e = 0; e < t.edges.size(); ++e) {
                        if (used_edges.count(static_cast<int>(e))) continue;
                        int a = t.vertex_index(t.edges[e].u), b = t.vertex_index(t.edges[e].v);
                        if (a == cur || b == cur) {
                            nxt = (a == cur) ? b : a;
                            used_edges.insert(static_cast<int>(e));
                            break;
                        }
                    }
                    prev = cur;
                    cur = nxt;
                }
                (void)prev;
                if (parts.size() == t.vertices.size() &&
                    realizable_star(H, parts, p))
                    return Realizability::Yes;
            }
            // p-group-centred stars (cases iii and iv)
            if (stars == 1 && mids == 0) {
                int center = -1;
                for (size_t i = 0; i < deg.size(); ++i)
                    if (deg[i] > 2) center = static_cast<int>(i);
                auto cc = canon_at(t.vertices[center].group, p);
                auto hc = canon_at(H, p);
                if (cc && hc && *hc == borel(1, 1) && cc->family == Family::Borel &&
                    cc->b == 1 && t.vertices[center].designated) {
                    std::vector<GroupSpec> parts;
                    if (cc->a >= 2) parts.push_back(t.vertices[center].group);
                    for (size_t i = 0; i < t.vertices.size(); ++i)
                        if (static_cast<int>(i) != center) parts.push_back(t.vertices[i].group);
                    if (parts.size() >= 3 && realizable_star(cyclic(p), parts, p))
                        return Realizability::Yes;
                }
            }
        }
    }
    return Realizability::Unknown;
}

}  // namespace mumford
