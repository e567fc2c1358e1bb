#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mumford/binom.hpp"
#include "mumford/groupspec.hpp"
#include "mumford/rational.hpp"

namespace mumford {

struct TreeVertex {
    std::string id;
    GroupSpec group;
    bool designated = false;  // the subgroup-A marker on p-group vertices
};

struct TreeEdge {
    std::string u, v;
    GroupSpec group;
    std::string slot_u, slot_v;
};

// A finite tree of finite groups (the contracted tree the amalgam lives on).
// Trivial edge groups mark free-product edges.
struct TreeOfGroups {
    uint64_t p = 2;
    std::vector<TreeVertex> vertices;
    std::vector<TreeEdge> edges;

    int vertex_index(const std::string& id) const {
        for (size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i].id == id) return static_cast<int>(i);
        return -1;
    }
    std::vector<int> edges_at(int vi) const {
        std::vector<int> out;
        for (size_t e = 0; e < edges.size(); ++e)
            if (vertex_index(edges[e].u) == vi || vertex_index(edges[e].v) == vi)
                out.push_back(static_cast<int>(e));
        return out;
    }
    bool decomposable() const {
        for (const auto& e : edges)
            if (e.group.family == Family::Trivial) return true;
        return false;
    }
};

inline TreeOfGroups two_vertex_tree(uint64_t p, const GroupSpec& g1, const std::string& slot1,
                                    const GroupSpec& edge, const GroupSpec& g2,
                                    const std::string& slot2) {
    TreeOfGroups t;
    t.p = p;
    t.vertices = {{"v1", g1, false}, {"v2", g2, false}};
    t.edges = {{"v1", "v2", edge, slot1, slot2}};
    return t;
}

inline TreeOfGroups free_product_tree(uint64_t p, const GroupSpec& g1, const GroupSpec& g2) {
    TreeOfGroups t;
    t.p = p;
    t.vertices = {{"v1", g1, false}, {"v2", g2, false}};
    t.edges = {{"v1", "v2", trivial_spec(), "", ""}};
    return t;
}

// ---- validation -------------------------------------------------------------

namespace detail {

inline bool slot_accepts_edge(const GroupSpec& vertex_canon, const GroupSpec& slot_group,
                              const GroupSpec& edge_canon, uint64_t p) {
    auto sc = canon_at(slot_group, p);
    if (!sc) return false;
    const GroupSpec s = *sc;
    if (s.family == Family::Cyclic) return edge_canon == s;
    if (s.family == Family::Borel) {
        if (edge_canon.family != Family::Borel) return false;
        if (edge_canon.b != s.b) return false;
        bool full_only = vertex_canon.family == Family::PGL2 ||
                         vertex_canon.family == Family::PSL2 ||
                         vertex_canon.family == Family::A5;
        if (full_only) return edge_canon.a == s.a;
        return edge_canon.a <= s.a;
    }
    return false;
}

}  // namespace detail

inline std::vector<std::string> validate(const TreeOfGroups& t) {
    std::vector<std::string> bad;
    if (!is_prime_u64(t.p)) bad.push_back("p is not prime");
    if (t.vertices.empty()) bad.push_back("no vertices");

    std::set<std::string> ids;
    for (const auto& v : t.vertices) {
        if (!ids.insert(v.id).second) bad.push_back("duplicate vertex id " + v.id);
        std::string why;
        if (!spec_valid(v.group, t.p, &why))
            bad.push_back("vertex " + v.id + ": " + why);
        else if (!embeddable(v.group, t.p))
            bad.push_back("vertex " + v.id + ": " + v.group.str() + " not embeddable in char " +
                          std::to_string(t.p));
        if (v.designated) {
            auto c = canon_at(v.group, t.p);
            if (!c || c->family != Family::Borel || c->b != 1)
                bad.push_back("vertex " + v.id + ": designated marker requires a p-group");
        }
    }
    if (!bad.empty()) return bad;

    // tree shape: connected and acyclic
    if (t.edges.size() + 1 != t.vertices.size())
        bad.push_back("edge count must be vertex count - 1 (tree)");
    {
        std::vector<int> comp(t.vertices.size(), -1);
        std::vector<int> stack = {0};
        comp[0] = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& e : t.edges) {
                int a = t.vertex_index(e.u), b = t.vertex_index(e.v);
                if (a < 0 || b < 0) continue;
                if (a == v && comp[b] < 0) {
                    comp[b] = 0;
                    stack.push_back(b);
                }
                if (b == v && comp[a] < 0) {
                    comp[a] = 0;
                    stack.push_back(a);
                }
            }
        }
        for (size_t i = 0; i < comp.size(); ++i)
            if (comp[i] < 0) bad.push_back("vertex " + t.vertices[i].id + " disconnected");
    }

    std::map<std::pair<int, std::string>, int> slot_use;
    for (const auto& e : t.edges) {
        int a = t.vertex_index(e.u), b = t.vertex_index(e.v);
        if (a < 0 || b < 0) {
            bad.push_back("edge references unknown vertex");
            continue;
        }
        if (a == b) bad.push_back("self-loop at " + e.u);
        if (e.group.family == Family::Trivial) continue;  // free-product edge

        std::string why;
        if (!spec_valid(e.group, t.p, &why)) {
            bad.push_back("edge " + e.u + "-" + e.v + ": " + why);
            continue;
        }
        auto ec = canon_at(e.group, t.p);
        if (!ec) {
            bad.push_back("edge " + e.u + "-" + e.v + ": group not embeddable");
            continue;
        }
        if (ec->family != Family::Cyclic && ec->family != Family::Borel) {
            bad.push_back("edge " + e.u + "-" + e.v + ": edge group must be cyclic or Borel");
            continue;
        }
        BigInt eo = spec_order(e.group, t.p);
        for (int vi : {a, b}) {
            BigInt vo = spec_order(t.vertices[vi].group, t.p);
            if (vo % eo != 0)
                bad.push_back("edge group order does not divide |" + t.vertices[vi].id + "|");
            if (vo == eo && !t.vertices[vi].designated)
                bad.push_back("edge group equals vertex group at " + t.vertices[vi].id +
                              " (degenerate; only designated p-group vertices may do this)");
        }
        // slot typing
        for (auto [vi, slot] : {std::pair<int, std::string>{a, e.slot_u}, {b, e.slot_v}}) {
            auto vc = canon_at(t.vertices[vi].group, t.p);
            if (!vc) continue;
            auto slots = branch_data(t.vertices[vi].group, t.p);
            bool found = false;
            for (const auto& s : slots)
                if (s.tag == slot) {
                    found = true;
                    if (!detail::slot_accepts_edge(*vc, s.group, *ec, t.p))
                        bad.push_back("edge " + e.u + "-" + e.v + ": group " + e.group.str() +
                                      " does not fit slot '" + slot + "' of " +
                                      t.vertices[vi].id + " (" + s.group.str() + ")");
                }
            if (!found)
                bad.push_back("edge " + e.u + "-" + e.v + ": vertex " + t.vertices[vi].id +
                              " has no branch slot '" + slot + "'");
            slot_use[{vi, slot}]++;
        }
        // the [P-V] convention: a C_p edge needs a p-group endpoint
        if (*ec == borel(1, 1)) {
            auto ca = canon_at(t.vertices[a].group, t.p);
            auto cb = canon_at(t.vertices[b].group, t.p);
            bool pa = ca && ca->family == Family::Borel && ca->b == 1;
            bool pb = cb && cb->family == Family::Borel && cb->b == 1;
            if (!pa && !pb)
                bad.push_back("edge " + e.u + "-" + e.v +
                              ": C_p edges between non-p-groups must route through a p-group "
                              "vertex");
        }
    }

    // slot multiplicity and designated-subgroup discipline
    for (auto& [key, count] : slot_use) {
        auto [vi, slot] = key;
        auto vc = canon_at(t.vertices[vi].group, t.p);
        bool pgroup_slot = vc && vc->family == Family::Borel && vc->b == 1;
        if (count > 1 && !pgroup_slot)
            bad.push_back("vertex " + t.vertices[vi].id + ": slot '" + slot +
                          "' carries more than one edge");
    }
    for (size_t vi = 0; vi < t.vertices.size(); ++vi) {
        auto vc = canon_at(t.vertices[vi].group, t.p);
        if (!(vc && vc->family == Family::Borel && vc->b == 1)) continue;
        auto eids = t.edges_at(static_cast<int>(vi));
        size_t nontrivial = 0;
        bool all_cp = true;
        for (int e : eids) {
            if (t.edges[e].group.family == Family::Trivial) continue;
            ++nontrivial;
            auto ec = canon_at(t.edges[e].group, t.p);
            all_cp = all_cp && ec && *ec == borel(1, 1);
        }
        if (nontrivial >= 2) {
            if (t.p > 3)
                bad.push_back("vertex " + t.vertices[vi].id +
                              ": p-group vertices cannot carry two edges when p > 3");
            else if (!all_cp)
                bad.push_back("vertex " + t.vertices[vi].id +
                              ": multi-edge p-group vertices need C_p edge groups");
            else if (!t.vertices[vi].designated)
                bad.push_back("vertex " + t.vertices[vi].id +
                              ": multi-edge p-group vertex needs the designated-subgroup marker");
        }
    }
    return bad;
}

inline void require_valid(const TreeOfGroups& t) {
    auto bad = validate(t);
    if (!bad.empty()) {
        std::string msg = "invalid tree:";
        for (const auto& b : bad) msg += " [" + b + "]";
        throw invalid_input(msg);
    }
}

// ---- invariants -------------------------------------------------------------

inline Rational mu(const TreeOfGroups& t) {
    require_valid(t);
    Rational acc(0);
    for (const auto& e : t.edges) acc += Rational(BigInt(1), spec_order(e.group, t.p));
    for (const auto& v : t.vertices) acc -= Rational(BigInt(1), spec_order(v.group, t.p));
    return acc;
}

struct BranchCount {
    int br = 0;
    int max3 = 0;
    int maxp = 0;
    bool formula2_checked = false;
};

inline BranchCount branch_count(const TreeOfGroups& t) {
    require_valid(t);
    BranchCount out;
    int total = 0;
    for (const auto& v : t.vertices) {
        int b = branch_point_count(v.group, t.p);
        total += b;
        if (b == 3) out.max3++;
    }
    for (const auto& e : t.edges)
        if (e.group.family != Family::Trivial) total -= branch_point_count(e.group, t.p);
    out.br = total;

    if (!t.decomposable()) {
        if (t.p == 2 || t.p == 3) {
            for (size_t vi = 0; vi < t.vertices.size(); ++vi) {
                const auto& v = t.vertices[vi];
                auto vc = canon_at(v.group, t.p);
                if (!(vc && vc->family == Family::Borel && vc->b == 1)) continue;
                auto eids = t.edges_at(static_cast<int>(vi));
                if (eids.size() < 2 || !v.designated) continue;
                bool all_cp = true;
                for (int e : eids) {
                    auto ec = canon_at(t.edges[e].group, t.p);
                    all_cp = all_cp && ec && *ec == borel(1, 1);
                }
                if (all_cp) out.maxp += static_cast<int>(eids.size()) - 1;
            }
        }
        int br2 = out.max3 + out.maxp + 2;
        if (br2 != out.br)
            throw check_failed("branch count formulas disagree: sum rule gives " +
                               std::to_string(out.br) + ", max rule gives " +
                               std::to_string(br2));
        out.formula2_checked = true;
    }
    return out;
}

struct RamificationReport {
    std::vector<GroupSpec> branch_groups;
    std::vector<BigInt> indices;
};

// Leftover branch points of every vertex after the edge attachments consume
// their share; cross-checked against the branch count.
inline RamificationReport ramification(const TreeOfGroups& t) {
    require_valid(t);
    struct Slot {
        std::string tag;
        GroupSpec group;
        bool removed = false;
    };
    std::vector<std::vector<Slot>> slots(t.vertices.size());
    for (size_t vi = 0; vi < t.vertices.size(); ++vi)
        for (const auto& s : branch_data(t.vertices[vi].group, t.p))
            slots[vi].push_back({s.tag, s.group, false});

    auto remove_tag = [&](int vi, const std::string& tag) {
        for (auto& s : slots[vi])
            if (s.tag == tag && !s.removed) {
                s.removed = true;
                return true;
            }
        return false;
    };

    for (const auto& e : t.edges) {
        if (e.group.family == Family::Trivial) continue;
        int a = t.vertex_index(e.u), b = t.vertex_index(e.v);
        GroupSpec ec = *canon_at(e.group, t.p);
        auto slot_group = [&](int vi, const std::string& tag) -> GroupSpec {
            for (const auto& s : slots[vi])
                if (s.tag == tag) return *canon_at(s.group, t.p);
            throw check_failed("ramification: missing slot");
        };
        if (ec.family == Family::Cyclic) {
            remove_tag(a, e.slot_u);
            remove_tag(b, e.slot_v);
        } else if (ec.b == 1) {  // p-group edge: one branch point
            for (auto [vi, tag] : {std::pair<int, std::string>{a, e.slot_u}, {b, e.slot_v}}) {
                if (t.vertices[vi].designated) continue;  // marker slots survive
                if (slot_group(vi, tag) == ec) remove_tag(vi, tag);
            }
        } else {  // Borel edge with torus: borel point at the exact side, torus at the big side
            for (auto [vi, tag] : {std::pair<int, std::string>{a, e.slot_u}, {b, e.slot_v}}) {
                GroupSpec s = slot_group(vi, tag);
                if (s == ec)
                    remove_tag(vi, tag);
                else
                    remove_tag(vi, "torus");
            }
        }
    }

    RamificationReport rep;
    for (size_t vi = 0; vi < t.vertices.size(); ++vi)
        for (const auto& s : slots[vi])
            if (!s.removed) {
                rep.branch_groups.push_back(*canon_at(s.group, t.p));
                rep.indices.push_back(spec_order(s.group, t.p));
            }
    // deterministic order and the counting cross-check
    std::vector<size_t> ord(rep.branch_groups.size());
    for (size_t i = 0; i < ord.size(); ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](size_t x, size_t y) {
        if (rep.indices[x] != rep.indices[y]) return rep.indices[x] < rep.indices[y];
        return rep.branch_groups[x] < rep.branch_groups[y];
    });
    RamificationReport sorted;
    for (size_t i : ord) {
        sorted.branch_groups.push_back(rep.branch_groups[i]);
        sorted.indices.push_back(rep.indices[i]);
    }
    int br = branch_count(t).br;
    if (static_cast<int>(sorted.branch_groups.size()) != br)
        throw check_failed("ramification count " + std::to_string(sorted.branch_groups.size()) +
                           " does not match branch count " + std::to_string(br));
    return sorted;
}

// Index of the determinant kernel (1 or 2) for trees whose vertex groups fit
// the determinant construction over F_q, p odd.
inline int det_kernel_index(const TreeOfGroups& t, uint64_t q) {
    require_valid(t);
    if (t.p == 2) throw invalid_input("det_kernel_index: p = 2 has no square classes");
    auto divides = [](uint64_t a, uint64_t b) { return a != 0 && b % a == 0; };
    bool surjective = false;
    for (const auto& v : t.vertices) {
        GroupSpec c = *canon_at(v.group, t.p);
        bool nontrivial = false;
        switch (c.family) {
            case Family::PGL2: nontrivial = true; break;
            case Family::PSL2: nontrivial = false; break;
            case Family::Borel: {
                if (c.b == 1) {
                    nontrivial = false;
                } else if (divides(c.b, q - 1)) {
                    nontrivial = !divides(c.b, (q - 1) / 2);
                } else if (divides(c.b, q + 1)) {
                    nontrivial = !divides(c.b, (q + 1) / 2);
                } else {
                    throw invalid_input("det_kernel_index: Borel torus does not divide q +- 1");
                }
                break;
            }
            case Family::Dihedral: {
                uint64_t l = c.a;
                if (divides(l, (q - 1) / 2) || divides(l, (q + 1) / 2))
                    nontrivial = false;  // the convention picks the square embedding
                else if (divides(l, q - 1) || divides(l, q + 1))
                    nontrivial = true;
                else
                    throw invalid_input("det_kernel_index: dihedral order does not divide q +- 1");
                break;
            }
            default:
                throw invalid_input("det_kernel_index: vertex " + v.group.str() +
                                    " outside the determinant construction");
        }
        surjective = surjective || nontrivial;
    }
    return surjective ? 2 : 1;
}

// ---- JSON (bit-exact canonical key order) -----------------------------------

inline Json tree_to_json(const TreeOfGroups& t) {
    Json j;
    j["p"] = t.p;
    j["vertices"] = Json::array();
    for (const auto& v : t.vertices) {
        Json jv;
        jv["id"] = v.id;
        jv["group"] = spec_to_json(v.group);
        if (v.designated) jv["designated"] = true;
        j["vertices"].push_back(jv);
    }
    j["edges"] = Json::array();
    for (const auto& e : t.edges) {
        Json je;
        je["u"] = e.u;
        je["v"] = e.v;
        je["group"] = spec_to_json(e.group);
        je["slot_u"] = e.slot_u;
        je["slot_v"] = e.slot_v;
        j["edges"].push_back(je);
    }
    return j;
}

inline TreeOfGroups tree_from_json(const Json& j) {
    TreeOfGroups t;
    t.p = j.at("p").get<uint64_t>();
    for (const auto& jv : j.at("vertices")) {
        TreeVertex v;
        v.id = jv.at("id").get<std::string>();
        v.group = spec_from_json(jv.at("group"));
        v.designated = jv.value("designated", false);
        t.vertices.push_back(v);
    }
    for (const auto& je : j.at("edges")) {
        TreeEdge e;
        e.u = je.at("u").get<std::string>();
        e.v = je.at("v").get<std::string>();
        e.group = spec_from_json(je.at("group"));
        e.slot_u = je.at("slot_u").get<std::string>();
        e.slot_v = je.at("slot_v").get<std::string>();
        t.edges.push_back(e);
    }
    return t;
}

// Canonical form for tree identity tests: minimal rooted serialization over
// all root choices (ids are ignored, structure and slots are not).
inline std::string tree_canonical_form(const TreeOfGroups& t) {
    auto vspec = [&](int vi) {
        const auto& v = t.vertices[vi];
        return v.group.str() + (v.designated ? "!" : "");
    };
    // rooted serialization
    std::function<std::string(int, int)> ser = [&](int vi, int from_edge) -> std::string {
        std::vector<std::string> kids;
        for (size_t e = 0; e < t.edges.size(); ++e) {
            if (static_cast<int>(e) == from_edge) continue;
            int a = t.vertex_index(t.edges[e].u), b = t.vertex_index(t.edges[e].v);
            int other = -1;
            std::string near_slot, far_slot;
            if (a == vi) {
                other = b;
                near_slot = t.edges[e].slot_u;
                far_slot = t.edges[e].slot_v;
            } else if (b == vi) {
                other = a;
                near_slot = t.edges[e].slot_v;
                far_slot = t.edges[e].slot_u;
            } else {
                continue;
            }
            kids.push_back("-" + t.edges[e].group.str() + "@" + near_slot + ">" + far_slot +
                           ser(other, static_cast<int>(e)));
        }
        std::sort(kids.begin(), kids.end());
        std::string s = "(" + vspec(vi);
        for (const auto& k : kids) s += k;
        return s + ")";
    };
    std::string best;
    for (size_t vi = 0; vi < t.vertices.size(); ++vi) {
        std::string s = "p" + std::to_string(t.p) + ser(static_cast<int>(vi), -1);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

}  // namespace mumford
