#pragma once

#include <vector>

#include "mumford/groupspec.hpp"
#include "mumford/tree.hpp"

namespace mumford {

namespace detail {

inline bool has_branch_group(const GroupSpec& g, const GroupSpec& h, uint64_t p) {
    for (const auto& s : branch_data(g, p))
        if (iso_eq(s.group, h, p)) return true;
    return false;
}

inline bool is_borel_type(const GroupSpec& c) {
    return c.family == Family::Borel || c.family == Family::Cyclic ||
           c.family == Family::Trivial;
}

}  // namespace detail

// Realizability of the simple amalgam G1 *_{G3} G2 as a discontinuous group.
inline bool realizable_simple(const GroupSpec& g1_0, const GroupSpec& g3_0,
                              const GroupSpec& g2_0, uint64_t p) {
    auto c1 = canon_at(g1_0, p), c2 = canon_at(g2_0, p), c3 = canon_at(g3_0, p);
    if (!c1 || !c2 || !c3) return false;
    GroupSpec G1 = *c1, G2 = *c2, G3 = *c3;
    if (G3.family == Family::Trivial) return false;  // not simple: free product
    // cyclic vertex groups never occur in a contracted tree
    if (G1.family == Family::Cyclic || G2.family == Family::Cyclic) return false;
    if (G1.family == Family::Trivial || G2.family == Family::Trivial) return false;

    const bool b1 = detail::is_borel_type(G1) && G1.family == Family::Borel;
    const bool b2 = detail::is_borel_type(G2) && G2.family == Family::Borel;

    auto order_div = [&](const GroupSpec& e, const GroupSpec& v) {
        return spec_order(v, p) % spec_order(e, p) == 0;
    };
    if (!order_div(G3, G1) || !order_div(G3, G2)) return false;

    if (!b1 && !b2) {
        // (a) both not of Borel type
        if (G3.family == Family::Cyclic && G3.a % p != 0) {
            return detail::has_branch_group(G1, G3, p) && detail::has_branch_group(G2, G3, p);
        }
        if (p == 2 && *canon_at(G3, p) == borel(1, 1)) {
            // D_l *_{C_2} D_m with odd l, m
            return G1.family == Family::Dihedral && G2.family == Family::Dihedral &&
                   G1.a % 2 == 1 && G2.a % 2 == 1;
        }
        if (p == 3 && *canon_at(G3, p) == borel(1, 1)) {
            return G1 == psl2(3) && G2 == psl2(3);
        }
        return false;
    }

    // (b): at least one Borel factor; take G1 Borel
    if (!b1) {
        std::swap(G1, G2);
    }
    // now G1 = B(N, m), N > 0
    const uint64_t N = G1.a, m = G1.b;
    if (G3.family == Family::Cyclic && m > 1 && G3.a == m) {
        // (b)1: G3 = C_m a branch group of G2
        return detail::has_branch_group(G2, G3, p);
    }
    if (G3.family == Family::Borel) {
        // (b)2/(b)3: B(l n, m) *_{B(n, m)} PGL2/PSL2 with l > 1, plus the
        // p = 2 / p = 3 special small edges, and (b)5 via canon of D3.
        if (G2.family == Family::PGL2) {
            uint32_t n;
            is_power_of(G2.a, p, &n);
            if (m == G2.a - 1 && G3 == borel(n, m) && N % n == 0 && N > n) return true;
        }
        if (G2.family == Family::PSL2 && p != 2) {
            uint32_t n;
            is_power_of(G2.a, p, &n);
            if (m == (G2.a - 1) / 2 && G3 == borel(n, m) && N % n == 0 && N > n) return true;
        }
        if (p == 2 && G3 == borel(1, 1) && m == 1 && N > 1 && G2.family == Family::Dihedral &&
            G2.a % 2 == 1)
            return true;  // (b)4
        if (p == 3 && G3 == borel(1, 2) && m == 2 && N > 1 && G2.family == Family::A5)
            return true;  // (b)5
        return false;
    }
    return false;
}

// Realizability of the star amalgam of the parts along the single group H.
inline bool realizable_star(const GroupSpec& h0, const std::vector<GroupSpec>& parts,
                            uint64_t p) {
    if (parts.size() < 3) throw invalid_input("realizable_star: need at least 3 parts");
    auto hc = canon_at(h0, p);
    if (!hc) return false;
    const GroupSpec h = *hc;

    auto is_tame_odd_dihedral = [&](const GroupSpec& g0) {
        auto c = canon_at(g0, p);
        return c && c->family == Family::Dihedral && c->a % 2 == 1 && c->a % p != 0;
    };
    auto is_odd_dihedral2 = [&](const GroupSpec& g0) {  // p = 2 flavour
        auto c = canon_at(g0, p);
        return c && c->family == Family::Dihedral && c->a % 2 == 1;
    };
    auto is_a4 = [&](const GroupSpec& g0) {
        auto c = canon_at(g0, p);
        return c && (*c == a4() || (p == 3 && *c == psl2(3)));
    };
    auto is_pgroup_rank2plus = [&](const GroupSpec& g0) {
        auto c = canon_at(g0, p);
        return c && c->family == Family::Borel && c->b == 1 && c->a >= 2;
    };

    if (p != 2 && h == cyclic(2)) {
        // (i): middles are odd tame dihedral, ends have a C_2 branch group
        bool mid = true;
        for (size_t i = 1; i + 1 < parts.size(); ++i) mid = mid && is_tame_odd_dihedral(parts[i]);
        if (mid && detail::has_branch_group(parts.front(), cyclic(2), p) &&
            detail::has_branch_group(parts.back(), cyclic(2), p))
            return true;
    }
    if (p != 2 && p != 3 && h == cyclic(3)) {
        // (ii)
        bool mid = true;
        for (size_t i = 1; i + 1 < parts.size(); ++i) mid = mid && is_a4(parts[i]);
        if (mid && detail::has_branch_group(parts.front(), cyclic(3), p) &&
            detail::has_branch_group(parts.back(), cyclic(3), p))
            return true;
    }
    if (p == 2 && h == borel(1, 1)) {
        // (iii): all but possibly the first are odd dihedral
        bool rest = true;
        for (size_t i = 1; i < parts.size(); ++i) rest = rest && is_odd_dihedral2(parts[i]);
        if (rest && (is_odd_dihedral2(parts.front()) || is_pgroup_rank2plus(parts.front())))
            return true;
    }
    if (p == 3 && h == borel(1, 1)) {
        // (iv)
        bool rest = true;
        for (size_t i = 1; i < parts.size(); ++i) rest = rest && is_a4(parts[i]);
        if (rest && (is_a4(parts.front()) || is_pgroup_rank2plus(parts.front())))
            return true;
    }
    return false;
}

enum class Realizability { Yes, No, Unknown };

inline const char* realizability_name(Realizability r) {
    switch (r) {
        case Realizability::Yes: return "yes";
        case Realizability::No: return "no";
        case Realizability::Unknown: return "unknown";
    }
    return "?";
}

// Edge-wise screen: if some edge's induced simple amalgam fails, the whole
// tree is not realizable.  A two-vertex tree is decided exactly.  Everything
// else is left to the catalog pattern match (see catalog.hpp).
inline Realizability realizable_edgewise(const TreeOfGroups& t) {
    require_valid(t);
    if (t.vertices.size() == 1) return Realizability::No;  // finite group, not a Mumford group
    bool all_checked = true;
    for (const auto& e : t.edges) {
        if (e.group.family == Family::Trivial) continue;
        int a = t.vertex_index(e.u), b = t.vertex_index(e.v);
        // edges into a designated p-group vertex are the C_p middle-vertex
        // construction and are validated structurally, not as simple amalgams
        if (t.vertices[a].designated || t.vertices[b].designated) {
            all_checked = false;
            continue;
        }
        if (!realizable_simple(t.vertices[a].group, e.group, t.vertices[b].group, t.p))
            return Realizability::No;
    }
    if (t.vertices.size() == 2 && !t.decomposable() && all_checked) return Realizability::Yes;
    return Realizability::Unknown;
}

}  // namespace mumford
