#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "mumford/concrete.hpp"
#include "mumford/error.hpp"
#include "mumford/field.hpp"
#include "mumford/groupspec.hpp"
#include "mumford/projmat.hpp"

namespace mumford {

// Iterates the canonical representatives of PGL2(F) restricted to entries in
// the subfield of size qsub (qsub = F.q() for the full group).  The callback
// may return false to stop early.  Enumeration order is fixed: the (1,b,c,d)
// block in lex order of the subfield element list, then (0,1,c,d).
template <typename Fn>
void for_each_pgl2(const Field& F, uint64_t qsub, Fn&& fn) {
    uint32_t d_sub = 0;
    {
        uint64_t v = qsub;
        uint64_t p = F.p();
        while (v > 1) {
            v /= p;
            ++d_sub;
        }
    }
    std::vector<Field::Elem> sub;
    for (Field::Elem a = 0; a < F.q(); ++a)
        if (F.in_subfield(a, d_sub)) sub.push_back(a);
    if (sub.size() != qsub) throw invalid_input("for_each_pgl2: no subfield of that size");

    ProjMat2 m;
    m.field = &F;
    for (auto b : sub)
        for (auto c : sub)
            for (auto d : sub) {
                m.e = {1, b, c, d};
                if (proj_det(m) == 0) continue;
                if (!fn(m)) return;
            }
    for (auto c : sub) {
        if (c == 0) continue;
        for (auto d : sub) {
            m.e = {0, 1, c, d};
            if (!fn(m)) return;
        }
    }
}

// First element of PGL2 over the qsub-subfield of F of exact order n
// (deterministic scan).
inline ProjMat2 pgl2_element_of_order(const Field& F, uint64_t qsub, uint64_t n) {
    ProjMat2 out;
    bool found = false;
    for_each_pgl2(F, qsub, [&](const ProjMat2& m) {
        if (proj_order(m, 4 * qsub + 4) == n) {
            out = m;
            found = true;
            return false;
        }
        return true;
    });
    if (!found) throw invalid_input("pgl2_element_of_order: no element of order " +
                                    std::to_string(n));
    return out;
}

// Order-(qsub+1) element of PGL2 over the qsub-subfield of F, built from the
// companion matrix of the minimal polynomial of the first primitive element
// of F_{qsub^2}.  Deterministic and cheap.
inline ProjMat2 singer_element(const Field& F, uint64_t qsub) {
    uint64_t p = F.p();
    uint32_t s = 0;
    {
        uint64_t v = qsub;
        while (v > 1) {
            v /= p;
            ++s;
        }
    }
    auto Fs = field_make(p, s);
    auto F2 = field_make(p, 2 * s);
    auto emb = field_embedding(*Fs, *F2);
    std::vector<Field::Elem> rev(F2->q(), UINT32_MAX);
    for (Field::Elem a = 0; a < Fs->q(); ++a) rev[emb[a]] = a;

    Field::Elem g = 0;
    for (Field::Elem cand = 2; cand < F2->q(); ++cand)
        if (F2->mult_order(cand) == F2->q() - 1) {
            g = cand;
            break;
        }
    if (g == 0) throw check_failed("singer_element: no primitive element");
    Field::Elem gq = F2->pow(g, qsub);
    Field::Elem tr2 = F2->add(g, gq);
    Field::Elem nm2 = F2->mul(g, gq);
    if (rev[tr2] == UINT32_MAX || rev[nm2] == UINT32_MAX)
        throw check_failed("singer_element: trace/norm not in base field");

    auto embF = field_embedding(*Fs, F);
    Field::Elem t = embF[rev[tr2]], nm = embF[rev[nm2]];
    ProjMat2 m;
    m.field = &F;
    m.e = {0, F.neg(nm), 1, t};  // companion of x^2 - t x + nm
    m = proj_canon(m);
    if (proj_order(m, 4 * qsub + 4) != qsub + 1)
        throw check_failed("singer_element: wrong order");
    return m;
}

namespace detail {

inline GElem pk(const MatRep& R, const ProjMat2& m) { return R.pack(proj_canon(m)); }

inline void add_borel_unipotent_basis(const Field& F, uint64_t m, uint64_t n,
                                      std::vector<Field::Elem>& basis) {
    // F_{p^r}-span of 1, x, ..., x^{n/r - 1} where r = ord of p mod m,
    // flattened to an F_p-basis ordered so that prefixes give the nested
    // subgroups B(s, m) for r | s <= n.
    uint64_t p = F.p();
    uint32_t r = (m <= 1) ? 1 : ord_mod(p, m);
    if (n % r != 0) throw invalid_input("Borel basis: rank not a multiple of ord_p(m)");
    auto Fr = field_make(p, r);
    auto emb = field_embedding(*Fr, F);
    std::vector<Field::Elem> fr_basis;
    for (uint32_t j = 0; j < r; ++j)
        fr_basis.push_back(emb[Fr->pack([&] {
            std::vector<uint32_t> c(r, 0);
            c[j] = 1;
            return c;
        }())]);
    Field::Elem xpow = 1;
    for (uint64_t k = 0; k < n / r; ++k) {
        for (uint32_t j = 0; j < r; ++j) basis.push_back(F.mul(fr_basis[j], xpow));
        xpow = F.mul(xpow, F.x());
    }
}

}  // namespace detail

// Explicit realization of a catalog spec inside PGL2(F).  Throws
// invalid_input when the spec does not embed over F.  The returned group
// carries named elements for its generators and for the generators of each
// branch slot ("slot:<tag>:g0", "slot:<tag>:zeta", "slot:<tag>:u<i>").
inline ConcreteGroup concrete_group(const GroupSpec& spec0, FieldPtr Fp,
                                    size_t budget = kDefaultElementBudget) {
    const Field& F = *Fp;
    const uint64_t p = F.p();
    auto canon = canon_at(spec0, p);
    if (!canon)
        throw invalid_input("concrete_group: " + spec0.str() + " not embeddable in char " +
                            std::to_string(p));
    const GroupSpec spec = *canon;
    auto rep = std::make_shared<MatRep>(Fp);
    const MatRep& R = *rep;

    auto order_elem = [&](uint64_t m) -> ProjMat2 {
        // order-m semisimple element: split torus if m | q-1, else Singer power
        if (m == 1) return proj_identity<2>(F);
        if ((F.q() - 1) % m == 0) {
            ProjMat2 t;
            t.field = &F;
            t.e = {F.element_of_order(m), 0, 0, 1};
            return proj_canon(t);
        }
        if ((F.q() + 1) % m == 0) {
            ProjMat2 sg = singer_element(F, F.q());
            ProjMat2 r = proj_identity<2>(F);
            for (uint64_t i = 0; i < (F.q() + 1) / m; ++i) r = proj_mul(r, sg);
            return r;
        }
        throw invalid_input("no element of order " + std::to_string(m) + " over this field");
    };

    switch (spec.family) {
        case Family::Trivial: {
            auto g = ConcreteGroup::closure(rep, {}, budget);
            return g;
        }
        case Family::Cyclic: {
            ProjMat2 gen = order_elem(spec.a);
            auto g = ConcreteGroup::closure(rep, {detail::pk(R, gen)}, budget);
            if (g.order() != spec.a) throw check_failed("cyclic: wrong order");
            g.set_named("gen", detail::pk(R, gen));
            g.set_named("slot:cyclic-a:g0", detail::pk(R, gen));
            g.set_named("slot:cyclic-b:g0", detail::pk(R, gen));
            return g;
        }
        case Family::Borel: {
            const uint64_t n = spec.a, m = spec.b;
            if (F.s() < n) throw invalid_input("Borel: field too small for rank");
            std::vector<Field::Elem> basis;
            detail::add_borel_unipotent_basis(F, m, n, basis);
            std::vector<GElem> gens;
            ProjMat2 zeta;
            if (m > 1) {
                zeta.field = &F;
                zeta.e = {F.element_of_order(m), 0, 0, 1};
                zeta = proj_canon(zeta);
                gens.push_back(detail::pk(R, zeta));
            }
            for (auto b : basis) {
                ProjMat2 u;
                u.field = &F;
                u.e = {1, b, 0, 1};
                gens.push_back(detail::pk(R, u));
            }
            auto g = ConcreteGroup::closure(rep, gens, budget);
            if (g.order() != spec_order(spec, p)) throw check_failed("borel: wrong order");
            size_t off = 0;
            if (m > 1) {
                g.set_named("zeta", gens[0]);
                g.set_named("slot:torus:g0", gens[0]);
                g.set_named("slot:borel:zeta", gens[0]);
                off = 1;
            }
            for (uint64_t i = 0; i < n; ++i) {
                g.set_named("u" + std::to_string(i), gens[off + i]);
                if (m > 1)
                    g.set_named("slot:borel:u" + std::to_string(i), gens[off + i]);
                else
                    g.set_named("slot:p-group:u" + std::to_string(i), gens[off + i]);
            }
            return g;
        }
        case Family::Dihedral: {
            const uint64_t l = spec.a;
            ProjMat2 rot = order_elem(l);
            // an involution conjugating rot to its inverse; split case first
            ProjMat2 swap;
            bool have = false;
            if ((F.q() - 1) % l == 0) {
                swap = make_proj<2>(F, {0, 1, 1, 0});
                have = true;
            } else {
                ProjMat2 rinv = proj_inv(rot);
                for_each_pgl2(F, F.q(), [&](const ProjMat2& w) {
                    if (proj_order_bounded(w, 2) != 2) return true;
                    if (proj_mul(proj_mul(w, rot), w) == rinv) {
                        swap = w;
                        have = true;
                        return false;
                    }
                    return true;
                });
            }
            if (!have) throw invalid_input("dihedral: no inverting involution found");
            auto g = ConcreteGroup::closure(rep, {detail::pk(R, rot), detail::pk(R, swap)}, budget);
            if (g.order() != 2 * l) throw check_failed("dihedral: wrong order");
            g.set_named("rot", detail::pk(R, rot));
            g.set_named("swap", detail::pk(R, swap));
            g.set_named("slot:cyclic:g0", detail::pk(R, rot));
            if (p == 2) {
                g.set_named("slot:c2:g0", detail::pk(R, swap));
            } else {
                g.set_named("slot:c2-a:g0", detail::pk(R, swap));
                // distinct reflection class only matters for even l
                g.set_named("slot:c2-b:g0", l % 2 == 0 ? detail::pk(R, proj_mul(swap, rot))
                                                       : detail::pk(R, swap));
            }
            return g;
        }
        case Family::PGL2:
        case Family::PSL2: {
            const uint64_t qs = spec.a;
            const bool psl = spec.family == Family::PSL2 && p != 2;
            uint32_t sprime = 0;
            is_power_of(qs, p, &sprime);
            if (F.s() % sprime != 0)
                throw invalid_input("PGL2/PSL2: field has no subfield of size q");
            // unipotent basis of the subfield
            auto Fs = field_make(p, sprime);
            auto emb = field_embedding(*Fs, F);
            std::vector<GElem> gens;
            std::vector<GElem> unips;
            for (uint32_t j = 0; j < sprime; ++j) {
                std::vector<uint32_t> c(sprime, 0);
                c[j] = 1;
                ProjMat2 u;
                u.field = &F;
                u.e = {1, emb[Fs->pack(c)], 0, 1};
                unips.push_back(detail::pk(R, u));
                gens.push_back(unips.back());
            }
            GElem zeta;
            uint64_t torus_order = psl ? (qs - 1) / 2 : qs - 1;
            if (torus_order > 1) {
                Field::Elem z = emb[Fs->element_of_order(torus_order)];
                ProjMat2 t;
                t.field = &F;
                t.e = {z, 0, 0, 1};
                zeta = detail::pk(R, t);
                gens.push_back(zeta);
            } else {
                zeta = R.id();
            }
            ProjMat2 w = psl ? make_proj<2>(F, {0, -1, 1, 0}) : make_proj<2>(F, {0, 1, 1, 0});
            gens.push_back(detail::pk(R, w));
            auto g = ConcreteGroup::closure(rep, gens, budget);
            if (g.order() != spec_order(spec, p)) throw check_failed("pgl2/psl2: wrong order");
            for (uint32_t j = 0; j < sprime; ++j) {
                g.set_named("u" + std::to_string(j), unips[j]);
                g.set_named("slot:borel:u" + std::to_string(j), unips[j]);
            }
            g.set_named("unip", unips[0]);
            if (torus_order > 1) {
                g.set_named("zeta", zeta);
                g.set_named("slot:borel:zeta", zeta);
            }
            g.set_named("weyl", detail::pk(R, w));
            ProjMat2 sing = singer_element(F, qs);
            GElem tq1 = psl ? R.pack(proj_mul(sing, sing)) : R.pack(sing);
            g.set_named("torus_q1", tq1);
            g.set_named("slot:torus-qplus1:g0", tq1);
            return g;
        }
        case Family::A4:
        case Family::S4:
        case Family::A5: {
            const uint64_t prod_order = spec.family == Family::A4 ? 3
                                        : spec.family == Family::S4 ? 4
                                                                    : 5;
            const uint64_t want = spec.family == Family::A4 ? 12
                                  : spec.family == Family::S4 ? 24
                                                              : 60;
            // triangle-group generation: x^2 = y^3 = (xy)^k = 1
            std::vector<ProjMat2> invols, threes;
            for_each_pgl2(F, F.q(), [&](const ProjMat2& m) {
                uint64_t o = proj_order_bounded(m, 3);
                if (o == 2) invols.push_back(m);
                if (o == 3) threes.push_back(m);
                return true;
            });
            ProjMat2 X, Y;
            bool found = false;
            for (const auto& x : invols) {
                for (const auto& y : threes) {
                    if (proj_order_bounded(proj_mul(x, y), prod_order) != prod_order) continue;
                    auto probe = ConcreteGroup::closure(
                        rep, {detail::pk(R, x), detail::pk(R, y)}, budget);
                    if (probe.order() == want) {
                        X = x;
                        Y = y;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (!found) throw invalid_input(spec.str() + " does not embed over this field");
            auto g = ConcreteGroup::closure(rep, {detail::pk(R, X), detail::pk(R, Y)}, budget);
            GElem xe = detail::pk(R, X), ye = detail::pk(R, Y), xy = R.mul(xe, ye);
            g.set_named("x", xe);
            g.set_named("y", ye);
            if (spec.family == Family::A4) {
                g.set_named("slot:c2:g0", xe);
                g.set_named("slot:c3-a:g0", ye);
                g.set_named("slot:c3-b:g0", ye);
            } else if (spec.family == Family::S4) {
                g.set_named("slot:c2:g0", xe);
                g.set_named("slot:c3:g0", ye);
                g.set_named("slot:c4:g0", xy);
            } else {
                if (p == 3) {
                    g.set_named("slot:c5:g0", xy);
                    // B(1,2) = S3 slot: first (t,u) with t^2 = u^3 = 1, tut = u^2
                    bool ok = false;
                    for (const auto& t : g.elements()) {
                        if (g.rep()->elem_order(t) != 2) continue;
                        for (const auto& u : g.elements()) {
                            if (g.rep()->elem_order(u) != 3) continue;
                            if (g.rep()->mul(g.rep()->mul(t, u), t) == g.rep()->mul(u, u)) {
                                g.set_named("slot:borel:zeta", t);
                                g.set_named("slot:borel:u0", u);
                                ok = true;
                                break;
                            }
                        }
                        if (ok) break;
                    }
                    if (!ok) throw check_failed("A5 at p=3: no S3 subgroup found");
                } else {
                    g.set_named("slot:c2:g0", xe);
                    g.set_named("slot:c3:g0", ye);
                    g.set_named("slot:c5:g0", xy);
                }
            }
            return g;
        }
    }
    throw invalid_input("concrete_group: unsupported spec");
}

// Convenience: the realization over the minimal field.
inline ConcreteGroup concrete_group_minimal(const GroupSpec& spec, uint64_t p,
                                            size_t budget = kDefaultElementBudget) {
    return concrete_group(spec, field_make(p, minimal_field_exponent(spec, p)), budget);
}

// Canonical generator names of an edge group (cyclic or Borel after
// normalization); the hom machinery maps these onto slot elements.
inline std::vector<std::string> edge_generator_names(const GroupSpec& e0, uint64_t p) {
    auto c = canon_at(e0, p);
    if (!c) throw invalid_input("edge_generator_names: bad edge group");
    const GroupSpec e = *c;
    if (e.family == Family::Trivial) return {};
    if (e.family == Family::Cyclic) return {"g0"};
    if (e.family == Family::Borel) {
        std::vector<std::string> names;
        if (e.b > 1) names.push_back("zeta");
        for (uint64_t i = 0; i < e.a; ++i) names.push_back("u" + std::to_string(i));
        return names;
    }
    throw invalid_input("edge_generator_names: edge group must be cyclic or Borel, got " +
                        e0.str());
}

// Generator elements of the edge group's own concrete realization, in the
// same order as edge_generator_names.
inline std::vector<GElem> edge_generators(const ConcreteGroup& edge_cg, const GroupSpec& e0,
                                          uint64_t p) {
    auto names = edge_generator_names(e0, p);
    std::vector<GElem> out;
    for (const auto& n : names) {
        if (n == "g0")
            out.push_back(edge_cg.named("gen"));
        else
            out.push_back(edge_cg.named(n));
    }
    return out;
}

// Images of the edge group's canonical generators inside a vertex group,
// attached at the given slot.
inline std::vector<GElem> slot_images(const ConcreteGroup& vertex_cg, const std::string& slot,
                                      const GroupSpec& edge0, uint64_t p) {
    auto c = canon_at(edge0, p);
    if (!c) throw invalid_input("slot_images: bad edge group");
    const GroupSpec e = *c;
    std::vector<GElem> out;
    if (e.family == Family::Cyclic) {
        out.push_back(vertex_cg.named("slot:" + slot + ":g0"));
        return out;
    }
    if (e.family == Family::Borel) {
        if (e.b > 1) out.push_back(vertex_cg.named("slot:" + slot + ":zeta"));
        for (uint64_t i = 0; i < e.a; ++i)
            out.push_back(vertex_cg.named("slot:" + slot + ":u" + std::to_string(i)));
        return out;
    }
    throw invalid_input("slot_images: edge group must be cyclic or Borel");
}

}  // namespace mumford
