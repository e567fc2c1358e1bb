#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "mumford/field.hpp"

namespace mumford {

// Projective matrices over a finite field.  Canonical representative: the
// first nonzero entry in row-major order is scaled to 1, so proj_canon(c*M)
// == proj_canon(M) for every nonzero scalar c.
template <int N>
struct ProjMat {
    const Field* field = nullptr;
    std::array<Field::Elem, N * N> e{};

    Field::Elem at(int r, int c) const { return e[r * N + c]; }
    void set(int r, int c, Field::Elem v) { e[r * N + c] = v; }

    bool operator==(const ProjMat& o) const { return field == o.field && e == o.e; }
    bool operator!=(const ProjMat& o) const { return !(*this == o); }
    bool operator<(const ProjMat& o) const { return e < o.e; }

    uint64_t pack() const {
        // entries < q <= 2^31; group work uses q <= 81 so 7 bits suffice,
        // but pack generically in base q for safety (N=2 only).
        static_assert(N == 2 || N == 3, "pack supports 2x2 and 3x3");
        if constexpr (N == 2) {
            uint64_t v = 0;
            for (int i = 3; i >= 0; --i) v = v * field->q() + e[i];
            return v;
        } else {
            uint64_t v = 0;
            for (int i = 8; i >= 0; --i) v = v * field->q() + e[i];
            return v;  // valid while q^9 < 2^64, i.e. q <= 137
        }
    }

    std::string str() const {
        std::string s = "[";
        for (int r = 0; r < N; ++r) {
            s += r ? ";" : "";
            for (int c = 0; c < N; ++c) s += (c ? "," : "") + std::to_string(at(r, c));
        }
        return s + "]";
    }
};

using ProjMat2 = ProjMat<2>;
using ProjMat3 = ProjMat<3>;

template <int N>
inline Field::Elem proj_det(const ProjMat<N>& m) {
    const Field& F = *m.field;
    if constexpr (N == 2) {
        return F.sub(F.mul(m.e[0], m.e[3]), F.mul(m.e[1], m.e[2]));
    } else {
        Field::Elem d = 0;
        d = F.add(d, F.mul(m.e[0], F.sub(F.mul(m.e[4], m.e[8]), F.mul(m.e[5], m.e[7]))));
        d = F.sub(d, F.mul(m.e[1], F.sub(F.mul(m.e[3], m.e[8]), F.mul(m.e[5], m.e[6]))));
        d = F.add(d, F.mul(m.e[2], F.sub(F.mul(m.e[3], m.e[7]), F.mul(m.e[4], m.e[6]))));
        return d;
    }
}

template <int N>
inline ProjMat<N> proj_canon(ProjMat<N> m) {
    const Field& F = *m.field;
    if (proj_det(m) == 0) throw invalid_input("proj_canon: singular matrix");
    for (auto v : m.e)
        if (v != 0) {
            Field::Elem s = F.inv(v);
            for (auto& w : m.e) w = F.mul(w, s);
            return m;
        }
    throw invalid_input("proj_canon: zero matrix");
}

template <int N>
inline ProjMat<N> proj_mul(const ProjMat<N>& a, const ProjMat<N>& b) {
    const Field& F = *a.field;
    ProjMat<N> r;
    r.field = a.field;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Field::Elem acc = 0;
            for (int k = 0; k < N; ++k) acc = F.add(acc, F.mul(a.at(i, k), b.at(k, j)));
            r.set(i, j, acc);
        }
    return proj_canon(r);
}

template <int N>
inline ProjMat<N> proj_inv(const ProjMat<N>& m) {
    const Field& F = *m.field;
    ProjMat<N> r;
    r.field = m.field;
    if constexpr (N == 2) {
        r.e = {m.e[3], F.neg(m.e[1]), F.neg(m.e[2]), m.e[0]};
    } else {
        auto co = [&](int r0, int c0, int r1, int c1) {
            return F.sub(F.mul(m.at(r0, c0), m.at(r1, c1)), F.mul(m.at(r0, c1), m.at(r1, c0)));
        };
        // adjugate (transpose of cofactors)
        r.set(0, 0, co(1, 1, 2, 2));
        r.set(0, 1, F.neg(co(0, 1, 2, 2)));
        r.set(0, 2, co(0, 1, 1, 2));
        r.set(1, 0, F.neg(co(1, 0, 2, 2)));
        r.set(1, 1, co(0, 0, 2, 2));
        r.set(1, 2, F.neg(co(0, 0, 1, 2)));
        r.set(2, 0, co(1, 0, 2, 1));
        r.set(2, 1, F.neg(co(0, 0, 2, 1)));
        r.set(2, 2, co(0, 0, 1, 1));
    }
    return proj_canon(r);
}

template <int N>
inline ProjMat<N> proj_identity(const Field& F) {
    ProjMat<N> r;
    r.field = &F;
    for (int i = 0; i < N; ++i) r.set(i, i, 1);
    return r;
}

template <int N>
inline bool proj_is_identity(const ProjMat<N>& m) {
    return m == proj_identity<N>(*m.field);
}

template <int N>
inline ProjMat<N> make_proj(const Field& F, std::initializer_list<int64_t> entries) {
    ProjMat<N> m;
    m.field = &F;
    int i = 0;
    for (auto v : entries) m.e[i++] = F.from_int(v);
    return proj_canon(m);
}

template <int N>
inline uint64_t proj_order(const ProjMat<N>& m, uint64_t cap = 1 << 20) {
    ProjMat<N> v = m;
    uint64_t n = 1;
    while (!proj_is_identity(v)) {
        v = proj_mul(v, m);
        ++n;
        if (n > cap) throw check_failed("proj_order runaway");
    }
    return n;
}

// As proj_order but returns 0 instead of throwing when the order exceeds cap.
template <int N>
inline uint64_t proj_order_bounded(const ProjMat<N>& m, uint64_t cap) {
    ProjMat<N> v = m;
    uint64_t n = 1;
    while (!proj_is_identity(v)) {
        v = proj_mul(v, m);
        ++n;
        if (n > cap) return 0;
    }
    return n;
}

// Determinant class in F_q^*/(F_q^*)^2 of the canonical representative;
// well-defined because rescaling multiplies det by a square.
template <int N>
inline bool proj_det_is_square(const ProjMat<N>& m) {
    return m.field->is_square(proj_det(proj_canon(m)));
}

// Moebius action of a canonical 2x2 projective matrix on P^1(F_q), with
// points encoded as 0..q-1 for affine points and q for infinity.
inline uint32_t moebius_apply(const ProjMat2& m, uint32_t pt) {
    const Field& F = *m.field;
    Field::Elem a = m.e[0], b = m.e[1], c = m.e[2], d = m.e[3];
    if (pt == F.q()) {  // infinity
        if (c == 0) return static_cast<uint32_t>(F.q());
        return F.div(a, c);
    }
    Field::Elem z = static_cast<Field::Elem>(pt);
    Field::Elem den = F.add(F.mul(c, z), d);
    if (den == 0) return static_cast<uint32_t>(F.q());
    return F.div(F.add(F.mul(a, z), b), den);
}

}  // namespace mumford
