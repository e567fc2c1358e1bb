#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "mumford/error.hpp"

namespace mumford {

// F_{p^s} with a deterministic modulus: the lexicographically least monic
// irreducible polynomial of degree s over F_p, coefficients ordered
// low-degree first with residues 0..p-1.  The same (p, s) always produces
// the same field, so element indices are reproducible across runs.
//
// Elements are canonical indices 0..q-1 with idx = sum c_i p^i where c_i is
// the coefficient of x^i in the reduced representative.  Index 0 is zero,
// index 1 is one, index p is the residue of x (for s > 1).
class Field {
  public:
    using Elem = uint32_t;

    uint64_t p() const { return p_; }
    uint32_t s() const { return s_; }
    uint64_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem x() const { return s_ > 1 ? static_cast<Elem>(p_) : 0; }

    Elem from_int(int64_t v) const {
        int64_t r = v % static_cast<int64_t>(p_);
        if (r < 0) r += static_cast<int64_t>(p_);
        return static_cast<Elem>(r);
    }

    Elem add(Elem a, Elem b) const {
        if (add_table_) return add_table_[static_cast<size_t>(a) * q_ + b];
        return add_slow(a, b);
    }
    Elem neg(Elem a) const {
        std::vector<uint32_t> c = unpack(a);
        for (auto& v : c) v = v ? static_cast<uint32_t>(p_ - v) : 0;
        return pack(c);
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (mul_table_) return mul_table_[static_cast<size_t>(a) * q_ + b];
        return mul_slow(a, b);
    }
    Elem inv(Elem a) const {
        if (a == 0) throw invalid_input("Field::inv of zero");
        if (!inv_table_.empty()) return inv_table_[a];
        return pow(a, q_ - 2);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, uint64_t e) const {
        Elem r = 1, b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    Elem frobenius(Elem a) const { return pow(a, p_); }

    // Multiplicative order (a != 0).
    uint64_t mult_order(Elem a) const {
        if (a == 0) throw invalid_input("mult_order of zero");
        uint64_t n = 1;
        Elem v = a;
        while (v != 1) {
            v = mul(v, a);
            ++n;
            if (n > q_) throw check_failed("mult_order runaway");
        }
        return n;
    }

    // First element (in index order) of multiplicative order exactly n,
    // or 0 if none exists.
    Elem element_of_order(uint64_t n) const {
        if ((q_ - 1) % n != 0) return 0;
        for (Elem a = 1; a < q_; ++a)
            if (mult_order(a) == n) return a;
        return 0;
    }

    // Least non-square in index order (p odd).
    Elem least_nonsquare() const {
        if (p_ == 2) throw invalid_input("least_nonsquare: every element is a square in char 2");
        for (Elem a = 2; a < q_; ++a)
            if (!is_square(a)) return a;
        throw check_failed("least_nonsquare: none found");
    }

    bool is_square(Elem a) const {
        if (a == 0) return true;
        if (p_ == 2) return true;
        return pow(a, (q_ - 1) / 2) == 1;
    }

    // sqrt for p odd (throws if not a square); table-backed.
    Elem sqrt(Elem a) const {
        if (a == 0) return 0;
        ensure_sqrt_table();
        Elem r = sqrt_table_[a];
        if (r == kNoSqrt) throw invalid_input("Field::sqrt of non-square");
        return r;
    }
    bool has_sqrt(Elem a) const {
        if (p_ != 2 && !is_square(a)) return false;
        return true;
    }

    // Solves y^2 + y = a in char 2; returns false if no solution
    // (i.e. absolute trace 1).
    bool artin_schreier_solve(Elem a, Elem& y) const {
        if (p_ != 2) throw invalid_input("artin_schreier_solve needs p = 2");
        for (Elem c = 0; c < q_; ++c) {
            if (add(mul(c, c), c) == a) {
                y = c;
                return true;
            }
        }
        return false;
    }

    // Absolute trace down to F_p, returned as residue 0..p-1.
    uint32_t abs_trace(Elem a) const {
        Elem t = a, f = a;
        for (uint32_t i = 1; i < s_; ++i) {
            f = frobenius(f);
            t = add(t, f);
        }
        return t;  // element of the prime field: index < p
    }

    // Membership in the subfield of size p^d (d | s).
    bool in_subfield(Elem a, uint32_t d) const {
        if (s_ % d != 0) return false;
        uint64_t pd = 1;
        for (uint32_t i = 0; i < d; ++i) pd *= p_;
        return pow(a, pd) == a;
    }

    std::vector<uint32_t> unpack(Elem a) const {
        std::vector<uint32_t> c(s_);
        for (uint32_t i = 0; i < s_; ++i) {
            c[i] = static_cast<uint32_t>(a % p_);
            a = static_cast<Elem>(a / p_);
        }
        return c;
    }
    Elem pack(const std::vector<uint32_t>& c) const {
        uint64_t v = 0;
        for (uint32_t i = s_; i-- > 0;) v = v * p_ + (i < c.size() ? c[i] % p_ : 0);
        return static_cast<Elem>(v);
    }

    std::string elem_str(Elem a) const { return std::to_string(a); }

    static std::shared_ptr<const Field> make(uint64_t p, uint32_t s);

  private:
    Field(uint64_t p, uint32_t s);

    Elem add_slow(Elem a, Elem b) const {
        uint64_t r = 0, mul = 1;
        for (uint32_t i = 0; i < s_; ++i) {
            uint64_t d = (a % p_ + b % p_) % p_;
            r += d * mul;
            mul *= p_;
            a /= static_cast<Elem>(p_);
            b /= static_cast<Elem>(p_);
        }
        return static_cast<Elem>(r);
    }

    Elem mul_slow(Elem a, Elem b) const {
        // schoolbook product then reduction by the modulus
        std::vector<uint32_t> ca = unpack(a), cb = unpack(b);
        std::vector<uint64_t> prod(2 * s_ - 1, 0);
        for (uint32_t i = 0; i < s_; ++i) {
            if (!ca[i]) continue;
            for (uint32_t j = 0; j < s_; ++j) prod[i + j] += static_cast<uint64_t>(ca[i]) * cb[j];
        }
        for (uint32_t k = 2 * s_ - 2; k >= s_ && k < 2 * s_; --k) {
            uint64_t c = prod[k] % p_;
            if (c) {
                // x^k = x^{k-s} * (x^s) = x^{k-s} * (-modulus tail)
                for (uint32_t j = 0; j < s_; ++j) {
                    uint64_t mj = modulus_[j];
                    if (mj) prod[k - s_ + j] += c * (p_ - mj);
                }
            }
            prod[k] = 0;
            if (k == 0) break;
        }
        std::vector<uint32_t> out(s_);
        for (uint32_t i = 0; i < s_; ++i) out[i] = static_cast<uint32_t>(prod[i] % p_);
        return pack(out);
    }

    void ensure_sqrt_table() const {
        std::call_once(sqrt_once_, [this] {
            sqrt_table_.assign(q_, kNoSqrt);
            for (Elem a = q_ - 1; a >= 1; --a) {
                Elem sq = mul(a, a);
                sqrt_table_[sq] = a;  // keep the least root
                if (a == 1) break;
            }
            sqrt_table_[0] = 0;
        });
    }

    static constexpr Elem kNoSqrt = 0xFFFFFFFFu;
    static constexpr uint64_t kTableLimit = 2500;

    uint64_t p_;
    uint32_t s_;
    uint64_t q_;
    std::vector<uint32_t> modulus_;  // coeffs of x^0..x^{s-1}; leading coeff 1 implied
    std::vector<Elem> add_table_vec_, mul_table_vec_;
    const Elem* add_table_ = nullptr;
    const Elem* mul_table_ = nullptr;
    std::vector<Elem> inv_table_;
    mutable std::vector<Elem> sqrt_table_;
    mutable std::once_flag sqrt_once_;
};

namespace detail {

inline bool poly_irreducible(const std::vector<uint32_t>& f, uint64_t p) {
    // f monic of degree s given as coeffs x^0..x^{s-1} (+ implicit x^s).
    // Test: no roots for s<=3 shortcut is insufficient in general; use the
    // standard criterion x^{p^s} == x mod f and gcd(x^{p^{s/t}} - x, f) = 1
    // for prime divisors t of s.
    const uint32_t s = static_cast<uint32_t>(f.size());
    auto mulmod = [&](const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
        std::vector<uint64_t> prod(2 * s - 1, 0);
        for (uint32_t i = 0; i < s; ++i) {
            if (!a[i]) continue;
            for (uint32_t j = 0; j < s; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        }
        for (uint32_t k = 2 * s - 2; k >= s && k < 2 * s; --k) {
            uint64_t c = prod[k] % p;
            if (c)
                for (uint32_t j = 0; j < s; ++j)
                    prod[k - s + j] = (prod[k - s + j] + c * (p - f[j])) % p;
            prod[k] = 0;
        }
        prod.resize(s);
        return prod;
    };
    auto powx = [&](uint64_t e) {
        // x^e mod f
        std::vector<uint64_t> r(s, 0), b(s, 0);
        r[0] = 1;
        if (s == 1) {
            // x = -f0 mod f
            b[0] = (p - f[0]) % p;
        } else {
            b[1] = 1;
        }
        while (e) {
            if (e & 1) r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    };
    auto is_x = [&](const std::vector<uint64_t>& a) {
        if (s == 1) return a[0] == (p - f[0]) % p;
        for (uint32_t i = 0; i < s; ++i) {
            uint64_t want = (i == 1) ? 1 : 0;
            if (a[i] != want) return false;
        }
        return true;
    };
    uint64_t ps = 1;
    for (uint32_t i = 0; i < s; ++i) ps *= p;
    if (!is_x(powx(ps))) return false;
    // proper-subfield fixed points would witness a factor of smaller degree
    for (uint32_t t = 2; t <= s; ++t) {
        if (s % t != 0) continue;
        bool tprime = true;
        for (uint32_t d = 2; d < t; ++d)
            if (t % d == 0) tprime = false;
        if (!tprime) continue;
        uint64_t pst = 1;
        for (uint32_t i = 0; i < s / t; ++i) pst *= p;
        if (is_x(powx(pst))) return false;
    }
    return true;
}

}  // namespace detail

inline Field::Field(uint64_t p, uint32_t s) : p_(p), s_(s) {
    if (!(p >= 2) || s < 1) throw invalid_input("Field: need prime p and s >= 1");
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw invalid_input("Field: p not prime");
    q_ = 1;
    for (uint32_t i = 0; i < s; ++i) {
        q_ *= p;
        if (q_ > (1ull << 31)) throw invalid_input("Field: q too large");
    }
    // lexicographically least monic irreducible, coefficients low-degree first
    modulus_.assign(s, 0);
    if (s == 1) {
        modulus_[0] = 0;  // f = x
    } else {
        bool found = false;
        std::vector<uint32_t> c(s, 0);
        // lex order on (c_0, c_1, ..., c_{s-1}): decode v with c_0 as the
        // most significant base-p digit
        for (uint64_t v = 0; v < q_ && !found; ++v) {
            uint64_t rem = v;
            for (uint32_t i = 0; i < s; ++i) {
                uint64_t w = 1;
                for (uint32_t k = 0; k < s - 1 - i; ++k) w *= p;
                c[i] = static_cast<uint32_t>(rem / w);
                rem %= w;
            }
            if (detail::poly_irreducible(c, p)) {
                modulus_ = c;
                found = true;
            }
        }
        if (!found) throw check_failed("Field: no irreducible modulus found");
    }
    if (q_ <= kTableLimit) {
        add_table_vec_.resize(q_ * q_);
        mul_table_vec_.resize(q_ * q_);
        for (Elem a = 0; a < q_; ++a)
            for (Elem b = 0; b < q_; ++b) {
                add_table_vec_[static_cast<size_t>(a) * q_ + b] = add_slow(a, b);
                mul_table_vec_[static_cast<size_t>(a) * q_ + b] = mul_slow(a, b);
            }
        add_table_ = add_table_vec_.data();
        mul_table_ = mul_table_vec_.data();
        inv_table_.assign(q_, 0);
        for (Elem a = 1; a < q_; ++a) {
            Elem r = 1, b = a;
            uint64_t e = q_ - 2;
            while (e) {
                if (e & 1) r = mul_table_[static_cast<size_t>(r) * q_ + b];
                b = mul_table_[static_cast<size_t>(b) * q_ + b];
                e >>= 1;
            }
            inv_table_[a] = r;
        }
    }
}

inline std::shared_ptr<const Field> Field::make(uint64_t p, uint32_t s) {
    static std::mutex mu;
    static std::map<std::pair<uint64_t, uint32_t>, std::shared_ptr<const Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, s);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = std::shared_ptr<const Field>(new Field(p, s));
    cache[key] = f;
    return f;
}

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr field_make(uint64_t p, uint32_t s) { return Field::make(p, s); }

// Embedding F_{p^a} -> F_{p^b} for a | b: sends the small field's generator x
// to the first root (in index order) of the small modulus in the big field.
// Returns the full element map small-index -> big-index.
inline std::vector<Field::Elem> field_embedding(const Field& small, const Field& big) {
    if (small.p() != big.p() || big.s() % small.s() != 0)
        throw invalid_input("field_embedding: not a subfield situation");
    if (small.s() == 1) {
        std::vector<Field::Elem> m(small.q());
        for (Field::Elem a = 0; a < small.q(); ++a) m[a] = a;  // prime field is shared
        return m;
    }
    const auto& f = small.modulus();
    Field::Elem root = 0;
    bool found = false;
    for (Field::Elem cand = 0; cand < big.q() && !found; ++cand) {
        // eval f(cand) in big: monic of degree s
        Field::Elem acc = 1;  // x^s coefficient
        Field::Elem val = 0;
        Field::Elem powv = 1;
        for (uint32_t i = 0; i < small.s(); ++i) {
            val = big.add(val, big.mul(big.from_int(static_cast<int64_t>(f[i])), powv));
            powv = big.mul(powv, cand);
        }
        val = big.add(val, big.mul(acc, powv));
        if (val == 0) {
            root = cand;
            found = true;
        }
    }
    if (!found) throw check_failed("field_embedding: no root of modulus in big field");
    std::vector<Field::Elem> map(small.q());
    for (Field::Elem a = 0; a < small.q(); ++a) {
        auto c = small.unpack(a);
        Field::Elem val = 0, powv = 1;
        for (uint32_t i = 0; i < small.s(); ++i) {
            val = big.add(val, big.mul(big.from_int(static_cast<int64_t>(c[i])), powv));
            powv = big.mul(powv, root);
        }
        map[a] = val;
    }
    return map;
}

}  // namespace mumford
