#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "mumford/error.hpp"

namespace mumford {

using BigInt = mpz_class;

// Exact rational numbers.  Always reduced, denominator > 0.  The whole
// toolkit forbids floating point; every invariant and bound comparison is
// done through this type or through plain integers.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}               // NOLINT(google-explicit-constructor)
    Rational(const BigInt& n) : v_(n) {}      // NOLINT(google-explicit-constructor)
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw invalid_input("Rational: zero denominator");
        v_.canonicalize();
    }
    Rational(const BigInt& num, const BigInt& den) : v_(num, den) {
        if (den == 0) throw invalid_input("Rational: zero denominator");
        v_.canonicalize();
    }

    // Parses "a/b" or "a".
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt(s));
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }

    BigInt num() const { return v_.get_num(); }
    BigInt den() const { return v_.get_den(); }

    Rational operator+(const Rational& o) const { return Rational(v_ + o.v_); }
    Rational operator-(const Rational& o) const { return Rational(v_ - o.v_); }
    Rational operator*(const Rational& o) const { return Rational(v_ * o.v_); }
    Rational operator/(const Rational& o) const {
        if (o.v_ == 0) throw invalid_input("Rational: division by zero");
        return Rational(v_ / o.v_);
    }
    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }
    bool operator<=(const Rational& o) const { return v_ <= o.v_; }
    bool operator>(const Rational& o) const { return v_ > o.v_; }
    bool operator>=(const Rational& o) const { return v_ >= o.v_; }

    bool is_integer() const { return v_.get_den() == 1; }

    // Serialized as "a/b" ("a" when integral) so JSON stays exact.
    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

  private:
    explicit Rational(const mpq_class& q) : v_(q) {}
    mpq_class v_;
};

inline Rational inv_of(const BigInt& n) { return Rational(BigInt(1), n); }
inline Rational inv_of(long n) { return Rational(1, n); }

inline BigInt big_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Floor of sqrt(n) for n >= 0, exact.
inline BigInt isqrt(const BigInt& n) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

}  // namespace mumford
