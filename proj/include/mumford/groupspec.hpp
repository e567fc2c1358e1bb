#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mumford/error.hpp"
#include "mumford/rational.hpp"

namespace mumford {

using Json = nlohmann::ordered_json;

enum class Family : uint8_t { Trivial, Cyclic, Dihedral, Borel, PGL2, PSL2, A4, S4, A5 };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Trivial: return "Trivial";
        case Family::Cyclic: return "Cyclic";
        case Family::Dihedral: return "Dihedral";
        case Family::Borel: return "Borel";
        case Family::PGL2: return "PGL2";
        case Family::PSL2: return "PSL2";
        case Family::A4: return "A4";
        case Family::S4: return "S4";
        case Family::A5: return "A5";
    }
    return "?";
}

// Symbolic description of a finite-group family.  Equality is structural;
// isomorphic specs in a given characteristic are related by aliases()/canon_at().
struct GroupSpec {
    Family family = Family::Trivial;
    uint64_t a = 0;  // Cyclic m / Dihedral l / Borel n / PGL2,PSL2 q
    uint64_t b = 0;  // Borel m

    bool operator==(const GroupSpec& o) const {
        return family == o.family && a == o.a && b == o.b;
    }
    bool operator!=(const GroupSpec& o) const { return !(*this == o); }
    bool operator<(const GroupSpec& o) const {
        if (family != o.family) return family < o.family;
        if (a != o.a) return a < o.a;
        return b < o.b;
    }

    std::string str() const {
        switch (family) {
            case Family::Trivial: return "1";
            case Family::Cyclic: return "C_" + std::to_string(a);
            case Family::Dihedral: return "D_" + std::to_string(a);
            case Family::Borel: return "B(" + std::to_string(a) + "," + std::to_string(b) + ")";
            case Family::PGL2: return "PGL2(" + std::to_string(a) + ")";
            case Family::PSL2: return "PSL2(" + std::to_string(a) + ")";
            case Family::A4: return "A4";
            case Family::S4: return "S4";
            case Family::A5: return "A5";
        }
        return "?";
    }
};

inline GroupSpec trivial_spec() { return {Family::Trivial, 0, 0}; }
inline GroupSpec cyclic(uint64_t m) {
    if (m < 1) throw invalid_input("Cyclic: m >= 1 required");
    if (m == 1) return trivial_spec();
    return {Family::Cyclic, m, 0};
}
inline GroupSpec dihedral(uint64_t l) {
    if (l < 2) throw invalid_input("Dihedral: l >= 2 required");
    return {Family::Dihedral, l, 0};
}
inline GroupSpec borel(uint64_t n, uint64_t m) {
    if (m < 1) throw invalid_input("Borel: m >= 1 required");
    if (n == 0) return cyclic(m);  // Borel(0,m) normalizes to Cyclic(m)
    return {Family::Borel, n, m};
}
inline GroupSpec pgl2(uint64_t q) { return {Family::PGL2, q, 0}; }
inline GroupSpec psl2(uint64_t q) { return {Family::PSL2, q, 0}; }
inline GroupSpec a4() { return {Family::A4, 0, 0}; }
inline GroupSpec s4() { return {Family::S4, 0, 0}; }
inline GroupSpec a5() { return {Family::A5, 0, 0}; }

// Multiplicative order of p mod m (gcd(p, m) = 1).
inline uint32_t ord_mod(uint64_t p, uint64_t m) {
    if (m == 1) return 1;
    uint64_t v = p % m;
    if (v == 0) throw invalid_input("ord_mod: p divides m");
    uint32_t r = 1;
    uint64_t acc = v;
    while (acc != 1) {
        acc = acc * p % m;
        ++r;
        if (r > m) throw check_failed("ord_mod runaway");
    }
    return r;
}

inline bool is_power_of(uint64_t q, uint64_t p, uint32_t* exp_out = nullptr) {
    if (q < p) return false;
    uint32_t e = 0;
    uint64_t v = q;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    if (v != 1) return false;
    if (exp_out) *exp_out = e;
    return e >= 1;
}

// Structural validity of the spec parameters in characteristic p (the
// invariants of the type, independent of embeddability questions).
inline bool spec_valid(const GroupSpec& g, uint64_t p, std::string* why = nullptr) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    switch (g.family) {
        case Family::Trivial: return true;
        case Family::Cyclic: return g.a >= 2 || fail("Cyclic needs m >= 2");
        case Family::Dihedral: return g.a >= 2 || fail("Dihedral needs l >= 2");
        case Family::Borel: {
            if (g.a < 1 || g.b < 1) return fail("Borel needs n >= 1, m >= 1");
            if (g.b % p == 0) return fail("Borel needs p coprime to m");
            if (g.b > 1) {
                uint32_t r = ord_mod(p, g.b);
                if (g.a % r != 0) return fail("Borel(n,m): ord of p mod m must divide n");
            }
            return true;
        }
        case Family::PGL2:
        case Family::PSL2: {
            uint32_t e;
            if (!is_power_of(g.a, p, &e)) return fail("PGL2/PSL2: q must be a power of p");
            return true;
        }
        case Family::A4:
        case Family::S4:
        case Family::A5: return true;
    }
    return false;
}

inline BigInt spec_order(const GroupSpec& g, uint64_t p) {
    switch (g.family) {
        case Family::Trivial: return 1;
        case Family::Cyclic: return BigInt(static_cast<unsigned long>(g.a));
        case Family::Dihedral: return BigInt(2) * static_cast<unsigned long>(g.a);
        case Family::Borel:
            return BigInt(static_cast<unsigned long>(g.b)) *
                   big_pow(BigInt(static_cast<unsigned long>(p)), g.a);
        case Family::PGL2: {
            BigInt q(static_cast<unsigned long>(g.a));
            return q * q * q - q;
        }
        case Family::PSL2: {
            BigInt q(static_cast<unsigned long>(g.a));
            return (q * q * q - q) / (g.a % 2 == 0 ? 1 : 2);
        }
        case Family::A4: return 12;
        case Family::S4: return 24;
        case Family::A5: return 60;
    }
    throw invalid_input("spec_order: bad family");
}

// Canonical structural form in characteristic p: rewrites specs that are
// Borel/modular in disguise (Cyclic(p), Dihedral(p), A4 at p=2,3, ...).
// Only forms embeddable in PGL2 of char p have a canonical form; returns
// nullopt otherwise.
inline std::optional<GroupSpec> canon_at(const GroupSpec& g, uint64_t p) {
    if (!spec_valid(g, p)) return std::nullopt;
    switch (g.family) {
        case Family::Trivial: return g;
        case Family::Cyclic:
            if (g.a == p) return borel(1, 1);
            if (g.a % p == 0) return std::nullopt;  // no element of order p*m, m > 1
            return g;
        case Family::Dihedral:
            if (p == 2) {
                if (g.a == 2) return borel(2, 1);
                if (g.a % 2 == 1) return g;
                return std::nullopt;  // even l > 2 needs an element of order 4 or a tame C_2
            }
            if (g.a == p) return borel(1, 2);
            if (g.a % p == 0) return std::nullopt;
            return g;  // tame
        case Family::Borel: return g;
        case Family::PGL2:
            if (g.a == 2) return dihedral(3);
            return g;
        case Family::PSL2:
            if (p == 2) return canon_at(pgl2(g.a), p);
            return g;
        case Family::A4:
            if (p == 2) return borel(2, 3);
            if (p == 3) return psl2(3);
            return g;
        case Family::S4:
            if (p == 2) return std::nullopt;  // no element of order 4 in char 2
            if (p == 3) return pgl2(3);
            return g;
        case Family::A5:
            if (p == 2) return pgl2(4);
            if (p == 5) return psl2(5);
            return g;  // p = 3 keeps the special A5; tame for p > 5
    }
    return std::nullopt;
}

inline bool embeddable(const GroupSpec& g, uint64_t p) { return canon_at(g, p).has_value(); }

inline bool iso_eq(const GroupSpec& x, const GroupSpec& y, uint64_t p) {
    auto cx = canon_at(x, p), cy = canon_at(y, p);
    return cx && cy && *cx == *cy;
}

// Isomorphic catalog specs in characteristic p (not including the spec itself).
inline std::vector<GroupSpec> aliases(const GroupSpec& g, uint64_t p) {
    std::vector<GroupSpec> candidates = {cyclic(2),  dihedral(2), dihedral(3), dihedral(p),
                                         borel(1, 1), borel(2, 1), borel(1, 2), borel(2, 3),
                                         pgl2(2),    pgl2(3),     pgl2(4),     psl2(3),
                                         psl2(4),    psl2(5),     a4(),        s4(),
                                         a5()};
    if (g.family == Family::Cyclic) candidates.push_back(cyclic(g.a));
    std::vector<GroupSpec> out;
    for (const auto& c : candidates) {
        if (c == g) continue;
        if (!spec_valid(c, p)) continue;
        if (iso_eq(c, g, p) && spec_order(c, p) == spec_order(g, p)) {
            bool dup = false;
            for (const auto& o : out) dup = dup || o == c;
            if (!dup) out.push_back(c);
        }
    }
    return out;
}

// One branch point of the quotient P^1 -> P^1/G with its stabilizer class.
struct BranchSlot {
    std::string tag;
    GroupSpec group;
};

// The branch data of the classification: branch points of P^1 -> P^1/G and
// their stabilizer groups, with stable slot tags to which tree edges attach.
inline std::vector<BranchSlot> branch_data(const GroupSpec& g0, uint64_t p) {
    auto cg = canon_at(g0, p);
    if (!cg) throw invalid_input("branch_data: " + g0.str() + " is not embeddable in char " +
                                 std::to_string(p));
    const GroupSpec g = *cg;
    switch (g.family) {
        case Family::Trivial: return {};
        case Family::Cyclic:
            return {{"cyclic-a", g}, {"cyclic-b", g}};
        case Family::Borel:
            if (g.b == 1) return {{"p-group", g}};
            return {{"torus", cyclic(g.b)}, {"borel", g}};
        case Family::PGL2: {
            uint32_t n;
            is_power_of(g.a, p, &n);
            return {{"borel", borel(n, g.a - 1)}, {"torus-qplus1", cyclic(g.a + 1)}};
        }
        case Family::PSL2: {
            uint32_t n;
            is_power_of(g.a, p, &n);
            return {{"borel", borel(n, (g.a - 1) / 2)}, {"torus-qplus1", cyclic((g.a + 1) / 2)}};
        }
        case Family::Dihedral:
            if (p == 2) return {{"c2", cyclic(2)}, {"cyclic", cyclic(g.a)}};
            return {{"c2-a", cyclic(2)}, {"c2-b", cyclic(2)}, {"cyclic", cyclic(g.a)}};
        case Family::A4:
            return {{"c2", cyclic(2)}, {"c3-a", cyclic(3)}, {"c3-b", cyclic(3)}};
        case Family::S4:
            return {{"c2", cyclic(2)}, {"c3", cyclic(3)}, {"c4", cyclic(4)}};
        case Family::A5:
            if (p == 3) return {{"c5", cyclic(5)}, {"borel", borel(1, 2)}};
            return {{"c2", cyclic(2)}, {"c3", cyclic(3)}, {"c5", cyclic(5)}};
    }
    throw invalid_input("branch_data: bad family");
}

inline int branch_point_count(const GroupSpec& g, uint64_t p) {
    return static_cast<int>(branch_data(g, p).size());
}

// Least s with g embeddable into PGL2(F_{p^s}).
inline uint32_t minimal_field_exponent(const GroupSpec& g0, uint64_t p) {
    auto cg = canon_at(g0, p);
    if (!cg) throw invalid_input("minimal_field_exponent: " + g0.str() +
                                 " not embeddable in char " + std::to_string(p));
    const GroupSpec g = *cg;
    auto least_s_dividing = [&](uint64_t m) {
        // least s with m | p^s - 1 or m | p^s + 1
        for (uint32_t s = 1; s <= 64; ++s) {
            BigInt ps = big_pow(BigInt(static_cast<unsigned long>(p)), s);
            if ((ps - 1) % static_cast<unsigned long>(m) == 0 ||
                (ps + 1) % static_cast<unsigned long>(m) == 0)
                return s;
        }
        throw check_failed("least_s_dividing runaway");
    };
    switch (g.family) {
        case Family::Trivial: return 1;
        case Family::Cyclic: return least_s_dividing(g.a);
        case Family::Dihedral:
            return least_s_dividing(g.a);
        case Family::Borel: return static_cast<uint32_t>(g.a);
        case Family::PGL2:
        case Family::PSL2: {
            uint32_t n;
            is_power_of(g.a, p, &n);
            return n;
        }
        case Family::A4: return 1;  // canon handled p = 2, 3
        case Family::S4: return 1;
        case Family::A5: {
            if (p == 3) return 2;  // inside PSL2(F_9)
            for (uint32_t s = 1; s <= 64; ++s) {
                uint64_t ps = 1;
                for (uint32_t i = 0; i < s; ++i) ps = ps * p % 5;
                if (ps == 1 || ps == 4) return s;
            }
            throw check_failed("A5 exponent runaway");
        }
    }
    throw invalid_input("minimal_field_exponent: bad family");
}

inline Json spec_to_json(const GroupSpec& g) {
    Json j;
    j["family"] = family_name(g.family);
    switch (g.family) {
        case Family::Cyclic: j["m"] = g.a; break;
        case Family::Dihedral: j["l"] = g.a; break;
        case Family::Borel:
            j["n"] = g.a;
            j["m"] = g.b;
            break;
        case Family::PGL2:
        case Family::PSL2: j["q"] = g.a; break;
        default: break;
    }
    return j;
}

inline GroupSpec spec_from_json(const Json& j) {
    const std::string f = j.at("family").get<std::string>();
    if (f == "Trivial") return trivial_spec();
    if (f == "Cyclic") return cyclic(j.at("m").get<uint64_t>());
    if (f == "Dihedral") return dihedral(j.at("l").get<uint64_t>());
    if (f == "Borel") return borel(j.at("n").get<uint64_t>(), j.at("m").get<uint64_t>());
    if (f == "PGL2") return pgl2(j.at("q").get<uint64_t>());
    if (f == "PSL2") return psl2(j.at("q").get<uint64_t>());
    if (f == "A4") return a4();
    if (f == "S4") return s4();
    if (f == "A5") return a5();
    throw invalid_input("spec_from_json: unknown family " + f);
}

}  // namespace mumford
