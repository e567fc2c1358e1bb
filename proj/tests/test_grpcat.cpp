#include <catch2/catch_amalgamated.hpp>

#include "mumford/concrete_build.hpp"
#include "mumford/groupspec.hpp"

using namespace mumford;

TEST_CASE("spec orders") {
    CHECK(spec_order(pgl2(5), 5) == 120);
    CHECK(spec_order(borel(2, 2), 3) == 18);
    CHECK(spec_order(a5(), 3) == 60);
    CHECK(spec_order(psl2(9), 3) == 360);
    CHECK(spec_order(dihedral(7), 3) == 14);
    CHECK(spec_order(borel(3, 1), 2) == 8);
}

TEST_CASE("spec normalization and validity") {
    CHECK(borel(0, 6) == cyclic(6));
    CHECK(cyclic(1) == trivial_spec());
    CHECK(spec_valid(borel(2, 4), 3));        // ord_3(4) = 2 divides 2
    CHECK_FALSE(spec_valid(borel(1, 4), 3));  // ord_3(4) = 2 does not divide 1
    CHECK_FALSE(spec_valid(borel(1, 2), 2));  // p | m
    CHECK(spec_valid(pgl2(8), 2));
    CHECK_FALSE(spec_valid(pgl2(8), 3));
}

TEST_CASE("branch data per the classification") {
    auto tags = [](const std::vector<BranchSlot>& v) {
        std::vector<GroupSpec> out;
        for (const auto& s : v) out.push_back(s.group);
        return out;
    };
    // PGL2(4) at p=2: B(2,3) and C_5
    auto b = tags(branch_data(pgl2(4), 2));
    REQUIRE(b.size() == 2);
    CHECK(b[0] == borel(2, 3));
    CHECK(b[1] == cyclic(5));
    // A5 at p=3: C_5 and B(1,2)
    b = tags(branch_data(a5(), 3));
    REQUIRE(b.size() == 2);
    CHECK(b[0] == cyclic(5));
    CHECK(b[1] == borel(1, 2));
    // Dihedral(7) at p=3: C_2, C_2, C_7
    b = tags(branch_data(dihedral(7), 3));
    REQUIRE(b.size() == 3);
    CHECK(b[0] == cyclic(2));
    CHECK(b[1] == cyclic(2));
    CHECK(b[2] == cyclic(7));
    // counts are 1, 2 or 3 for every embeddable catalog spec
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        std::vector<GroupSpec> all = {cyclic(2),   cyclic(5),    cyclic(p),     dihedral(2),
                                      dihedral(5), borel(2, 1),  pgl2(p),       psl2(p * p),
                                      a4(),        s4(),         a5()};
        for (const auto& g : all) {
            if (!spec_valid(g, p) || !embeddable(g, p)) continue;
            auto n = branch_point_count(g, p);
            CHECK((n >= 1 && n <= 3));
        }
    }
}

TEST_CASE("aliases are reported, equality stays structural") {
    auto al = aliases(dihedral(3), 2);
    bool has_pgl2 = false;
    for (const auto& a : al) has_pgl2 = has_pgl2 || a == pgl2(2);
    CHECK(has_pgl2);
    CHECK(dihedral(3) != pgl2(2));
    CHECK(iso_eq(a4(), psl2(3), 3));
    CHECK(iso_eq(s4(), pgl2(3), 3));
    CHECK(iso_eq(a5(), pgl2(4), 2));
    CHECK(iso_eq(a5(), psl2(5), 5));
    CHECK_FALSE(iso_eq(a5(), psl2(9), 3));
}

TEST_CASE("minimal field exponents") {
    CHECK(minimal_field_exponent(borel(2, 4), 3) == 2);
    CHECK(minimal_field_exponent(dihedral(5), 2) == 2);  // 5 | 2^2 + 1
    CHECK(minimal_field_exponent(cyclic(6), 5) == 1);    // 6 | 5 + 1
    CHECK(minimal_field_exponent(pgl2(9), 3) == 2);
    CHECK(minimal_field_exponent(a5(), 3) == 2);
    CHECK(minimal_field_exponent(a5(), 7) == 2);
    CHECK(minimal_field_exponent(a5(), 11) == 1);
    CHECK(minimal_field_exponent(s4(), 5) == 1);
    CHECK(minimal_field_exponent(dihedral(2), 2) == 2);  // Klein group needs F_4
    CHECK_THROWS_AS(minimal_field_exponent(s4(), 2), invalid_input);
    CHECK_THROWS_AS(minimal_field_exponent(borel(1, 4), 3), invalid_input);
}

TEST_CASE("concrete dihedral over F_9") {
    auto g = concrete_group(dihedral(4), field_make(3, 2));
    CHECK(g.order() == 8);
    // relations: swap * rot * swap = rot^{-1}
    auto r = g.named("rot"), s = g.named("swap");
    CHECK(g.rep()->mul(g.rep()->mul(s, r), s) == g.rep()->inv(r));
    CHECK(g.rep()->elem_order(r) == 4);
    CHECK(g.rep()->elem_order(s) == 2);
}

TEST_CASE("concrete PGL2(3) has 24 elements") {
    auto g = concrete_group(pgl2(3), field_make(3, 1));
    CHECK(g.order() == 24);
}

TEST_CASE("concrete Borel(1,2) over F_3") {
    auto g = concrete_group(borel(1, 2), field_make(3, 1));
    CHECK(g.order() == 6);
    // every element is (+-1, b; 0, 1)
    auto rep = std::dynamic_pointer_cast<const MatRep>(g.rep());
    REQUIRE(rep);
    for (const auto& e : g.elements()) {
        auto m = rep->unpack(e);
        CHECK(m.e[2] == 0);
    }
}

TEST_CASE("concrete orders match spec orders at desk scale") {
    struct Row {
        GroupSpec g;
        uint64_t p;
    };
    std::vector<Row> rows = {{pgl2(4), 2},     {psl2(5), 5},     {psl2(9), 3},    {a5(), 3},
                             {a4(), 5},        {s4(), 7},        {a5(), 7},       {borel(2, 3), 2},
                             {dihedral(6), 5}, {dihedral(5), 2}, {cyclic(10), 3}, {borel(2, 2), 3}};
    for (const auto& r : rows) {
        auto g = concrete_group_minimal(r.g, r.p);
        CHECK(BigInt(static_cast<unsigned long>(g.order())) == spec_order(r.g, r.p));
    }
}

TEST_CASE("branch subgroups realize inside concrete PGL2(q)") {
    for (auto [p, n] : std::vector<std::pair<uint64_t, uint32_t>>{{2, 2}, {3, 1}, {5, 1}}) {
        uint64_t q = 1;
        for (uint32_t i = 0; i < n; ++i) q *= p;
        auto g = concrete_group(pgl2(q), field_make(p, n));
        // Borel branch subgroup has order (q-1) q
        std::vector<GElem> bg;
        if (g.has_named("zeta")) bg.push_back(g.named("zeta"));
        for (uint32_t i = 0; i < n; ++i) bg.push_back(g.named("u" + std::to_string(i)));
        auto borel_sub = g.generated_subgroup(bg);
        CHECK(borel_sub.order() == (q - 1) * q);
        // an element of order q+1 exists
        CHECK(g.rep()->elem_order(g.named("torus_q1")) == q + 1);
        // coset count of the Borel subgroup
        auto cosets = g.left_cosets(borel_sub.elements());
        CHECK(cosets.size() == q + 1);
    }
}

TEST_CASE("cosets of B(1,4) image in PGL2(F_5)") {
    auto g = concrete_group(pgl2(5), field_make(5, 1));
    std::vector<GElem> bg = {g.named("zeta"), g.named("u0")};
    auto sub = g.generated_subgroup(bg);
    CHECK(sub.order() == 20);
    CHECK(g.left_cosets(sub.elements()).size() == 6);
}

TEST_CASE("generated subgroup of identity is trivial") {
    auto g = concrete_group(pgl2(3), field_make(3, 1));
    auto sub = g.generated_subgroup({g.rep()->id()});
    CHECK(sub.order() == 1);
}

TEST_CASE("hom extension detects non-homomorphisms with a witness") {
    auto g = concrete_group(cyclic(4), field_make(5, 1));
    auto target = concrete_group(cyclic(2), field_make(5, 1));
    // sending a generator of C_4 to a generator of C_2 IS a hom
    std::vector<GElem> images;
    CHECK(g.extend_hom(*target.rep(), {target.named("gen")}, images));
    CHECK_FALSE(ConcreteGroup::is_injective(images));
    // C_3 -> C_2 nontrivially is not a hom
    auto g3 = concrete_group(cyclic(3), field_make(7, 1));
    std::vector<GElem> img2;
    CHECK_FALSE(g3.extend_hom(*target.rep(), {target.named("gen")}, img2));
}
