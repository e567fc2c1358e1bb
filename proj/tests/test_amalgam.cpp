#include <catch2/catch_amalgamated.hpp>

#include "mumford/realize.hpp"
#include "mumford/tree.hpp"

using namespace mumford;

namespace {

TreeOfGroups pgl_dihedral_tree(uint64_t p, uint64_t q) {
    return two_vertex_tree(p, pgl2(q), "torus-qplus1", cyclic(q + 1), dihedral(q + 1), "cyclic");
}

}  // namespace

TEST_CASE("validate accepts catalog shapes and rejects junk") {
    TreeOfGroups single;
    single.p = 2;
    single.vertices = {{"v", pgl2(4), false}};
    CHECK(validate(single).empty());

    // C_4 is not a branch group of A5 (tame)
    auto bad = two_vertex_tree(7, a5(), "c2", cyclic(4), s4(), "c4");
    CHECK_FALSE(validate(bad).empty());

    // a declared cycle is not a tree
    TreeOfGroups cyc;
    cyc.p = 7;
    cyc.vertices = {{"a", dihedral(3), false}, {"b", dihedral(3), false}};
    cyc.edges = {{"a", "b", cyclic(2), "c2-a", "c2-a"}, {"a", "b", cyclic(3), "cyclic", "cyclic"}};
    CHECK_FALSE(validate(cyc).empty());

    // slot typing: edge group must match the slot group
    auto mismatch = two_vertex_tree(5, pgl2(5), "torus-qplus1", cyclic(3), dihedral(3), "cyclic");
    CHECK_FALSE(validate(mismatch).empty());
}

TEST_CASE("mu closed forms") {
    // D_l *_{C_l} D_l has mu = 0 for every tame l
    for (uint64_t l : {3ull, 4ull, 7ull}) {
        auto t = two_vertex_tree(5, dihedral(l), "cyclic", cyclic(l), dihedral(l), "cyclic");
        CHECK(mu(t) == Rational(0));
    }
    // free product C_2 * C_3
    auto fp = free_product_tree(5, cyclic(2), cyclic(3));
    CHECK(mu(fp) == Rational(1, 6));
    // PGL2(F_5) *_{C_6} D_6
    CHECK(mu(pgl_dihedral_tree(5, 5)) == Rational(3, 40));
}

TEST_CASE("branch counts and the two-formula cross-check") {
    auto t5 = pgl_dihedral_tree(5, 5);
    auto b5 = branch_count(t5);
    CHECK(b5.br == 3);
    CHECK(b5.max3 == 1);
    CHECK(b5.maxp == 0);
    CHECK(b5.formula2_checked);

    auto t4 = pgl_dihedral_tree(2, 4);
    auto b4 = branch_count(t4);
    CHECK(b4.br == 2);
    CHECK(b4.formula2_checked);

    auto fp = free_product_tree(5, cyclic(2), cyclic(3));
    CHECK(branch_count(fp).br == 4);

    // the p-group middle vertex contributes maxp
    TreeOfGroups star;
    star.p = 2;
    star.vertices = {{"d1", dihedral(3), false},
                     {"m", borel(2, 1), true},
                     {"d2", dihedral(5), false}};
    star.edges = {{"d1", "m", cyclic(2), "c2", "p-group"},
                  {"d2", "m", cyclic(2), "c2", "p-group"}};
    auto bs = branch_count(star);
    CHECK(bs.br == 3);
    CHECK(bs.maxp == 1);
    CHECK(bs.max3 == 0);
}

TEST_CASE("ramification leftover slots") {
    // D_{q-1} *_{C_{q-1}} B(n, q-1), p > 2: branch groups C_2, C_2, B(n, q-1)
    auto t = two_vertex_tree(3, dihedral(8), "cyclic", cyclic(8), borel(2, 8), "torus");
    auto r = ramification(t);
    REQUIRE(r.branch_groups.size() == 3);
    CHECK(r.branch_groups[0] == cyclic(2));
    CHECK(r.branch_groups[1] == cyclic(2));
    CHECK(r.branch_groups[2] == borel(2, 8));
    CHECK(r.indices[2] == 72);

    // PGL2(q) *_{B(n,q-1)} B(2n, q-1): branch groups C_{q+1} and B(2n, q-1)
    auto t2 = two_vertex_tree(3, pgl2(3), "borel", borel(1, 2), borel(2, 2), "borel");
    auto r2 = ramification(t2);
    REQUIRE(r2.branch_groups.size() == 2);
    CHECK(r2.branch_groups[0] == cyclic(4));
    CHECK(r2.branch_groups[1] == borel(2, 2));
    CHECK(r2.indices[0] == 4);
    CHECK(r2.indices[1] == 18);
}

TEST_CASE("determinant kernel index") {
    // all-PSL tree: trivial determinant
    auto t = two_vertex_tree(5, psl2(5), "borel", borel(1, 2), borel(2, 2), "borel");
    CHECK(det_kernel_index(t, 5) == 1);
    // B(n, q-1) *_{C_{q-1}} B(n, q-1) with q odd: mu_{q-1} is not inside the squares
    auto t2 = two_vertex_tree(5, borel(1, 4), "torus", cyclic(4), borel(1, 4), "torus");
    CHECK(det_kernel_index(t2, 5) == 2);
    // a PGL2 vertex always surjects
    CHECK(det_kernel_index(pgl_dihedral_tree(5, 5), 5) == 2);
    CHECK_THROWS_AS(det_kernel_index(pgl_dihedral_tree(2, 4), 4), invalid_input);
}

TEST_CASE("realizable_simple per the two-vertex classification") {
    CHECK(realizable_simple(pgl2(4), cyclic(5), dihedral(5), 2));
    CHECK(realizable_simple(dihedral(3), cyclic(2), dihedral(5), 2));
    CHECK_FALSE(realizable_simple(a5(), cyclic(4), s4(), 7));
    CHECK(realizable_simple(psl2(3), cyclic(3), psl2(3), 3));
    CHECK(realizable_simple(borel(2, 2), borel(1, 2), pgl2(3), 3));        // B(2n,q-1)*_{B}PGL2
    CHECK_FALSE(realizable_simple(borel(1, 2), borel(1, 2), pgl2(3), 3));  // l = 1 degenerate
    CHECK(realizable_simple(borel(3, 1), cyclic(2), dihedral(7), 2));      // (b)4
    CHECK(realizable_simple(borel(2, 2), dihedral(3), a5(), 3));           // (b)5
    CHECK_FALSE(realizable_simple(borel(2, 2), borel(1, 2), borel(2, 2), 3));
    CHECK(realizable_simple(s4(), cyclic(3), a4(), 7));
    CHECK(realizable_simple(dihedral(7), cyclic(7), dihedral(7), 5));
    CHECK_FALSE(realizable_simple(dihedral(7), cyclic(7), dihedral(14), 5));
}

TEST_CASE("realizable_star per the single-subgroup classification") {
    CHECK(realizable_star(cyclic(2), {a4(), dihedral(3), s4()}, 7));
    CHECK(realizable_star(cyclic(3), {a4(), a4(), a4()}, 5));
    CHECK_FALSE(realizable_star(cyclic(2), {a4(), a4(), a4()}, 7));
    CHECK(realizable_star(cyclic(2), {dihedral(3), dihedral(5), dihedral(7)}, 2));
    CHECK(realizable_star(cyclic(2), {borel(2, 1), dihedral(5), dihedral(7)}, 2));
    CHECK(realizable_star(cyclic(3), {borel(2, 1), a4(), a4()}, 3));
    CHECK_FALSE(realizable_star(cyclic(3), {borel(1, 1), a4(), a4()}, 3));
    CHECK_THROWS_AS(realizable_star(cyclic(2), {a4(), s4()}, 7), invalid_input);
}

TEST_CASE("edgewise realizability screen") {
    CHECK(realizable_edgewise(pgl_dihedral_tree(5, 5)) == Realizability::Yes);
    // tame D_4 *_{C_2} D_8 is a four-branch-point Mumford group
    TreeOfGroups chain2;
    chain2.p = 7;
    chain2.vertices = {{"a", dihedral(4), false}, {"b", dihedral(8), false}};
    chain2.edges = {{"a", "b", cyclic(2), "c2-a", "c2-a"}};
    CHECK(realizable_edgewise(chain2) == Realizability::Yes);
    // mixed modular orders over a shared cyclic must match the short list
    TreeOfGroups chain3;
    chain3.p = 3;
    chain3.vertices = {{"a", a5(), false}, {"b", dihedral(10), false}};
    chain3.edges = {{"a", "b", cyclic(5), "c5", "cyclic"}};
    CHECK_FALSE(validate(chain3).empty());  // C_5 is not a branch slot group of D_10
    TreeOfGroups chain4;
    chain4.p = 2;
    chain4.vertices = {{"a", pgl2(4), false}, {"b", dihedral(15), false}};
    chain4.edges = {{"a", "b", cyclic(5), "torus-qplus1", "cyclic"}};
    CHECK_FALSE(validate(chain4).empty());  // D_15 cyclic slot is C_15, not C_5
}

TEST_CASE("tree json round trip is bit-exact") {
    auto t = pgl_dihedral_tree(5, 5);
    auto j = tree_to_json(t);
    auto t2 = tree_from_json(j);
    CHECK(tree_to_json(t2).dump() == j.dump());
    CHECK(tree_canonical_form(t) == tree_canonical_form(t2));
    // canonical form ignores vertex naming and orientation
    TreeOfGroups flipped;
    flipped.p = 5;
    flipped.vertices = {{"x", dihedral(6), false}, {"y", pgl2(5), false}};
    flipped.edges = {{"x", "y", cyclic(6), "cyclic", "torus-qplus1"}};
    CHECK(tree_canonical_form(flipped) == tree_canonical_form(t));
}
