#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hopfx/errors.hpp"
#include "hopfx/hopf.hpp"
#include "hopfx/tensor.hpp"

using namespace hopfx;

namespace {

// independent dense oracle for leg_product: expand every index pair through
// the per-leg multiplication tensors with plain nested loops
LegElement naive_leg_product(const LegElement& x, const LegElement& y,
                             const std::vector<const AlgebraData*>& algs) {
    LegElement out;
    out.dims = x.dims;
    for (const auto& [kx, cx] : x.ent)
        for (const auto& [ky, cy] : y.ent) {
            std::vector<Index> ix = unflatten(kx, x.dims);
            std::vector<Index> iy = unflatten(ky, y.dims);
            // accumulate the outer product of the per-leg rows, one leg at a time
            std::vector<std::pair<std::vector<Index>, Scalar>> partial{{{}, cx * cy}};
            for (size_t l = 0; l < algs.size(); ++l) {
                std::vector<std::pair<std::vector<Index>, Scalar>> next;
                for (const auto& [prefix, c] : partial)
                    for (const auto& [o, oc] : algs[l]->row(ix[l], iy[l]).e) {
                        auto p = prefix;
                        p.push_back(o);
                        next.emplace_back(std::move(p), c * oc);
                    }
                partial = std::move(next);
            }
            for (const auto& [idx, c] : partial) out.add(idx, c);
        }
    return out;
}

LegElement random_element(std::mt19937_64& rng, const std::vector<Index>& dims,
                          unsigned conductor, int terms) {
    LegElement x;
    x.dims = dims;
    std::uniform_int_distribution<int> num(-4, 4);
    for (int t = 0; t < terms; ++t) {
        std::vector<Index> idx(dims.size());
        for (size_t l = 0; l < dims.size(); ++l) idx[l] = static_cast<Index>(rng() % dims[l]);
        x.add(idx, Scalar(num(rng), 1, conductor));
    }
    return x;
}

} // namespace

TEST_CASE("embed places trivial R as the unit of the triple product") {
    HopfData z2 = group_algebra(cyclic_group(2));
    AlgebraData alg = z2.algebra();
    LegElement r = trivial_r(z2);
    std::vector<const SparseVec*> units{&alg.unit, &alg.unit, &alg.unit};
    LegElement embedded = embed(r, {0, 1}, {2, 2, 2}, units);
    LegElement expected = unit_leg_element({2, 2, 2}, units, 1);
    CHECK(embedded == expected);
}

TEST_CASE("embed with swapped target legs equals the leg swap") {
    QTExample h4 = sweedler_example(Scalar(1, 1));
    AlgebraData alg = h4.hopf.algebra();
    std::vector<const SparseVec*> units{&alg.unit, &alg.unit, &alg.unit};
    LegElement a = embed(h4.r, {2, 1}, {4, 4, 4}, units);
    LegElement b = permute_legs(embed(h4.r, {1, 2}, {4, 4, 4}, units), {0, 2, 1});
    CHECK(a == b);
}

TEST_CASE("embedding the canonical element matches the direct construction") {
    // X = sum e^i (x) e_i on legs (0,2) of (dual, H, H) for the Sweedler algebra
    QTExample h4 = sweedler_example(Scalar(1, 1));
    AlgebraData alg = h4.hopf.algebra();
    AlgebraData dual = dual_algebra(h4.hopf);
    LegElement x;
    x.dims = {4, 4};
    for (Index i = 0; i < 4; ++i) x.add({i, i}, Scalar::one(1));
    std::vector<const SparseVec*> units{&dual.unit, &alg.unit, &alg.unit};
    LegElement embedded = embed(x, {0, 2}, {4, 4, 4}, units);

    LegElement expected;
    expected.dims = {4, 4, 4};
    for (Index i = 0; i < 4; ++i)
        for (const auto& [j, c] : alg.unit.e) expected.add({i, j, i}, c);
    CHECK(embedded == expected);
}

TEST_CASE("leg_product against the dense oracle on random elements") {
    QTExample h4 = sweedler_example(Scalar(1, 1));
    AlgebraData a1 = h4.hopf.algebra();
    AlgebraData a2 = group_algebra(cyclic_group(3)).algebra();
    std::vector<const AlgebraData*> algs{&a1, &a2};
    std::mt19937_64 rng(777);
    for (int t = 0; t < 20; ++t) {
        LegElement x = random_element(rng, {4, 3}, 1, 5);
        LegElement y = random_element(rng, {4, 3}, 1, 5);
        CHECK(leg_product(x, y, algs) == naive_leg_product(x, y, algs));
    }
}

TEST_CASE("unit element is neutral for leg_product") {
    QTExample h4 = sweedler_example(Scalar(1, 1));
    AlgebraData alg = h4.hopf.algebra();
    std::vector<const AlgebraData*> algs{&alg, &alg};
    std::vector<const SparseVec*> units{&alg.unit, &alg.unit};
    LegElement unit = unit_leg_element({4, 4}, units, 1);
    std::mt19937_64 rng(13);
    LegElement y = random_element(rng, {4, 4}, 1, 6);
    CHECK(leg_product(unit, y, algs) == y);
    CHECK(leg_product(y, unit, algs) == y);
}

TEST_CASE("R times its solved inverse is the unit") {
    QTExample h4 = sweedler_example(Scalar(1, 1));
    AlgebraData alg = h4.hopf.algebra();
    std::vector<const AlgebraData*> algs{&alg, &alg};
    LegElement rinv = invert_in_legs(algs, h4.r);
    std::vector<const SparseVec*> units{&alg.unit, &alg.unit};
    CHECK(leg_product(h4.r, rinv, algs) == unit_leg_element({4, 4}, units, 1));
    CHECK(leg_product(rinv, h4.r, algs) == unit_leg_element({4, 4}, units, 1));
}

TEST_CASE("leg products over associative algebras associate") {
    AlgebraData a1 = group_algebra(cyclic_group(2)).algebra();
    AlgebraData a2 = group_algebra(symmetric_group_s3()).algebra();
    std::vector<const AlgebraData*> algs{&a1, &a2};
    std::mt19937_64 rng(99);
    for (int t = 0; t < 10; ++t) {
        LegElement x = random_element(rng, {2, 6}, 1, 4);
        LegElement y = random_element(rng, {2, 6}, 1, 4);
        LegElement z = random_element(rng, {2, 6}, 1, 4);
        CHECK(leg_product(leg_product(x, y, algs), z, algs) ==
              leg_product(x, leg_product(y, z, algs), algs));
    }
}

TEST_CASE("disjoint-leg embeddings commute") {
    QTExample h4 = sweedler_example(Scalar(1, 1));
    AlgebraData alg = h4.hopf.algebra();
    std::vector<const AlgebraData*> algs{&alg, &alg};
    std::vector<const SparseVec*> units{&alg.unit, &alg.unit};
    std::mt19937_64 rng(4242);
    for (int t = 0; t < 12; ++t) {
        LegElement x1 = random_element(rng, {4}, 1, 3);
        LegElement y1 = random_element(rng, {4}, 1, 3);
        LegElement a = embed(x1, {0}, {4, 4}, units);
        LegElement b = embed(y1, {1}, {4, 4}, units);
        CHECK(leg_product(a, b, algs) == leg_product(b, a, algs));
    }
}

TEST_CASE("embed is multiplicative for same-leg placements") {
    QTExample h4 = sweedler_example(Scalar(1, 1));
    AlgebraData alg = h4.hopf.algebra();
    std::vector<const AlgebraData*> algs3{&alg, &alg, &alg};
    std::vector<const AlgebraData*> algs2{&alg, &alg};
    std::vector<const SparseVec*> units{&alg.unit, &alg.unit, &alg.unit};
    std::mt19937_64 rng(31337);
    for (int t = 0; t < 8; ++t) {
        LegElement x = random_element(rng, {4, 4}, 1, 4);
        LegElement y = random_element(rng, {4, 4}, 1, 4);
        LegElement ex = embed(x, {2, 0}, {4, 4, 4}, units);
        LegElement ey = embed(y, {2, 0}, {4, 4, 4}, units);
        CHECK(leg_product(ex, ey, algs3) ==
              embed(leg_product(x, y, algs2), {2, 0}, {4, 4, 4}, units));
    }
}

TEST_CASE("solve_in_algebra") {
    HopfData z2 = group_algebra(cyclic_group(2));
    AlgebraData alg = z2.algebra();
    SUBCASE("unit inverts to unit") { CHECK(solve_in_algebra(alg, alg.unit) == alg.unit); }
    SUBCASE("g inverts to g") {
        SparseVec g = SparseVec::basis(1, 1u);
        CHECK(solve_in_algebra(alg, g) == g);
    }
    SUBCASE("nilpotent element is not invertible") {
        QTExample h4 = sweedler_example(Scalar(1, 1));
        AlgebraData a4 = h4.hopf.algebra();
        CHECK_THROWS_AS(solve_in_algebra(a4, SparseVec::basis(2, 1u)), Error);
    }
}

TEST_CASE("linmap_of_left_mult") {
    SUBCASE("unit gives the identity matrix") {
        AlgebraData alg = group_algebra(symmetric_group_s3()).algebra();
        CHECK(linmap_of_left_mult(alg, alg.unit) == LinMap::identity(6, 1));
    }
    SUBCASE("left multiplication by a nilpotent squares to zero") {
        QTExample h4 = sweedler_example(Scalar(1, 1));
        AlgebraData alg = h4.hopf.algebra();
        LinMap lx = linmap_of_left_mult(alg, SparseVec::basis(2, 1u));
        CHECK(compose(lx, lx) == LinMap::zero(4, 4));
    }
    SUBCASE("rank of the projector (1+g)/2 is 1") {
        AlgebraData alg = group_algebra(cyclic_group(2)).algebra();
        VecBuilder v;
        v.add(0, Scalar(1, 2));
        v.add(1, Scalar(1, 2));
        LinMap p = linmap_of_left_mult(alg, v.freeze());
        CHECK(rank(p) == 1);
        CHECK(compose(p, p) == p); // idempotent
    }
}

TEST_CASE("exact linear algebra") {
    SUBCASE("invert a known 2x2 matrix") {
        LinMap m;
        m.src = m.dst = 2;
        m.cols.resize(2);
        // [[1, 2], [3, 4]] by columns
        m.cols[0].e = {{0, Scalar(1, 1)}, {1, Scalar(3, 1)}};
        m.cols[1].e = {{0, Scalar(2, 1)}, {1, Scalar(4, 1)}};
        LinMap inv = invert(m);
        CHECK(compose(m, inv) == LinMap::identity(2, 1));
        CHECK(compose(inv, m) == LinMap::identity(2, 1));
        auto c = vec_coeff(inv.cols[0], 0);
        REQUIRE(c.has_value());
        CHECK(*c == Scalar(-2, 1));
    }
    SUBCASE("singular matrix throws") {
        LinMap m;
        m.src = m.dst = 2;
        m.cols.resize(2);
        m.cols[0].e = {{0, Scalar(1, 1)}, {1, Scalar(2, 1)}};
        m.cols[1].e = {{0, Scalar(2, 1)}, {1, Scalar(4, 1)}};
        CHECK_THROWS_AS(invert(m), Error);
        CHECK(rank(m) == 1);
    }
    SUBCASE("nullspace of a rank-1 system") {
        std::vector<SparseVec> rows(1);
        rows[0].e = {{0, Scalar(1, 1)}, {1, Scalar(1, 1)}, {2, Scalar(1, 1)}};
        auto basis = nullspace(rows, 3, 1);
        REQUIRE(basis.size() == 2);
        for (const auto& v : basis) {
            Scalar s = Scalar::zero(1);
            for (const auto& [i, c] : v.e) s += c;
            CHECK(s.is_zero());
        }
    }
    SUBCASE("solve on an invertible system round-trips") {
        std::mt19937_64 rng(5150);
        AlgebraData alg = group_algebra(symmetric_group_s3()).algebra();
        LegElement x = random_element(rng, {6}, 1, 6);
        x.add({0}, Scalar(7, 1)); // push away from the singular locus
        LinMap m = linmap_of_left_mult(alg, x.to_vec());
        SparseVec b = SparseVec::basis(3, 1u);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(m.apply(*sol) == b);
    }
}

TEST_CASE("group and split legs preserve flat keys") {
    std::mt19937_64 rng(8);
    LegElement x = random_element(rng, {2, 3, 4}, 1, 10);
    LegElement g = group_legs(x, 1, 2);
    CHECK(g.dims == std::vector<Index>{2, 12});
    CHECK(split_leg(g, 1, {3, 4}) == x);
    LegElement all = group_legs(x, 0, 3);
    CHECK(all.dims == std::vector<Index>{24});
    CHECK(leg_element_to_vec(all) == leg_element_to_vec(x));
}

TEST_CASE("errors on shape mismatches") {
    std::mt19937_64 rng(3);
    LegElement x = random_element(rng, {2, 2}, 1, 3);
    LegElement y = random_element(rng, {2, 3}, 1, 3);
    AlgebraData alg = group_algebra(cyclic_group(2)).algebra();
    std::vector<const AlgebraData*> algs{&alg, &alg};
    CHECK_THROWS_AS(leg_product(x, y, algs), Error);
    std::vector<const SparseVec*> units{&alg.unit, &alg.unit};
    CHECK_THROWS_AS(embed(x, {0}, {2, 2}, units), Error);
    CHECK_THROWS_AS(embed(x, {0, 5}, {2, 2}, units), Error);
}
