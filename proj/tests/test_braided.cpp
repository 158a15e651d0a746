#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfx/braided.hpp"
#include "hopfx/errors.hpp"

using namespace hopfx;

namespace {

QTStructure qt_z2() {
    HopfData h = group_algebra(cyclic_group(2));
    return make_qt(h, trivial_r(h));
}

QTStructure qt_sweedler(long lam) {
    QTExample ex = sweedler_example(Scalar(lam, 1));
    return make_qt(ex.hopf, ex.r);
}

QTStructure qt_dz2() {
    QTExample ex = drinfeld_double_example(cyclic_group(2));
    return make_qt(ex.hopf, ex.r);
}

} // namespace

TEST_CASE("trivial R gives the commutative function algebra for every k") {
    QTStructure q = qt_z2();
    AlgebraData plain = dual_algebra(q.hopf);
    for (int k : {0, 1, 2}) {
        BraidedDual bd = build_braided_dual(q, k);
        CHECK(bd.alg.mult == plain.mult);
        CHECK(bd.alg.unit == plain.unit);
    }
}

TEST_CASE("H4 braided dual at k = 0 twists the product and stays associative") {
    QTStructure q = qt_sweedler(1);
    BraidedDual bd = build_braided_dual(q, 0); // builder asserts associativity (64 triples)
    // the twist genuinely modifies the multiplication (REA of the Sweedler
    // algebra happens to be commutative)
    CHECK(bd.alg.mult != dual_algebra(q.hopf).mult);
    CHECK_FALSE(bd.alg.associativity_violation().has_value());
}

TEST_CASE("D(S3) reflection equation algebra is non-commutative") {
    QTExample ds3 = drinfeld_double_example(symmetric_group_s3());
    QTStructure q = make_qt(ds3.hopf, ds3.r);
    BraidedDual bd = build_braided_dual(q, 0);
    bool commutative = true;
    for (Index i = 0; i < q.hopf.dim && commutative; ++i)
        for (Index j = 0; j < q.hopf.dim && commutative; ++j)
            if (bd.alg.row(i, j) != bd.alg.row(j, i)) commutative = false;
    CHECK_FALSE(commutative);
}

TEST_CASE("unit of the braided dual is the counit") {
    QTStructure q = qt_dz2();
    BraidedDual bd = build_braided_dual(q, 1);
    // counit of D(Z/2) is [g = e], i.e. indices 0 and 1 (delta_0 x {1, g})
    SparseVec eps;
    eps.e = {{0, Scalar(1, 1)}, {1, Scalar(1, 1)}};
    CHECK(bd.alg.unit == eps);
    CHECK_FALSE(bd.alg.unit_violation().has_value());
}

TEST_CASE("k-reflection identity holds on all fixtures for k = 0, 1, 2") {
    for (int which = 0; which < 4; ++which) {
        QTStructure q = which == 0   ? qt_z2()
                        : which == 1 ? qt_sweedler(0)
                        : which == 2 ? qt_sweedler(1)
                                     : qt_dz2();
        CAPTURE(which);
        for (int k : {0, 1, 2}) {
            CAPTURE(k);
            BraidedDual bd = build_braided_dual(q, k);
            CHECK(check_k_reflection(q, bd));
            CHECK(check_reflection_untwisted(q, bd));
        }
    }
}

TEST_CASE("trivial R reduces Eq. (3) to X^{0,12} = X^{0,2} X^{0,1}") {
    QTStructure q = qt_z2();
    BraidedDual bd = build_braided_dual(q, 0);
    const Index d = 2;
    AlgebraData halg = q.hopf.algebra();
    std::vector<const AlgebraData*> algs{&bd.alg, &halg, &halg};
    std::vector<Index> dims{d, d, d};
    std::vector<const SparseVec*> units{&bd.alg.unit, &halg.unit, &halg.unit};
    LegElement x = canonical_x(q);
    LegElement lhs = apply_comult_to_leg(x, 1, q.hopf.comult, d, d);
    LegElement rhs = leg_product(embed(x, {0, 2}, dims, units), embed(x, {0, 1}, dims, units), algs);
    CHECK(lhs == rhs);
}

TEST_CASE("using the k = 0 product against the k = 1 right-hand side fails") {
    QTStructure q = qt_dz2();
    BraidedDual bd0 = build_braided_dual(q, 0);
    BraidedDual mismatched = bd0;
    mismatched.k = 1; // product of ~H_0 with the k = 1 reflection identity
    CHECK(check_k_reflection(q, bd0));
    CHECK_FALSE(check_k_reflection(q, mismatched));
}

TEST_CASE("shift isomorphism by two steps via nu") {
    SUBCASE("trivial R gives the identity map") {
        QTStructure q = qt_z2();
        ShiftIso iso = shift_iso(q, 2, 2);
        CHECK(iso.map == LinMap::identity(2, 1));
    }
    SUBCASE("H4(0): ~H_2 and ~H_0 are isomorphic") {
        QTStructure q = qt_sweedler(0);
        ShiftIso iso = shift_iso(q, 2, 2);
        CHECK((iso.from_k == 2 || iso.from_k == 0));
        CHECK(rank(iso.map) == 4);
    }
    SUBCASE("H4(1) and D(Z/2) shifts verify in some direction") {
        for (int which = 0; which < 2; ++which) {
            QTStructure q = which == 0 ? qt_sweedler(1) : qt_dz2();
            ShiftIso iso = shift_iso(q, 1, 2); // ~H_1 vs ~H_{-1}
            CHECK(std::abs(iso.from_k - iso.to_k) == 2);
        }
    }
}

TEST_CASE("shift isomorphism by one step via the ribbon") {
    SUBCASE("requires a ribbon") {
        QTStructure q = qt_dz2();
        CHECK_THROWS_AS(shift_iso(q, 1, 1), Error);
    }
    SUBCASE("D(Z/2) with ribbon: ~H_1 and ~H_0 are isomorphic on all pairs") {
        QTStructure q = qt_dz2();
        q.ribbon = find_ribbon(q);
        REQUIRE(q.ribbon.has_value());
        ShiftIso iso = shift_iso(q, 1, 1);
        CHECK(std::abs(iso.from_k - iso.to_k) == 1);
        // multiplicativity re-checked here on all pairs as an oracle
        BraidedDual from = build_braided_dual(q, iso.from_k);
        BraidedDual to = build_braided_dual(q, iso.to_k);
        for (Index i = 0; i < 4; ++i)
            for (Index j = 0; j < 4; ++j)
                CHECK(iso.map.apply(from.alg.row(i, j)) ==
                      to.alg.mul(iso.map.cols[i], iso.map.cols[j]));
    }
}

TEST_CASE("factorization map and rank") {
    SUBCASE("trivial R has rank 1") {
        QTStructure q = qt_z2();
        CHECK(factorization_rank(q) == 1);
        CHECK_FALSE(is_factorizable(q));
    }
    SUBCASE("triangular Sweedler has rank 1") {
        QTStructure q = qt_sweedler(0);
        CHECK(factorization_rank(q) == 1);
    }
    SUBCASE("D(Z/2) is factorizable with rank 4") {
        QTStructure q = qt_dz2();
        CHECK(factorization_rank(q) == 4);
        CHECK(is_factorizable(q));
    }
}

TEST_CASE("phi is an algebra map on the reflection equation algebra") {
    for (int which = 0; which < 2; ++which) {
        QTStructure q = which == 0 ? qt_sweedler(1) : qt_dz2();
        BraidedDual bd = build_braided_dual(q, 0);
        AlgebraData halg = q.hopf.algebra();
        LinMap phi = factorization_map(q);
        for (Index i = 0; i < q.hopf.dim; ++i)
            for (Index j = 0; j < q.hopf.dim; ++j)
                CHECK(phi.apply(bd.alg.row(i, j)) == halg.mul(phi.cols[i], phi.cols[j]));
        CHECK(phi.apply(bd.alg.unit) == halg.unit);
    }
}

TEST_CASE("image of phi is closed under multiplication") {
    QTStructure q = qt_sweedler(1);
    LinMap phi = factorization_map(q);
    AlgebraData halg = q.hopf.algebra();
    Rref basis = rref(phi.cols, q.hopf.dim);
    auto in_image = [&](const SparseVec& v) {
        SparseVec r = v;
        for (size_t k = 0; k < basis.rows.size(); ++k) {
            auto c = vec_coeff(r, basis.pivot_cols[k]);
            if (c) r = vec_sub(r, vec_scale(basis.rows[k], *c));
        }
        return r.is_zero();
    };
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) CHECK(in_image(halg.mul(phi.cols[i], phi.cols[j])));
}
