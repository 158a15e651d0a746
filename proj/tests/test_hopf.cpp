#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hopfx/errors.hpp"
#include "hopfx/hopf.hpp"

using namespace hopfx;

TEST_CASE("group algebra fixtures pass every Hopf axiom") {
    for (auto* table : {"z2", "z4", "s3"}) {
        GroupTable g = std::string(table) == "s3"
                           ? symmetric_group_s3()
                           : cyclic_group(std::string(table) == "z2" ? 2 : 4);
        unsigned conductor = std::string(table) == "z4" ? 4 : 1;
        HopfData h = group_algebra(g, conductor);
        CAPTURE(table);
        Report rep = validate_hopf(h);
        for (const auto& c : rep.checks) {
            CAPTURE(c.name);
            CHECK(c.holds);
        }
        CHECK(h.dim == g.n);
        // counit is all-ones on the group basis
        for (const auto& eps : h.counit) CHECK(eps.is_one());
    }
}

TEST_CASE("group algebra antipode permutes basis elements to inverses") {
    HopfData h = group_algebra(cyclic_group(4));
    // e_1 = g, S(g) = g^3
    CHECK(h.antipode.cols[1] == SparseVec::basis(3, 1u));
    CHECK(h.antipode.cols[2] == SparseVec::basis(2, 1u));
    CHECK(h.antipode_inv == h.antipode); // inverse map of an involution...
}

TEST_CASE("Sweedler algebra validates; the validator is the oracle for the constants") {
    for (long lam : {0L, 1L, 2L}) {
        QTExample ex = sweedler_example(Scalar(lam, 1));
        CAPTURE(lam);
        Report rep = validate_hopf(ex.hopf);
        for (const auto& c : rep.checks) {
            CAPTURE(c.name);
            CHECK(c.holds);
        }
        CHECK(ex.hopf.counit[2].is_zero()); // eps(x) = 0
        CHECK(ex.hopf.counit[1].is_one());  // eps(g) = 1
    }
}

TEST_CASE("corrupting the antipode is caught with the right witness") {
    QTExample ex = sweedler_example(Scalar(1, 1));
    HopfData bad = ex.hopf;
    bad.antipode.cols[2] = SparseVec::basis(2, 1u); // S(x) := x
    bad = finalize_hopf(bad.dim, bad.conductor, bad.mult, bad.unit, bad.comult, bad.counit,
                        bad.antipode);
    Report rep = validate_hopf(bad);
    CHECK_FALSE(rep.all_pass());
    const CheckResult* axiom = rep.find("antipode_axiom");
    REQUIRE(axiom != nullptr);
    CHECK_FALSE(axiom->holds);
    REQUIRE(axiom->witness.has_value());
    CHECK((*axiom->witness)[0] == 2); // x is the first failing basis element
    // the bialgebra layer is untouched; only the antipode entries fail
    // (S(x) = x collides with S(gx) = x, so invertibility drops as well)
    for (const auto& c : rep.checks)
        if (c.name != "antipode_axiom" && c.name != "antipode_invertible") CHECK(c.holds);
}

TEST_CASE("dual of the Z/2 group algebra is the function algebra") {
    HopfData h = group_algebra(cyclic_group(2));
    HopfData dual = dual_hopf(h);
    CHECK(validate_hopf(dual).all_pass());
    // delta basis elements are orthogonal idempotents
    AlgebraData a = dual.algebra();
    CHECK(a.row(0, 0) == SparseVec::basis(0, 1u));
    CHECK(a.row(1, 1) == SparseVec::basis(1, 1u));
    CHECK(a.row(0, 1).is_zero());
    CHECK(a.row(1, 0).is_zero());
    // unit is the counit of the group algebra: the all-ones vector
    CHECK(a.unit.e.size() == 2);
}

TEST_CASE("double dual returns the original structure constants") {
    QTExample ex = sweedler_example(Scalar(1, 1));
    HopfData dd = dual_hopf(dual_hopf(ex.hopf));
    CHECK(dd.mult == ex.hopf.mult);
    CHECK(dd.comult == ex.hopf.comult);
    CHECK(dd.unit == ex.hopf.unit);
    for (Index i = 0; i < 4; ++i) CHECK(dd.counit[i] == ex.hopf.counit[i]);
    CHECK(dd.antipode == ex.hopf.antipode);
}

TEST_CASE("dual pairing identity on random elements of D(Z/2)") {
    QTExample dz2 = drinfeld_double_example(cyclic_group(2));
    const HopfData& h = dz2.hopf;
    AlgebraData dual = dual_algebra(h);
    std::mt19937_64 rng(2718);
    // <e^i e^j, x> = <e^i (x) e^j, Delta x> via brute force
    for (int t = 0; t < 30; ++t) {
        Index i = static_cast<Index>(rng() % h.dim);
        Index j = static_cast<Index>(rng() % h.dim);
        SparseVec x;
        for (Index b = 0; b < h.dim; ++b)
            if (rng() % 3 == 0) x = vec_add(x, SparseVec::basis(b, Scalar(int(rng() % 7) - 3, 1)));
        // left side: expand e^i e^j in the dual basis, evaluate at x
        Scalar lhs = Scalar::zero(1);
        for (const auto& [k, c] : dual.row(i, j).e) {
            auto xc = vec_coeff(x, k);
            if (xc) lhs += c * *xc;
        }
        // right side: pair e^i (x) e^j against Delta x
        Scalar rhs = Scalar::zero(1);
        for (const auto& [b, xc] : x.e)
            for (const auto& [pair, c] : h.comult[b].e)
                if (pair / h.dim == i && pair % h.dim == j) rhs += xc * c;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Drinfeld double of Z/2") {
    QTExample dz2 = drinfeld_double_example(cyclic_group(2));
    CHECK(dz2.hopf.dim == 4);
    CHECK(validate_hopf(dz2.hopf).all_pass());
    // commutative: the multiplication tensor is symmetric
    AlgebraData a = dz2.hopf.algebra();
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) CHECK(a.row(i, j) == a.row(j, i));
    // R has |G|^2 = 4 entries
    CHECK(dz2.r.ent.size() == 4);
}

TEST_CASE("Drinfeld double of S3 has dimension 36 and validates") {
    QTExample ds3 = drinfeld_double_example(symmetric_group_s3());
    CHECK(ds3.hopf.dim == 36);
    CHECK(validate_hopf(ds3.hopf).all_pass());
}

TEST_CASE("non-groups are rejected") {
    GroupTable bad;
    bad.n = 2;
    bad.mul = {0, 1, 1, 1}; // 1*1 = 1 kills inverses
    CHECK_THROWS_AS(check_group(bad), Error);
    try {
        group_algebra(bad);
        CHECK(false);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::NotAGroup);
    }
    GroupTable nonassoc;
    nonassoc.n = 3;
    nonassoc.mul = {0, 1, 2, 1, 2, 0, 2, 1, 0};
    CHECK_THROWS_AS(check_group(nonassoc), Error);
}

TEST_CASE("identity is normalized to index 0") {
    // cyclic table relabeled so the identity starts at position 2
    GroupTable g = cyclic_group(3);
    std::vector<Index> to{2, 1, 0};
    GroupTable shuffled;
    shuffled.n = 3;
    shuffled.mul.resize(9);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) shuffled.mul[i * 3 + j] = to[g.at(to[i], to[j])];
    CHECK(shuffled.identity() == 2);
    HopfData h = group_algebra(shuffled);
    CHECK(h.unit == SparseVec::basis(0, 1u));
    CHECK(validate_hopf(h).all_pass());
}

TEST_CASE("regular representation satisfies the module axioms") {
    for (int which = 0; which < 2; ++which) {
        AlgebraData alg = which == 0 ? sweedler_example(Scalar(1, 1)).hopf.algebra()
                                     : drinfeld_double_example(cyclic_group(2)).hopf.algebra();
        ModuleData m = regular_module(alg);
        CHECK_FALSE(module_violation(m, alg).has_value());
    }
}
