#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfx/errors.hpp"
#include "hopfx/reps.hpp"

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

BraidRep regular_rep(const QTStructure& q, const EllipticDouble& e, Index n) {
    ModuleData m = regular_module(e.alg);
    ModuleData v = regular_module(q.algebra());
    return build_braid_rep(q, e.alg, e.x, e.y, m, v, n);
}

// the defining formula of the universal morphism without any verification,
// used to build deliberately broken generator images
LinMap raw_morphism(const QTStructure& q, const EllipticDouble& e, const LegElement& xb,
                    const LegElement& yb) {
    const Index d = q.hopf.dim;
    LinMap m;
    m.src = m.dst = d * d;
    m.cols.resize(m.src);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) {
            LegElement xi = contract_leg_basis(xb, 1, i);
            LegElement yj = contract_leg_basis(yb, 1, j);
            m.cols[i * d + j] = e.alg.mul(xi.to_vec(), yj.to_vec());
        }
    return m;
}

} // namespace

TEST_CASE("n = 1 on the commutative double: X1 and Y1 commute") {
    QTStructure q = qt_z2();
    EllipticDouble e = build_elliptic(q, 0);
    BraidRep rep = regular_rep(q, e, 1);
    CHECK(compose(rep.x[0], rep.y[0]) == compose(rep.y[0], rep.x[0]));
}

TEST_CASE("operator sizes for the regular modules") {
    QTStructure q = qt_sweedler(1);
    EllipticDouble e = build_elliptic(q, 0);
    BraidRep rep = regular_rep(q, e, 2);
    CHECK(rep.space == 256); // 16 * 4 * 4
    CHECK(rep.x.size() == 2);
    CHECK(rep.sigma.size() == 1);
}

TEST_CASE("presentation holds for n = 2, 3 on every fixture") {
    for (int which = 0; which < 4; ++which) {
        QTStructure q = which == 0   ? qt_z2()
                        : which == 1 ? qt_sweedler(0)
                        : which == 2 ? qt_sweedler(1)
                                     : qt_dz2();
        CAPTURE(which);
        EllipticDouble e = build_elliptic(q, 0);
        for (Index n : {2u, 3u}) {
            CAPTURE(n);
            BraidRep rep = regular_rep(q, e, n);
            Report r = check_presentation(rep);
            for (const auto& c : r.checks) {
                CAPTURE(c.name);
                CHECK(c.holds);
            }
        }
    }
}

TEST_CASE("the cross relation X1 Y2 = Y2 X1 sigma1^2 as matrices on D(Z/2)") {
    QTStructure q = qt_dz2();
    EllipticDouble e = build_elliptic(q, 0);
    BraidRep rep = regular_rep(q, e, 2);
    LinMap lhs = compose(rep.x[0], rep.y[1]);
    LinMap rhs = compose(rep.y[1], compose(rep.x[0], compose(rep.sigma[0], rep.sigma[0])));
    CHECK(lhs == rhs);
}

TEST_CASE("sigma without the flip breaks the X recursion") {
    QTStructure q = qt_sweedler(1);
    EllipticDouble e = build_elliptic(q, 0);
    BraidRep rep = regular_rep(q, e, 2);
    // rebuild sigma_1 as (rho x rho)(R) with no flip
    ModuleData v = regular_module(q.algebra());
    LinMap rv = LinMap::zero(16, 16);
    for (const auto& [key, c] : q.r.ent) {
        LinMap term = kron(v.rho[key / 4], v.rho[key % 4]);
        for (auto& col : term.cols) col = vec_scale(col, c);
        rv = linmap_add(rv, term);
    }
    BraidRep broken = rep;
    broken.sigma[0] = kron(LinMap::identity(16, 1), rv);
    Report r = check_presentation(broken);
    const CheckResult* rec = r.find("x_recursion_1");
    REQUIRE(rec != nullptr);
    CHECK_FALSE(rec->holds);
}

TEST_CASE("mapping class group action") {
    SUBCASE("trivial R: A^4 is the identity") {
        QTStructure q = qt_z2();
        EllipticDouble e1 = build_elliptic(q, 1);
        MCGAction act = build_mcg_action(q, e1);
        CHECK(linmap_pow(act.a, 4) == LinMap::identity(4, 1));
        CHECK(act.z == LinMap::identity(4, 1));
        CHECK(check_mcg_relations(act).all_pass());
    }
    SUBCASE("relations hold on every fixture") {
        for (int which = 0; which < 4; ++which) {
            QTStructure q = which == 0   ? qt_z2()
                            : which == 1 ? qt_sweedler(0)
                            : which == 2 ? qt_sweedler(1)
                                         : qt_dz2();
            CAPTURE(which);
            EllipticDouble e1 = build_elliptic(q, 1);
            MCGAction act = build_mcg_action(q, e1);
            Report r = check_mcg_relations(act);
            for (const auto& c : r.checks) {
                CAPTURE(c.name);
                CHECK(c.holds);
            }
            // A and B are automorphisms: unital, multiplicative (verified at
            // construction), bijective
            CHECK(rank(act.a) == e1.alg.dim);
            CHECK(rank(act.b) == e1.alg.dim);
        }
    }
    SUBCASE("A sends X to Y and B fixes X (round trip through the H leg)") {
        QTStructure q = qt_sweedler(1);
        EllipticDouble e1 = build_elliptic(q, 1);
        MCGAction act = build_mcg_action(q, e1);
        LegElement ax = apply_linmap_to_leg(e1.x, 0, act.a);
        CHECK(ax == e1.y);
        LegElement bx = apply_linmap_to_leg(e1.x, 0, act.b);
        CHECK(bx == e1.x);
        // B . Y = Y X^-1
        AlgebraData halg = q.algebra();
        std::vector<const AlgebraData*> algs{&e1.alg, &halg};
        LegElement xinv = invert_in_legs(algs, e1.x);
        CHECK(apply_linmap_to_leg(e1.y, 0, act.b) == leg_product(e1.y, xinv, algs));
    }
    SUBCASE("a corrupted B action violates the group relations") {
        // on D(Z/2) the two sides coincide (X and Y commute there); the
        // Sweedler double separates them
        QTStructure q = qt_sweedler(1);
        EllipticDouble e1 = build_elliptic(q, 1);
        MCGAction act = build_mcg_action(q, e1);
        AlgebraData halg = q.algebra();
        std::vector<const AlgebraData*> algs{&e1.alg, &halg};
        LegElement xinv = invert_in_legs(algs, e1.x);
        // B' . Y = X^-1 Y instead of Y X^-1
        LegElement xinv_y = leg_product(xinv, e1.y, algs);
        MCGAction bad = act;
        bad.b = raw_morphism(q, e1, e1.x, xinv_y);
        Report r = check_mcg_relations(bad);
        CHECK_FALSE(r.all_pass());
        const CheckResult* rel = r.find("A4_eq_AB3");
        REQUIRE(rel != nullptr);
        CHECK_FALSE(rel->holds);
    }
}

TEST_CASE("quantum Fourier transform") {
    SUBCASE("rejected for the non-factorizable trivial fixture") {
        QTStructure q = qt_z2();
        try {
            fourier_transform(q);
            CHECK(false);
        } catch (const Error& err) {
            CHECK(err.code() == ErrorCode::NotFactorizable);
        }
    }
    SUBCASE("D(Z/2): F is a bijective algebra automorphism of D_H") {
        QTStructure q = qt_dz2();
        FourierResult fr = fourier_transform(q);
        HeisenbergDouble dh = build_heisenberg(q);
        CHECK(rank(fr.f) == 16);
        CHECK(fr.f.apply(dh.alg.unit) == dh.alg.unit);
        for (Index i = 0; i < 16; ++i)
            for (Index j = 0; j < 16; ++j)
                CHECK(fr.f.apply(dh.alg.row(i, j)) == dh.alg.mul(fr.f.cols[i], fr.f.cols[j]));
    }
    SUBCASE("transported group relations hold") {
        QTStructure q = qt_dz2();
        FourierResult fr = fourier_transform(q);
        LinMap f4 = linmap_pow(fr.f, 4);
        LinMap fb = compose(fr.f, fr.b_transport);
        CHECK(f4 == compose(fb, compose(fb, fb)));
        LinMap f2 = compose(fr.f, fr.f);
        CHECK(compose(f2, fr.b_transport) == compose(fr.b_transport, f2));
    }
}

TEST_CASE("module axiom violations are rejected") {
    QTStructure q = qt_sweedler(1);
    EllipticDouble e = build_elliptic(q, 0);
    ModuleData m = regular_module(e.alg);
    ModuleData v = regular_module(q.algebra());
    ModuleData broken = v;
    broken.rho[2] = LinMap::identity(4, 1); // x acting as the identity is no module
    try {
        build_braid_rep(q, e.alg, e.x, e.y, m, broken, 2);
        CHECK(false);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::ModuleAxiomFailed);
    }
}
