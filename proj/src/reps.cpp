#include "hopfx/reps.hpp"

#include "hopfx/errors.hpp"

namespace hopfx {

namespace {

LinMap scaled(const LinMap& m, const Scalar& c) {
    LinMap out = m;
    for (auto& col : out.cols) col = vec_scale(col, c);
    return out;
}

// operator of a 2-leg element through a pair of module maps
LinMap pair_operator(const LegElement& el, const ModuleData& m0, const ModuleData& m1) {
    LinMap acc = LinMap::zero(m0.dim * m1.dim, m0.dim * m1.dim);
    std::vector<Index> idx;
    for (const auto& [key, c] : el.ent) {
        idx = unflatten(key, el.dims);
        acc = linmap_add(acc, scaled(kron(m0.rho[idx[0]], m1.rho[idx[1]]), c));
    }
    return acc;
}

LinMap identity_of(Index n, unsigned conductor) { return LinMap::identity(n, conductor); }

} // namespace

BraidRep build_braid_rep(const QTStructure& q, const AlgebraData& double_alg,
                         const LegElement& xcan, const LegElement& ycan, const ModuleData& m,
                         const ModuleData& v, Index n) {
    if (n < 1) throw Error(ErrorCode::PreconditionFailed, "need at least one strand");
    const HopfData& h = q.hopf;
    AlgebraData halg = h.algebra();
    if (auto w = module_violation(m, double_alg))
        throw Error(ErrorCode::ModuleAxiomFailed, "module over the double violates its axioms");
    if (auto w = module_violation(v, halg))
        throw Error(ErrorCode::ModuleAxiomFailed, "module over H violates its axioms");

    const unsigned cond = h.conductor;
    Index vpow = 1;
    for (Index i = 0; i < n; ++i) vpow *= v.dim;
    BraidRep rep;
    rep.n = n;
    rep.space = m.dim * vpow;

    // X_1, Y_1 act on (M, V_1)
    {
        LinMap x1 = pair_operator(xcan, m, v);
        LinMap y1 = pair_operator(ycan, m, v);
        Index rest = vpow / v.dim;
        rep.x.push_back(kron(x1, identity_of(rest, cond)));
        rep.y.push_back(kron(y1, identity_of(rest, cond)));
    }

    // sigma_i = flip . (rho_V x rho_V)(R) on (V_i, V_{i+1})
    {
        LinMap rv = LinMap::zero(v.dim * v.dim, v.dim * v.dim);
        std::vector<Index> idx;
        for (const auto& [key, c] : q.r.ent) {
            idx = unflatten(key, q.r.dims);
            rv = linmap_add(rv, scaled(kron(v.rho[idx[0]], v.rho[idx[1]]), c));
        }
        LinMap flip = LinMap::zero(v.dim * v.dim, v.dim * v.dim);
        for (Index a = 0; a < v.dim; ++a)
            for (Index b = 0; b < v.dim; ++b)
                flip.cols[a * v.dim + b] = SparseVec::basis(b * v.dim + a, cond);
        LinMap sig = compose(flip, rv);
        for (Index i = 1; i < n; ++i) {
            Index before = m.dim;
            for (Index t = 1; t < i; ++t) before *= v.dim;
            Index after = 1;
            for (Index t = i + 1; t < n; ++t) after *= v.dim;
            rep.sigma.push_back(
                kron(kron(identity_of(before, cond), sig), identity_of(after, cond)));
        }
    }

    for (Index i = 1; i < n; ++i) {
        rep.x.push_back(compose(rep.sigma[i - 1], compose(rep.x[i - 1], rep.sigma[i - 1])));
        rep.y.push_back(compose(rep.sigma[i - 1], compose(rep.y[i - 1], rep.sigma[i - 1])));
    }
    return rep;
}

Report check_presentation(const BraidRep& rep) {
    Report out;
    const Index n = rep.n;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            out.add("x_commute_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                    compose(rep.x[i], rep.x[j]) == compose(rep.x[j], rep.x[i]));
            out.add("y_commute_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                    compose(rep.y[i], rep.y[j]) == compose(rep.y[j], rep.y[i]));
        }
    for (Index i = 0; i + 1 < rep.sigma.size(); ++i)
        out.add("braid_adjacent_" + std::to_string(i + 1),
                compose(rep.sigma[i], compose(rep.sigma[i + 1], rep.sigma[i])) ==
                    compose(rep.sigma[i + 1], compose(rep.sigma[i], rep.sigma[i + 1])));
    for (size_t i = 0; i < rep.sigma.size(); ++i)
        for (size_t j = i + 2; j < rep.sigma.size(); ++j)
            out.add("braid_distant_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                    compose(rep.sigma[i], rep.sigma[j]) == compose(rep.sigma[j], rep.sigma[i]));
    for (Index i = 0; i + 1 < n; ++i) {
        out.add("x_recursion_" + std::to_string(i + 1),
                rep.x[i + 1] == compose(rep.sigma[i], compose(rep.x[i], rep.sigma[i])));
        out.add("y_recursion_" + std::to_string(i + 1),
                rep.y[i + 1] == compose(rep.sigma[i], compose(rep.y[i], rep.sigma[i])));
    }
    if (n >= 2) {
        LinMap s1sq = compose(rep.sigma[0], rep.sigma[0]);
        out.add("cross_x1y2",
                compose(rep.x[0], rep.y[1]) == compose(rep.y[1], compose(rep.x[0], s1sq)));
    }
    return out;
}

MCGAction build_mcg_action(const QTStructure& q, const EllipticDouble& e1) {
    if (e1.k != 1)
        throw Error(ErrorCode::PreconditionFailed, "the mapping class action lives on E^(1)");
    AlgebraData halg = q.algebra();
    std::vector<const AlgebraData*> algs{&e1.alg, &halg};

    LegElement xinv = invert_in_legs(algs, e1.x); // NotInvertible propagates
    LegElement yinv = invert_in_legs(algs, e1.y);
    LegElement y_xinv = leg_product(e1.y, xinv, algs);
    LegElement y_xinv_yinv = leg_product(y_xinv, yinv, algs);

    MCGAction act;
    act.a = universal_morphism(q, e1, e1.alg, e1.y, y_xinv_yinv);
    act.b = universal_morphism(q, e1, e1.alg, e1.x, y_xinv);
    if (rank(act.a) != e1.alg.dim || rank(act.b) != e1.alg.dim)
        throw Error(ErrorCode::InternalConventionError, "mapping class generator is singular");
    act.z = linmap_pow(act.a, 4);
    return act;
}

Report check_mcg_relations(const MCGAction& act) {
    Report out;
    LinMap a4 = linmap_pow(act.a, 4);
    LinMap ab = compose(act.a, act.b);
    out.add("A4_eq_AB3", a4 == compose(ab, compose(ab, ab)));
    LinMap a2 = compose(act.a, act.a);
    out.add("A2B_comm", compose(a2, act.b) == compose(act.b, a2));
    out.add("Z_is_A4", act.z == a4);
    out.add("Z_central_A", compose(act.z, act.a) == compose(act.a, act.z));
    out.add("Z_central_B", compose(act.z, act.b) == compose(act.b, act.z));
    return out;
}

FourierResult fourier_transform(const QTStructure& q) {
    if (!is_factorizable(q)) throw Error(ErrorCode::NotFactorizable, "phi is not injective");
    QTStructure qr = q;
    if (!qr.ribbon) {
        qr.ribbon = find_ribbon(q);
        if (!qr.ribbon) throw Error(ErrorCode::NoRibbon, "no ribbon element found");
    }
    EllipticDouble e0 = build_elliptic(qr, 0);
    EllipticDouble e1 = build_elliptic(qr, 1);
    HeisenbergDouble dh = build_heisenberg(qr);
    PhiResult phi = build_phi(qr, e0, dh);
    MCGAction mcg = build_mcg_action(qr, e1);
    return fourier_transform(qr, e0, e1, dh, phi, mcg);
}

FourierResult fourier_transform(const QTStructure& q, const EllipticDouble& e0,
                                const EllipticDouble& e1, const HeisenbergDouble& dh,
                                const PhiResult& phi, const MCGAction& mcg) {
    if (!phi.inverse) throw Error(ErrorCode::NotFactorizable, "Phi is not bijective");
    QTStructure qr = q;
    if (!qr.ribbon) {
        qr.ribbon = find_ribbon(q);
        if (!qr.ribbon) throw Error(ErrorCode::NoRibbon, "no ribbon element found");
    }
    ShiftIso slot = shift_iso(qr, 1, 1); // between ~H_1 and ~H_0
    LinMap candidate = kron(slot.map, slot.map);

    auto multiplicative = [&](const LinMap& m, const AlgebraData& src, const AlgebraData& dst) {
        if (m.apply(src.unit) != dst.unit) return false;
        for (Index i = 0; i < src.dim; ++i)
            for (Index j = 0; j < src.dim; ++j)
                if (m.apply(src.row(i, j)) != dst.mul(m.cols[i], m.cols[j])) return false;
        return true;
    };

    FourierResult out;
    // orient the slotwise map as E^(0) -> E^(1)
    if (multiplicative(candidate, e0.alg, e1.alg)) {
        out.theta = candidate;
    } else if (multiplicative(candidate, e1.alg, e0.alg)) {
        out.theta = invert(candidate);
        if (!multiplicative(out.theta, e0.alg, e1.alg))
            throw Error(ErrorCode::IsoCheckFailed, "inverted slot map fails multiplicativity");
    } else {
        throw Error(ErrorCode::IsoCheckFailed,
                    "slotwise shift map is not an isomorphism of the elliptic doubles");
    }

    LinMap theta_inv = invert(out.theta);
    LinMap inner_a = compose(theta_inv, compose(mcg.a, out.theta));
    LinMap inner_b = compose(theta_inv, compose(mcg.b, out.theta));
    out.f = compose(phi.map, compose(inner_a, *phi.inverse));
    out.b_transport = compose(phi.map, compose(inner_b, *phi.inverse));

    if (!multiplicative(out.f, dh.alg, dh.alg) || rank(out.f) != dh.alg.dim)
        throw Error(ErrorCode::IsoCheckFailed,
                    "transported Fourier map is not an algebra automorphism");
    return out;
}

} // namespace hopfx
