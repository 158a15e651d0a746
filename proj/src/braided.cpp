#include "hopfx/braided.hpp"

#include "hopfx/errors.hpp"

namespace hopfx {

namespace {

// embed a (coefficient, H, ..., H) element with per-leg units
LegElement embed_mixed(const LegElement& x, const std::vector<size_t>& legs,
                       const std::vector<Index>& dims,
                       const std::vector<const SparseVec*>& units) {
    return embed(x, legs, dims, units);
}

} // namespace

BraidedDual build_braided_dual(const QTStructure& q, int k, const BraidedDualOptions& opts) {
    const HopfData& h = q.hopf;
    const Index d = h.dim;
    HeAction act = he_action_on_dual(h);
    AlgebraData conv = dual_algebra(h);
    LegElement g = twist_with_dbraid_power(q, k);

    BraidedDual bd;
    bd.k = k;
    bd.alg.dim = d;
    bd.alg.conductor = h.conductor;
    bd.alg.unit = conv.unit; // the counit of H
    bd.alg.mult.resize(static_cast<size_t>(d) * d);

    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) {
            VecBuilder acc;
            for (const auto& [key, c] : g.ent) {
                std::vector<Index> t = unflatten(key, g.dims);
                const SparseVec& fi = act.row(t[0], t[1], i);
                if (fi.is_zero()) continue;
                const SparseVec& fj = act.row(t[2], t[3], j);
                if (fj.is_zero()) continue;
                acc.add_scaled(conv.mul(fi, fj), c);
            }
            bd.alg.mult[static_cast<size_t>(i) * d + j] = acc.freeze();
        }

    if (auto w = bd.alg.unit_violation())
        throw Error(ErrorCode::InternalConventionError,
                    "twisted dual unit law fails at (" + std::to_string(w->first) + ", " +
                        std::to_string(w->second) + ")");
    if (opts.assert_associativity) {
        std::optional<std::array<Index, 3>> w;
        if (d <= opts.exhaustive_limit) {
            w = bd.alg.associativity_violation();
        } else {
            std::vector<Index> gens(d);
            for (Index i = 0; i < d; ++i) gens[i] = i;
            w = bd.alg.associativity_violation_sampled(gens, opts.samples, opts.seed);
        }
        if (w)
            throw Error(ErrorCode::InternalConventionError,
                        "twisted dual not associative at (" + std::to_string((*w)[0]) + ", " +
                            std::to_string((*w)[1]) + ", " + std::to_string((*w)[2]) + ")");
    }
    return bd;
}

LegElement canonical_x(const QTStructure& q) {
    const Index d = q.hopf.dim;
    LegElement x;
    x.dims = {d, d};
    const Scalar one = Scalar::one(q.hopf.conductor);
    for (Index i = 0; i < d; ++i) x.ent.emplace(static_cast<FlatKey>(i) * d + i, one);
    return x;
}

bool check_k_reflection(const QTStructure& q, const BraidedDual& bd) {
    const HopfData& h = q.hopf;
    const Index d = h.dim;
    AlgebraData halg = h.algebra();
    std::vector<const AlgebraData*> algs{&bd.alg, &halg, &halg};
    std::vector<Index> dims{d, d, d};
    std::vector<const SparseVec*> units{&bd.alg.unit, &halg.unit, &halg.unit};

    LegElement x = canonical_x(q);
    LegElement lhs = apply_comult_to_leg(x, 1, h.comult, d, d);

    LegElement x01 = embed_mixed(x, {0, 1}, dims, units);
    LegElement x02 = embed_mixed(x, {0, 2}, dims, units);
    LegElement r12 = embed_mixed(q.r, {1, 2}, dims, units);
    LegElement rinv12 = embed_mixed(q.rinv, {1, 2}, dims, units);

    LegElement rhs = rinv12;
    if (bd.k != 0) {
        const LegElement& dpow = bd.k > 0 ? q.dbraid : q.dbraid_inv;
        LegElement dk = embed_mixed(dpow, {1, 2}, dims, units);
        LegElement acc = dk;
        for (int i = 1; i < std::abs(bd.k); ++i) acc = leg_product(acc, dk, algs);
        rhs = leg_product(acc, rinv12, algs);
    }
    rhs = leg_product(rhs, x02, algs);
    rhs = leg_product(rhs, r12, algs);
    rhs = leg_product(rhs, x01, algs);
    return lhs == rhs;
}

bool check_reflection_untwisted(const QTStructure& q, const BraidedDual& bd) {
    const HopfData& h = q.hopf;
    const Index d = h.dim;
    AlgebraData halg = h.algebra();
    std::vector<const AlgebraData*> algs{&bd.alg, &halg, &halg};
    std::vector<Index> dims{d, d, d};
    std::vector<const SparseVec*> units{&bd.alg.unit, &halg.unit, &halg.unit};

    LegElement x = canonical_x(q);
    LegElement x01 = embed_mixed(x, {0, 1}, dims, units);
    LegElement x02 = embed_mixed(x, {0, 2}, dims, units);
    LegElement r12 = embed_mixed(q.r, {1, 2}, dims, units);
    LegElement r21 = embed_mixed(q.r, {2, 1}, dims, units);

    LegElement lhs = leg_product(leg_product(leg_product(r21, x02, algs), r12, algs), x01, algs);
    LegElement rhs = leg_product(leg_product(leg_product(x01, r21, algs), x02, algs), r12, algs);
    return lhs == rhs;
}

ShiftIso shift_iso(const QTStructure& q, int k, int step) {
    if (step != 1 && step != 2)
        throw Error(ErrorCode::PreconditionFailed, "shift step must be 1 or 2");
    const HopfData& h = q.hopf;
    const Index d = h.dim;
    SparseVec c;
    if (step == 2) {
        c = q.nu;
    } else {
        if (!q.ribbon) throw Error(ErrorCode::NoRibbon, "step-1 shift requires a ribbon element");
        c = *q.ribbon;
    }
    HeAction act = he_action_on_dual(h);
    // c (x) 1 in H^e
    VecBuilder ce;
    for (const auto& [a, ca] : c.e)
        for (const auto& [b, cb] : h.unit.e) ce.add(a * d + b, ca * cb);
    SparseVec chh = ce.freeze();

    LinMap m;
    m.src = m.dst = d;
    m.cols.resize(d);
    for (Index i = 0; i < d; ++i) m.cols[i] = act.apply(chh, SparseVec::basis(i, h.conductor));
    if (rank(m) != d)
        throw Error(ErrorCode::IsoCheckFailed, "shift map is singular");

    BraidedDual from = build_braided_dual(q, k);
    BraidedDual to = build_braided_dual(q, k - step);

    auto multiplicative = [&](const AlgebraData& src, const AlgebraData& dst) {
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j)
                if (m.apply(src.row(i, j)) != dst.mul(m.cols[i], m.cols[j])) return false;
        return m.apply(src.unit) == dst.unit;
    };

    ShiftIso iso;
    iso.map = m;
    if (multiplicative(from.alg, to.alg)) {
        iso.from_k = k;
        iso.to_k = k - step;
    } else if (multiplicative(to.alg, from.alg)) {
        iso.from_k = k - step;
        iso.to_k = k;
    } else {
        throw Error(ErrorCode::IsoCheckFailed,
                    "shift map is not multiplicative in either direction");
    }
    return iso;
}

LinMap factorization_map(const QTStructure& q) {
    const Index d = q.hopf.dim;
    LinMap phi;
    phi.src = phi.dst = d;
    phi.cols.resize(d);
    std::vector<VecBuilder> acc(d);
    for (const auto& [key, c] : q.dbraid.ent) {
        Index i = static_cast<Index>(key / d), b = static_cast<Index>(key % d);
        acc[i].add(b, c);
    }
    for (Index i = 0; i < d; ++i) phi.cols[i] = acc[i].freeze();
    return phi;
}

Index factorization_rank(const QTStructure& q) { return rank(factorization_map(q)); }

bool is_factorizable(const QTStructure& q) { return factorization_rank(q) == q.hopf.dim; }

} // namespace hopfx
