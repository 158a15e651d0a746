#include "hopfx/doubles.hpp"

#include <random>

#include "hopfx/errors.hpp"
#include "hopfx/parallel.hpp"

namespace hopfx {

namespace {

LegElement embed_h4(const QTStructure& q, const LegElement& x, size_t l1, size_t l2) {
    AlgebraData alg = q.algebra();
    std::vector<Index> dims(4, alg.dim);
    std::vector<const SparseVec*> units(4, &alg.unit);
    return embed(x, {l1, l2}, dims, units);
}

SparseVec unit_pair(const SparseVec& a, const SparseVec& b, Index dim) {
    VecBuilder acc;
    for (const auto& [p, cp] : a.e)
        for (const auto& [q, cq] : b.e) acc.add(p * dim + q, cp * cq);
    return acc.freeze();
}

// associativity of sparse vectors under an AlgebraData, used for generator sweeps
bool assoc_on_vectors(const AlgebraData& a, const std::vector<SparseVec>& gens, size_t samples,
                      uint64_t seed, std::optional<std::vector<Index>>& witness) {
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < gens.size(); ++j)
            for (size_t k = 0; k < gens.size(); ++k) {
                if (a.mul(a.mul(gens[i], gens[j]), gens[k]) !=
                    a.mul(gens[i], a.mul(gens[j], gens[k]))) {
                    witness = {{static_cast<Index>(i), static_cast<Index>(j),
                                static_cast<Index>(k)}};
                    return false;
                }
            }
    std::mt19937_64 rng(seed);
    for (size_t t = 0; t < samples; ++t) {
        Index i = static_cast<Index>(rng() % a.dim), j = static_cast<Index>(rng() % a.dim),
              k = static_cast<Index>(rng() % a.dim);
        SparseVec ei = SparseVec::basis(i, a.conductor), ej = SparseVec::basis(j, a.conductor),
                  ek = SparseVec::basis(k, a.conductor);
        if (a.mul(a.mul(ei, ej), ek) != a.mul(ei, a.mul(ej, ek))) {
            witness = {{i, j, k}};
            return false;
        }
    }
    return true;
}

} // namespace

LegElement build_t(const QTStructure& q) {
    AlgebraData alg = q.algebra();
    std::vector<const AlgebraData*> algs4(4, &alg);
    LegElement t = embed_h4(q, q.rinv, 2, 1);              // (R^{3,2})^-1
    t = leg_product(t, embed_h4(q, q.rinv, 2, 0), algs4);  // (R^{3,1})^-1
    t = leg_product(t, embed_h4(q, q.rinv, 3, 1), algs4);  // (R^{4,2})^-1
    t = leg_product(t, embed_h4(q, q.r, 0, 3), algs4);     // R^{1,4}
    return t;
}

bool check_t_hexagons(const QTStructure& q) { return check_t_hexagons(q, build_t(q)); }

bool check_t_hexagons(const QTStructure& q, const LegElement& t) {
    const Index d = q.hopf.dim;
    const Index d2 = d * d;
    AlgebraData alg = q.algebra();
    H2Coop h2 = build_h2coop(q);
    std::vector<const AlgebraData*> algs6(6, &alg);

    SparseVec unit2 = unit_pair(alg.unit, alg.unit, d);
    std::vector<const SparseVec*> macro_units{&unit2, &unit2, &unit2};

    LegElement tm = group_legs(group_legs(t, 0, 2), 1, 2);
    auto split6 = [&](LegElement x) {
        for (size_t l = x.dims.size(); l-- > 0;) x = split_leg(x, l, {d, d});
        return x;
    };
    LegElement t13 = split6(embed(tm, {0, 2}, {d2, d2, d2}, macro_units));
    LegElement t12 = split6(embed(tm, {0, 1}, {d2, d2, d2}, macro_units));
    LegElement t23 = split6(embed(tm, {1, 2}, {d2, d2, d2}, macro_units));

    LegElement lhs1 = split6(apply_comult_to_leg(tm, 1, h2.comult, d2, d2));
    if (lhs1 != leg_product(t13, t12, algs6)) return false;
    LegElement lhs2 = split6(apply_comult_to_leg(tm, 0, h2.comult, d2, d2));
    return lhs2 == leg_product(t13, t23, algs6);
}

EllipticDouble build_elliptic(const QTStructure& q, int k, const EllipticOptions& opts) {
    const HopfData& h = q.hopf;
    const Index d = h.dim;
    const Index dd = d * d;
    HeAction act = he_action_on_dual(h);
    LegElement t = build_t(q);

    EllipticDouble e;
    e.k = k;
    e.base = build_braided_dual(q, k);
    const AlgebraData& bd = e.base.alg;

    // cross(g, f') = (1 (x) e^g)(e^{f'} (x) 1) = T |> (e^{f'} (x) e^g)
    std::vector<SparseVec> cross(static_cast<size_t>(d) * d);
    {
        std::vector<VecBuilder> acc(static_cast<size_t>(d) * d);
        std::vector<Index> idx;
        for (const auto& [key, c] : t.ent) {
            idx = unflatten(key, t.dims);
            for (Index fp = 0; fp < d; ++fp) {
                const SparseVec& af = act.row(idx[0], idx[1], fp);
                if (af.is_zero()) continue;
                for (Index g = 0; g < d; ++g) {
                    const SparseVec& ag = act.row(idx[2], idx[3], g);
                    if (ag.is_zero()) continue;
                    VecBuilder& slot = acc[static_cast<size_t>(g) * d + fp];
                    for (const auto& [p, cp] : af.e)
                        for (const auto& [qq, cq] : ag.e) slot.add(p * d + qq, c * cp * cq);
                }
            }
        }
        for (size_t s = 0; s < acc.size(); ++s) cross[s] = acc[s].freeze();
    }

    e.alg.dim = dd;
    e.alg.conductor = h.conductor;
    e.alg.unit = unit_pair(bd.unit, bd.unit, d);
    e.alg.mult.resize(static_cast<size_t>(dd) * dd);
    parallel_for(dd, [&](size_t u) {
        Index f = static_cast<Index>(u / d), g = static_cast<Index>(u % d);
        for (Index fp = 0; fp < d; ++fp)
            for (Index gp = 0; gp < d; ++gp) {
                VecBuilder row;
                for (const auto& [pq, c] : cross[static_cast<size_t>(g) * d + fp].e) {
                    Index p = pq / d, qq = pq % d;
                    const SparseVec& left = bd.row(f, p);
                    if (left.is_zero()) continue;
                    const SparseVec& right = bd.row(qq, gp);
                    if (right.is_zero()) continue;
                    for (const auto& [a, ca] : left.e)
                        for (const auto& [b, cb] : right.e) row.add(a * d + b, c * ca * cb);
                }
                e.alg.mult[u * dd + (static_cast<size_t>(fp) * d + gp)] = row.freeze();
            }
    });

    if (auto w = e.alg.unit_violation())
        throw Error(ErrorCode::InternalConventionError,
                    "elliptic double unit law fails at (" + std::to_string(w->first) + ", " +
                        std::to_string(w->second) + ")");
    if (opts.assert_associativity) {
        std::optional<std::vector<Index>> witness;
        bool ok = true;
        if (dd <= opts.exhaustive_limit) {
            if (auto w = e.alg.associativity_violation()) {
                ok = false;
                witness = {{(*w)[0], (*w)[1], (*w)[2]}};
            }
        } else {
            // generator set: f (x) 1 and 1 (x) g over the dual basis
            std::vector<SparseVec> gens;
            gens.reserve(2 * d);
            for (Index i = 0; i < d; ++i) gens.push_back(unit_pair(SparseVec::basis(i, h.conductor), bd.unit, d));
            for (Index i = 0; i < d; ++i) gens.push_back(unit_pair(bd.unit, SparseVec::basis(i, h.conductor), d));
            ok = assoc_on_vectors(e.alg, gens, opts.samples, opts.seed, witness);
        }
        if (!ok)
            throw Error(ErrorCode::InternalConventionError,
                        "elliptic double not associative" +
                            (witness ? " (witness " + std::to_string((*witness)[0]) + "," +
                                           std::to_string((*witness)[1]) + "," +
                                           std::to_string((*witness)[2]) + ")"
                                     : std::string{}));
    }

    // X = sum (e^i (x) 1) (x) e_i,   Y = sum (1 (x) e^i) (x) e_i
    e.x.dims = {dd, d};
    e.y.dims = {dd, d};
    for (Index i = 0; i < d; ++i) {
        for (const auto& [j, c] : bd.unit.e) {
            e.x.add({i * d + j, i}, c);
            e.y.add({j * d + i, i}, c);
        }
    }
    return e;
}

bool check_eq2(const QTStructure& q, const AlgebraData& b, const LegElement& xb,
               const LegElement& yb) {
    const Index d = q.hopf.dim;
    AlgebraData halg = q.algebra();
    std::vector<const AlgebraData*> algs{&b, &halg, &halg};
    std::vector<Index> dims{b.dim, d, d};
    std::vector<const SparseVec*> units{&b.unit, &halg.unit, &halg.unit};

    LegElement x01 = embed(xb, {0, 1}, dims, units);
    LegElement y02 = embed(yb, {0, 2}, dims, units);
    LegElement r21 = embed(q.r, {2, 1}, dims, units);
    LegElement r12 = embed(q.r, {1, 2}, dims, units);

    LegElement lhs = leg_product(leg_product(x01, r21, algs), y02, algs);
    LegElement rhs = leg_product(
        leg_product(leg_product(leg_product(r21, y02, algs), r12, algs), x01, algs), r21, algs);
    return lhs == rhs;
}

bool check_eq3(const QTStructure& q, int k, const AlgebraData& b, const LegElement& xb) {
    const HopfData& h = q.hopf;
    const Index d = h.dim;
    AlgebraData halg = h.algebra();
    std::vector<const AlgebraData*> algs{&b, &halg, &halg};
    std::vector<Index> dims{b.dim, d, d};
    std::vector<const SparseVec*> units{&b.unit, &halg.unit, &halg.unit};

    LegElement lhs = apply_comult_to_leg(xb, 1, h.comult, d, d);

    LegElement x01 = embed(xb, {0, 1}, dims, units);
    LegElement x02 = embed(xb, {0, 2}, dims, units);
    LegElement r12 = embed(q.r, {1, 2}, dims, units);
    LegElement rinv12 = embed(q.rinv, {1, 2}, dims, units);

    LegElement rhs = rinv12;
    if (k != 0) {
        const LegElement& dpow = k > 0 ? q.dbraid : q.dbraid_inv;
        LegElement dk = embed(dpow, {1, 2}, dims, units);
        LegElement acc = dk;
        for (int i = 1; i < std::abs(k); ++i) acc = leg_product(acc, dk, algs);
        rhs = leg_product(acc, rinv12, algs);
    }
    rhs = leg_product(rhs, x02, algs);
    rhs = leg_product(rhs, r12, algs);
    rhs = leg_product(rhs, x01, algs);
    return lhs == rhs;
}

bool check_elliptic_relation(const QTStructure& q, const EllipticDouble& e) {
    return check_eq2(q, e.alg, e.x, e.y);
}

namespace {

// (id (x) e^i)(X_B): slice the H leg at basis index i
SparseVec functional_slice(const LegElement& xb, Index i) {
    LegElement s = contract_leg_basis(xb, 1, i);
    return s.to_vec();
}

} // namespace

LinMap reflection_morphism(const QTStructure& q, const BraidedDual& dual, const AlgebraData& b,
                           const LegElement& xb) {
    const Index d = q.hopf.dim;
    if (!check_eq3(q, dual.k, b, xb))
        throw Error(ErrorCode::PreconditionFailed, "X_B violates the k-reflection identity");
    LinMap m;
    m.src = d;
    m.dst = b.dim;
    m.cols.resize(d);
    for (Index i = 0; i < d; ++i) m.cols[i] = functional_slice(xb, i);
    if (m.apply(dual.alg.unit) != b.unit)
        throw Error(ErrorCode::HomomorphismCheckFailed, "universal map is not unital");
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            if (m.apply(dual.alg.row(i, j)) != b.mul(m.cols[i], m.cols[j]))
                throw Error(ErrorCode::HomomorphismCheckFailed,
                            "universal map is not multiplicative at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
    return m;
}

LinMap universal_morphism(const QTStructure& q, const EllipticDouble& e, const AlgebraData& b,
                          const LegElement& xb, const LegElement& yb) {
    const Index d = q.hopf.dim;
    const Index dd = d * d;
    if (!check_eq3(q, e.k, b, xb))
        throw Error(ErrorCode::PreconditionFailed, "X_B violates the k-reflection identity");
    if (!check_eq3(q, e.k, b, yb))
        throw Error(ErrorCode::PreconditionFailed, "Y_B violates the k-reflection identity");
    if (!check_eq2(q, b, xb, yb))
        throw Error(ErrorCode::PreconditionFailed, "(X_B, Y_B) violate the elliptic relation");

    std::vector<SparseVec> xs(d), ys(d);
    for (Index i = 0; i < d; ++i) {
        xs[i] = functional_slice(xb, i);
        ys[i] = functional_slice(yb, i);
    }
    LinMap m;
    m.src = dd;
    m.dst = b.dim;
    m.cols.resize(dd);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) m.cols[i * d + j] = b.mul(xs[i], ys[j]);

    if (m.apply(e.alg.unit) != b.unit)
        throw Error(ErrorCode::HomomorphismCheckFailed, "universal map is not unital");
    for (Index u = 0; u < dd; ++u)
        for (Index w = 0; w < dd; ++w)
            if (m.apply(e.alg.row(u, w)) != b.mul(m.cols[u], m.cols[w]))
                throw Error(ErrorCode::HomomorphismCheckFailed,
                            "universal map is not multiplicative at (" + std::to_string(u) + ", " +
                                std::to_string(w) + ")");
    return m;
}

HeisenbergDouble build_heisenberg(const QTStructure& q) {
    const HopfData& h = q.hopf;
    const Index d = h.dim;
    const Index dd = d * d;
    AlgebraData halg = h.algebra();
    H2Coop h2 = build_h2coop(q);
    HeAction act = he_action_on_dual(h);

    HeisenbergDouble dh;
    dh.base = build_braided_dual(q, 0);
    const AlgebraData& bd = dh.base.alg;

    // coideal membership of H (x) 1 and the resulting coideal coproduct:
    // Delta_C(e_x) = sum (y in C) (x) (m2 in H^[2],coop)
    std::vector<std::map<std::pair<Index, Index>, Scalar>> coideal(d);
    for (Index x = 0; x < d; ++x) {
        // iota(x) = e_x (x) 1 as a d^2 vector
        VecBuilder ix;
        for (const auto& [u, cu] : h.unit.e) ix.add(x * d + u, cu);
        SparseVec iv = ix.freeze();
        // Delta-tilde-coop applied to iota(x): entries over (m1, m2)
        std::map<Index, VecBuilder> slices; // m2 -> vector over m1
        for (const auto& [i, ci] : iv.e)
            for (const auto& [pair, c] : h2.comult[i].e) {
                Index m1 = static_cast<Index>(pair / dd), m2 = static_cast<Index>(pair % dd);
                slices[m2].add(m1, ci * c);
            }
        for (auto& [m2, builder] : slices) {
            SparseVec slice = builder.freeze();
            // recover coefficients via (id (x) eps) and verify membership
            std::vector<Scalar> cy(d, Scalar::zero(h.conductor));
            for (const auto& [m1, c] : slice.e) cy[m1 / d] += c * h.counit[m1 % d];
            VecBuilder recon;
            for (Index y = 0; y < d; ++y)
                if (!cy[y].is_zero())
                    for (const auto& [u, cu] : h.unit.e) recon.add(y * d + u, cy[y] * cu);
            if (recon.freeze() != slice)
                throw Error(ErrorCode::CoidealCheckFailed,
                            "Delta(e_" + std::to_string(x) + " (x) 1) leaves H (x) 1");
            for (Index y = 0; y < d; ++y)
                if (!cy[y].is_zero()) {
                    auto key = std::make_pair(y, m2);
                    auto it = coideal[x].find(key);
                    if (it == coideal[x].end())
                        coideal[x].emplace(key, cy[y]);
                    else {
                        it->second += cy[y];
                        if (it->second.is_zero()) coideal[x].erase(it);
                    }
                }
        }
    }

    // cross(h, f) = (1 (x) e_h)(e^f (x) 1) = sum (m2 |> e^f) (x) e_y
    std::vector<SparseVec> cross(static_cast<size_t>(d) * d);
    {
        std::vector<VecBuilder> acc(static_cast<size_t>(d) * d);
        for (Index hh = 0; hh < d; ++hh)
            for (const auto& [ym, c] : coideal[hh]) {
                auto [y, m2] = ym;
                Index a = m2 / d, b = m2 % d;
                for (Index f = 0; f < d; ++f) {
                    const SparseVec& af = act.row(a, b, f);
                    for (const auto& [p, cp] : af.e)
                        acc[static_cast<size_t>(hh) * d + f].add(p * d + y, c * cp);
                }
            }
        for (size_t s = 0; s < acc.size(); ++s) cross[s] = acc[s].freeze();
    }

    dh.alg.dim = dd;
    dh.alg.conductor = h.conductor;
    dh.alg.unit = unit_pair(bd.unit, halg.unit, d);
    dh.alg.mult.resize(static_cast<size_t>(dd) * dd);
    for (Index f = 0; f < d; ++f)
        for (Index hh = 0; hh < d; ++hh)
            for (Index fp = 0; fp < d; ++fp)
                for (Index hp = 0; hp < d; ++hp) {
                    VecBuilder row;
                    for (const auto& [py, c] : cross[static_cast<size_t>(hh) * d + fp].e) {
                        Index p = py / d, y = py % d;
                        const SparseVec& left = bd.row(f, p);
                        if (left.is_zero()) continue;
                        const SparseVec& right = halg.row(y, hp);
                        if (right.is_zero()) continue;
                        for (const auto& [a2, ca] : left.e)
                            for (const auto& [b2, cb] : right.e)
                                row.add(a2 * d + b2, c * ca * cb);
                    }
                    dh.alg.mult[(static_cast<size_t>(f) * d + hh) * dd +
                                (static_cast<size_t>(fp) * d + hp)] = row.freeze();
                }

    if (auto w = dh.alg.unit_violation())
        throw Error(ErrorCode::InternalConventionError,
                    "Heisenberg double unit law fails at (" + std::to_string(w->first) + ", " +
                        std::to_string(w->second) + ")");
    if (dd <= 1296) {
        if (auto w = dh.alg.associativity_violation())
            throw Error(ErrorCode::InternalConventionError,
                        "Heisenberg double not associative at (" + std::to_string((*w)[0]) + ", " +
                            std::to_string((*w)[1]) + ", " + std::to_string((*w)[2]) + ")");
    } else {
        std::vector<Index> gens;
        for (Index i = 0; i < d; ++i) gens.push_back(i * d); // e^i (x) slot of the unit pattern
        std::optional<std::array<Index, 3>> w =
            dh.alg.associativity_violation_sampled(gens, 10000, 1);
        if (w)
            throw Error(ErrorCode::InternalConventionError, "Heisenberg double not associative");
    }

    dh.xd.dims = {dd, d};
    for (Index i = 0; i < d; ++i)
        for (const auto& [j, c] : halg.unit.e) dh.xd.add({i * d + j, i}, c);
    dh.yd.dims = {dd, d};
    for (const auto& [key, c] : q.dbraid.ent) {
        Index c1 = static_cast<Index>(key / d), c2 = static_cast<Index>(key % d);
        for (const auto& [i, ci] : bd.unit.e) dh.yd.add({i * d + c1, c2}, c * ci);
    }
    return dh;
}

PhiResult build_phi(const QTStructure& q, const EllipticDouble& e0, const HeisenbergDouble& dh) {
    PhiResult out;
    out.map = universal_morphism(q, e0, dh.alg, dh.xd, dh.yd);
    out.rank = rank(out.map);
    Index expected = q.hopf.dim * factorization_rank(q);
    if (out.rank != expected)
        throw Error(ErrorCode::InternalConventionError,
                    "rank(Phi) = " + std::to_string(out.rank) + " but d * rank(phi) = " +
                        std::to_string(expected));
    if (out.rank == out.map.src && out.map.src == out.map.dst) out.inverse = invert(out.map);
    return out;
}

} // namespace hopfx
