#include "hopfx/hopf.hpp"

#include <algorithm>

#include "hopfx/errors.hpp"

namespace hopfx {

HopfData finalize_hopf(Index dim, unsigned conductor, std::vector<SparseVec> mult, SparseVec unit,
                       std::vector<SparseVec> comult, std::vector<Scalar> counit, LinMap antipode) {
    HopfData h;
    h.dim = dim;
    h.conductor = conductor;
    h.mult = std::move(mult);
    h.unit = std::move(unit);
    h.comult = std::move(comult);
    h.counit = std::move(counit);
    h.antipode = std::move(antipode);
    if (h.mult.size() != static_cast<size_t>(dim) * dim)
        throw Error(ErrorCode::DimMismatch, "mult tensor size");
    if (h.comult.size() != dim) throw Error(ErrorCode::DimMismatch, "comult tensor size");
    if (h.counit.size() != dim) throw Error(ErrorCode::DimMismatch, "counit size");
    if (h.antipode.src != dim || h.antipode.dst != dim)
        throw Error(ErrorCode::DimMismatch, "antipode shape");
    try {
        h.antipode_inv = invert(h.antipode);
    } catch (const Error&) {
        h.antipode_singular = true;
        h.antipode_inv = LinMap::zero(dim, dim);
    }
    return h;
}

namespace {

LegElement comult_element(const HopfData& h, Index i) {
    return vec_to_leg_element(h.comult[i], {h.dim, h.dim});
}

// Delta applied to a vector
LegElement comult_vec(const HopfData& h, const SparseVec& v) {
    LegElement out;
    out.dims = {h.dim, h.dim};
    for (const auto& [i, c] : v.e)
        for (const auto& [k, pc] : h.comult[i].e) {
            Scalar w = c * pc;
            if (w.is_zero()) continue;
            auto it = out.ent.find(k);
            if (it == out.ent.end()) {
                out.ent.emplace(k, w);
            } else {
                it->second += w;
                if (it->second.is_zero()) out.ent.erase(it);
            }
        }
    return out;
}

} // namespace

Report validate_hopf(const HopfData& h) {
    Report rep;
    const Index d = h.dim;
    const AlgebraData alg = h.algebra();
    const Scalar one = Scalar::one(h.conductor);

    {
        auto w = alg.associativity_violation();
        rep.add("associativity", !w,
                w ? std::optional<std::vector<Index>>{{(*w)[0], (*w)[1], (*w)[2]}} : std::nullopt);
    }
    {
        auto w = alg.unit_violation();
        rep.add("unit_law", !w,
                w ? std::optional<std::vector<Index>>{{w->first, w->second}} : std::nullopt);
    }
    {
        // (Delta x id) Delta = (id x Delta) Delta
        bool ok = true;
        std::optional<std::vector<Index>> witness;
        for (Index i = 0; i < d && ok; ++i) {
            LegElement di = comult_element(h, i);
            LegElement left = apply_comult_to_leg(di, 0, h.comult, d, d);
            LegElement right = apply_comult_to_leg(di, 1, h.comult, d, d);
            if (left != right) {
                ok = false;
                witness = {{i}};
            }
        }
        rep.add("coassociativity", ok, witness);
    }
    {
        // (eps x id) Delta = id = (id x eps) Delta
        bool ok = true;
        std::optional<std::vector<Index>> witness;
        for (Index i = 0; i < d && ok; ++i) {
            VecBuilder left, right;
            for (const auto& [pair, c] : h.comult[i].e) {
                Index j = static_cast<Index>(pair / d), k = static_cast<Index>(pair % d);
                left.add(k, c * h.counit[j]);
                right.add(j, c * h.counit[k]);
            }
            SparseVec ei = SparseVec::basis(i, h.conductor);
            if (left.freeze() != ei || right.freeze() != ei) {
                ok = false;
                witness = {{i}};
            }
        }
        rep.add("counit_law", ok, witness);
    }
    {
        // Delta is an algebra map (including Delta(1) = 1 x 1)
        bool ok = true;
        std::optional<std::vector<Index>> witness;
        std::vector<const AlgebraData*> square{&alg, &alg};
        LegElement unit2;
        unit2.dims = {d, d};
        for (const auto& [p, cp] : h.unit.e)
            for (const auto& [q, cq] : h.unit.e) unit2.add({p, q}, cp * cq);
        if (comult_vec(h, h.unit) != unit2) {
            ok = false;
            witness = std::vector<Index>{};
        }
        for (Index i = 0; i < d && ok; ++i) {
            LegElement di = comult_element(h, i);
            for (Index j = 0; j < d && ok; ++j) {
                LegElement prod = leg_product(di, comult_element(h, j), square);
                if (prod != comult_vec(h, h.mult_row(i, j))) {
                    ok = false;
                    witness = {{i, j}};
                }
            }
        }
        rep.add("comult_algebra_map", ok, witness);
    }
    {
        // eps is an algebra map
        bool ok = true;
        std::optional<std::vector<Index>> witness;
        Scalar eps_unit = Scalar::zero(h.conductor);
        for (const auto& [i, c] : h.unit.e) eps_unit += c * h.counit[i];
        if (eps_unit != one) {
            ok = false;
            witness = std::vector<Index>{};
        }
        for (Index i = 0; i < d && ok; ++i)
            for (Index j = 0; j < d && ok; ++j) {
                Scalar lhs = Scalar::zero(h.conductor);
                for (const auto& [k, c] : h.mult_row(i, j).e) lhs += c * h.counit[k];
                if (lhs != h.counit[i] * h.counit[j]) {
                    ok = false;
                    witness = {{i, j}};
                }
            }
        rep.add("counit_algebra_map", ok, witness);
    }
    {
        // m (S x id) Delta = unit . eps = m (id x S) Delta
        bool ok = true;
        std::optional<std::vector<Index>> witness;
        for (Index i = 0; i < d && ok; ++i) {
            VecBuilder left, right;
            for (const auto& [pair, c] : h.comult[i].e) {
                Index j = static_cast<Index>(pair / d), k = static_cast<Index>(pair % d);
                left.add_scaled(alg.mul(h.antipode.cols[j], SparseVec::basis(k, h.conductor)), c);
                right.add_scaled(alg.mul(SparseVec::basis(j, h.conductor), h.antipode.cols[k]), c);
            }
            SparseVec expected = vec_scale(h.unit, h.counit[i]);
            if (left.freeze() != expected || right.freeze() != expected) {
                ok = false;
                witness = {{i}};
            }
        }
        rep.add("antipode_axiom", ok, witness);
    }
    rep.add("antipode_invertible", !h.antipode_singular);
    return rep;
}

AlgebraData dual_algebra(const HopfData& h) {
    AlgebraData a;
    a.dim = h.dim;
    a.conductor = h.conductor;
    a.mult.resize(static_cast<size_t>(h.dim) * h.dim);
    // (e^j e^k)(e_i) = (e^j x e^k)(Delta e_i)
    {
        std::vector<VecBuilder> acc(static_cast<size_t>(h.dim) * h.dim);
        for (Index i = 0; i < h.dim; ++i)
            for (const auto& [pair, c] : h.comult[i].e) acc[pair].add(i, c);
        for (size_t r = 0; r < acc.size(); ++r) a.mult[r] = acc[r].freeze();
    }
    SparseVec unit;
    for (Index i = 0; i < h.dim; ++i)
        if (!h.counit[i].is_zero()) unit.e.emplace_back(i, h.counit[i]);
    a.unit = std::move(unit);
    return a;
}

HopfData dual_hopf(const HopfData& h) {
    const Index d = h.dim;
    AlgebraData conv = dual_algebra(h);
    std::vector<SparseVec> comult(d);
    {
        std::vector<VecBuilder> acc(d);
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j)
                for (const auto& [k, c] : h.mult_row(i, j).e)
                    acc[k].add(static_cast<Index>(i * d + j), c);
        for (Index k = 0; k < d; ++k) comult[k] = acc[k].freeze();
    }
    std::vector<Scalar> counit(d, Scalar::zero(h.conductor));
    for (const auto& [i, c] : h.unit.e) counit[i] = c;
    return finalize_hopf(d, h.conductor, std::move(conv.mult), std::move(conv.unit),
                         std::move(comult), std::move(counit), transpose(h.antipode));
}

Index GroupTable::identity() const {
    for (Index e = 0; e < n; ++e) {
        bool ok = true;
        for (Index i = 0; i < n && ok; ++i)
            if (at(e, i) != i || at(i, e) != i) ok = false;
        if (ok) return e;
    }
    throw Error(ErrorCode::NotAGroup, "no identity element");
}

Index GroupTable::inverse(Index i) const {
    Index e = identity();
    for (Index j = 0; j < n; ++j)
        if (at(i, j) == e && at(j, i) == e) return j;
    throw Error(ErrorCode::NotAGroup, "element has no inverse");
}

void check_group(const GroupTable& g) {
    if (g.n == 0) throw Error(ErrorCode::NotAGroup, "empty table");
    if (g.mul.size() != static_cast<size_t>(g.n) * g.n)
        throw Error(ErrorCode::NotAGroup, "table size mismatch");
    for (Index v : g.mul)
        if (v >= g.n) throw Error(ErrorCode::NotAGroup, "table entry out of range");
    for (Index i = 0; i < g.n; ++i)
        for (Index j = 0; j < g.n; ++j)
            for (Index k = 0; k < g.n; ++k)
                if (g.at(g.at(i, j), k) != g.at(i, g.at(j, k)))
                    throw Error(ErrorCode::NotAGroup, "table not associative");
    g.identity();
    for (Index i = 0; i < g.n; ++i) g.inverse(i);
}

GroupTable cyclic_group(Index n) {
    GroupTable g;
    g.n = n;
    g.mul.resize(static_cast<size_t>(n) * n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) g.mul[static_cast<size_t>(i) * n + j] = (i + j) % n;
    return g;
}

GroupTable symmetric_group_s3() {
    // elements: e, (12), (13), (23), (123), (132) acting on {0,1,2}
    const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    auto find = [&](const int* p) -> Index {
        for (Index k = 0; k < 6; ++k)
            if (perms[k][0] == p[0] && perms[k][1] == p[1] && perms[k][2] == p[2]) return k;
        throw Error(ErrorCode::NotAGroup, "S3 closure failure");
    };
    GroupTable g;
    g.n = 6;
    g.mul.resize(36);
    for (Index i = 0; i < 6; ++i)
        for (Index j = 0; j < 6; ++j) {
            int comp[3];
            for (int t = 0; t < 3; ++t) comp[t] = perms[i][perms[j][t]]; // i after j
            g.mul[i * 6 + j] = find(comp);
        }
    return g;
}

HopfData group_algebra(GroupTable g, unsigned conductor) {
    check_group(g);
    Index e = g.identity();
    if (e != 0) {
        // relabel so the identity sits at index 0
        std::vector<Index> to_new(g.n), to_old(g.n);
        for (Index i = 0; i < g.n; ++i) to_new[i] = i;
        std::swap(to_new[0], to_new[e]);
        to_old = to_new;
        GroupTable h;
        h.n = g.n;
        h.mul.resize(g.mul.size());
        for (Index i = 0; i < g.n; ++i)
            for (Index j = 0; j < g.n; ++j)
                h.mul[static_cast<size_t>(i) * g.n + j] = to_new[g.at(to_old[i], to_old[j])];
        g = std::move(h);
    }
    const Index d = g.n;
    std::vector<SparseVec> mult(static_cast<size_t>(d) * d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            mult[static_cast<size_t>(i) * d + j] = SparseVec::basis(g.at(i, j), conductor);
    std::vector<SparseVec> comult(d);
    for (Index i = 0; i < d; ++i) comult[i] = SparseVec::basis(i * d + i, conductor);
    std::vector<Scalar> counit(d, Scalar::one(conductor));
    LinMap s;
    s.src = s.dst = d;
    s.cols.resize(d);
    for (Index i = 0; i < d; ++i) s.cols[i] = SparseVec::basis(g.inverse(i), conductor);
    return finalize_hopf(d, conductor, std::move(mult), SparseVec::basis(0, conductor),
                         std::move(comult), std::move(counit), std::move(s));
}

LegElement trivial_r(const HopfData& h) {
    LegElement r;
    r.dims = {h.dim, h.dim};
    for (const auto& [p, cp] : h.unit.e)
        for (const auto& [q, cq] : h.unit.e) r.add({p, q}, cp * cq);
    return r;
}

QTExample sweedler_example(const Scalar& lambda) {
    const unsigned n = lambda.conductor();
    const Scalar one = Scalar::one(n);
    const Scalar half(1, 2, n);
    const Index d = 4; // basis 1, g, x, gx

    std::vector<SparseVec> mult(16);
    auto set = [&](Index i, Index j, int target, int sign) {
        if (target >= 0)
            mult[i * 4 + j] = SparseVec::basis(static_cast<Index>(target),
                                               sign < 0 ? -one : one);
    };
    for (Index j = 0; j < 4; ++j) set(0, j, static_cast<int>(j), 1);
    set(1, 0, 1, 1);
    set(1, 1, 0, 1);
    set(1, 2, 3, 1);
    set(1, 3, 2, 1);
    set(2, 0, 2, 1);
    set(2, 1, 3, -1);
    set(2, 2, -1, 1);
    set(2, 3, -1, 1);
    set(3, 0, 3, 1);
    set(3, 1, 2, -1);
    set(3, 2, -1, 1);
    set(3, 3, -1, 1);

    std::vector<SparseVec> comult(4);
    comult[0] = SparseVec::basis(0 * 4 + 0, n);
    comult[1] = SparseVec::basis(1 * 4 + 1, n);
    {
        VecBuilder b;
        b.add(2 * 4 + 0, one); // x (x) 1
        b.add(1 * 4 + 2, one); // g (x) x
        comult[2] = b.freeze();
    }
    {
        VecBuilder b;
        b.add(3 * 4 + 1, one); // gx (x) g
        b.add(0 * 4 + 3, one); // 1 (x) gx
        comult[3] = b.freeze();
    }

    std::vector<Scalar> counit{one, one, Scalar::zero(n), Scalar::zero(n)};

    LinMap s;
    s.src = s.dst = 4;
    s.cols.resize(4);
    s.cols[0] = SparseVec::basis(0, n);
    s.cols[1] = SparseVec::basis(1, n);
    s.cols[2] = SparseVec::basis(3, -one); // S(x) = -gx
    s.cols[3] = SparseVec::basis(2, n);    // S(gx) = x

    QTExample ex;
    ex.hopf = finalize_hopf(4, n, std::move(mult), SparseVec::basis(0, n), std::move(comult),
                            std::move(counit), std::move(s));

    LegElement r;
    r.dims = {d, d};
    r.add({0, 0}, half);
    r.add({0, 1}, half);
    r.add({1, 0}, half);
    r.add({1, 1}, -half);
    // the lambda family compatible with Delta(x) = x(x)1 + g(x)x
    const Scalar lh = lambda * half;
    r.add({2, 2}, lh);
    r.add({2, 3}, -lh);
    r.add({3, 2}, lh);
    r.add({3, 3}, lh);
    ex.r = std::move(r);
    return ex;
}

QTExample drinfeld_double_example(const GroupTable& g0, unsigned conductor) {
    GroupTable g = g0;
    check_group(g);
    if (Index e = g.identity(); e != 0) {
        std::vector<Index> to(g.n);
        for (Index i = 0; i < g.n; ++i) to[i] = i;
        std::swap(to[0], to[e]);
        GroupTable h;
        h.n = g.n;
        h.mul.resize(g.mul.size());
        for (Index i = 0; i < g.n; ++i)
            for (Index j = 0; j < g.n; ++j)
                h.mul[static_cast<size_t>(i) * g.n + j] = to[g.at(to[i], to[j])];
        g = std::move(h);
    }
    const Index n = g.n;
    const Index d = n * n; // basis delta_a (x) h at index a*n + h
    const Scalar one = Scalar::one(conductor);

    std::vector<SparseVec> mult(static_cast<size_t>(d) * d);
    for (Index a = 0; a < n; ++a)
        for (Index h = 0; h < n; ++h)
            for (Index b = 0; b < n; ++b)
                for (Index k = 0; k < n; ++k) {
                    // (delta_a (x) h)(delta_b (x) k) = [a = h b h^-1] delta_a (x) hk
                    if (a == g.at(g.at(h, b), g.inverse(h)))
                        mult[static_cast<size_t>(a * n + h) * d + (b * n + k)] =
                            SparseVec::basis(a * n + g.at(h, k), one);
                }

    SparseVec unit;
    for (Index a = 0; a < n; ++a) unit.e.emplace_back(a * n + 0, one);

    std::vector<SparseVec> comult(d);
    for (Index gidx = 0; gidx < n; ++gidx)
        for (Index h = 0; h < n; ++h) {
            VecBuilder b;
            for (Index a = 0; a < n; ++a) {
                Index rest = g.at(g.inverse(a), gidx); // b with ab = g
                b.add((a * n + h) * d + (rest * n + h), one);
            }
            comult[gidx * n + h] = b.freeze();
        }

    std::vector<Scalar> counit(d, Scalar::zero(conductor));
    for (Index h = 0; h < n; ++h) counit[0 * n + h] = one;

    LinMap s;
    s.src = s.dst = d;
    s.cols.resize(d);
    for (Index a = 0; a < n; ++a)
        for (Index h = 0; h < n; ++h) {
            Index hi = g.inverse(h);
            Index target = g.at(g.at(hi, g.inverse(a)), h); // h^-1 a^-1 h
            s.cols[a * n + h] = SparseVec::basis(target * n + hi, one);
        }

    QTExample ex;
    ex.hopf = finalize_hopf(d, conductor, std::move(mult), std::move(unit), std::move(comult),
                            std::move(counit), std::move(s));
    Report rep = validate_hopf(ex.hopf);
    if (!rep.all_pass())
        throw Error(ErrorCode::InternalConventionError, "Drinfeld double fails Hopf axioms");

    LegElement r;
    r.dims = {d, d};
    for (Index gidx = 0; gidx < n; ++gidx)
        for (Index a = 0; a < n; ++a) r.add({gidx * n + 0, a * n + gidx}, one);
    ex.r = std::move(r);
    return ex;
}

ModuleData regular_module(const AlgebraData& a) {
    ModuleData m;
    m.dim = a.dim;
    m.rho.resize(a.dim);
    for (Index i = 0; i < a.dim; ++i)
        m.rho[i] = linmap_of_left_mult(a, SparseVec::basis(i, a.conductor));
    return m;
}

std::optional<std::vector<Index>> module_violation(const ModuleData& m, const AlgebraData& a) {
    LinMap unit_action = LinMap::zero(m.dim, m.dim);
    for (const auto& [i, c] : a.unit.e) {
        LinMap scaled = m.rho[i];
        for (auto& col : scaled.cols) col = vec_scale(col, c);
        unit_action = linmap_add(unit_action, scaled);
    }
    if (unit_action != LinMap::identity(m.dim, a.conductor)) return std::vector<Index>{0};
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < a.dim; ++j) {
            LinMap lhs = compose(m.rho[i], m.rho[j]);
            LinMap rhs = LinMap::zero(m.dim, m.dim);
            for (const auto& [k, c] : a.row(i, j).e) {
                LinMap scaled = m.rho[k];
                for (auto& col : scaled.cols) col = vec_scale(col, c);
                rhs = linmap_add(rhs, scaled);
            }
            if (lhs != rhs) return std::vector<Index>{i, j};
        }
    return std::nullopt;
}

} // namespace hopfx
