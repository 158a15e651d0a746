#include "hopfx/tensor.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "hopfx/errors.hpp"

namespace hopfx {

SparseVec SparseVec::basis(Index i, const Scalar& coeff) {
    SparseVec v;
    if (!coeff.is_zero()) v.e.emplace_back(i, coeff);
    return v;
}

SparseVec SparseVec::basis(Index i, unsigned conductor) {
    return basis(i, Scalar::one(conductor));
}

void VecBuilder::add(Index i, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = acc_.find(i);
    if (it == acc_.end())
        acc_.emplace(i, c);
    else
        it->second += c;
}

void VecBuilder::add_scaled(const SparseVec& v, const Scalar& c) {
    if (c.is_zero()) return;
    for (const auto& [i, x] : v.e) add(i, x * c);
}

SparseVec VecBuilder::freeze() const {
    SparseVec v;
    v.e.reserve(acc_.size());
    for (const auto& [i, x] : acc_)
        if (!x.is_zero()) v.e.emplace_back(i, x);
    return v;
}

SparseVec vec_add(const SparseVec& a, const SparseVec& b) {
    VecBuilder acc;
    for (const auto& [i, x] : a.e) acc.add(i, x);
    for (const auto& [i, x] : b.e) acc.add(i, x);
    return acc.freeze();
}

SparseVec vec_sub(const SparseVec& a, const SparseVec& b) {
    VecBuilder acc;
    for (const auto& [i, x] : a.e) acc.add(i, x);
    for (const auto& [i, x] : b.e) acc.add(i, -x);
    return acc.freeze();
}

SparseVec vec_scale(const SparseVec& a, const Scalar& c) {
    SparseVec v;
    if (c.is_zero()) return v;
    v.e.reserve(a.e.size());
    for (const auto& [i, x] : a.e) {
        Scalar y = x * c;
        if (!y.is_zero()) v.e.emplace_back(i, y);
    }
    return v;
}

std::optional<Scalar> vec_coeff(const SparseVec& a, Index i) {
    auto it = std::lower_bound(a.e.begin(), a.e.end(), i,
                               [](const auto& p, Index k) { return p.first < k; });
    if (it != a.e.end() && it->first == i) return it->second;
    return std::nullopt;
}

SparseVec AlgebraData::mul(const SparseVec& a, const SparseVec& b) const {
    VecBuilder acc;
    for (const auto& [i, ci] : a.e)
        for (const auto& [j, cj] : b.e) acc.add_scaled(row(i, j), ci * cj);
    return acc.freeze();
}

std::optional<std::pair<Index, Index>> AlgebraData::unit_violation() const {
    for (Index i = 0; i < dim; ++i) {
        SparseVec ei = SparseVec::basis(i, conductor);
        if (mul(ei, unit) != ei) return std::make_pair(i, Index(0));
        if (mul(unit, ei) != ei) return std::make_pair(Index(0), i);
    }
    return std::nullopt;
}

std::optional<std::array<Index, 3>> AlgebraData::associativity_violation() const {
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) {
            const SparseVec& ij = row(i, j);
            for (Index k = 0; k < dim; ++k) {
                VecBuilder left;
                for (const auto& [p, c] : ij.e) left.add_scaled(row(p, k), c);
                VecBuilder right;
                for (const auto& [q, c] : row(j, k).e) right.add_scaled(row(i, q), c);
                if (left.freeze() != right.freeze()) return std::array<Index, 3>{i, j, k};
            }
        }
    return std::nullopt;
}

std::optional<std::array<Index, 3>> AlgebraData::associativity_violation_sampled(
    const std::vector<Index>& generators, size_t samples, uint64_t seed) const {
    auto check_one = [&](Index i, Index j, Index k) -> bool {
        VecBuilder left;
        for (const auto& [p, c] : row(i, j).e) left.add_scaled(row(p, k), c);
        VecBuilder right;
        for (const auto& [q, c] : row(j, k).e) right.add_scaled(row(i, q), c);
        return left.freeze() == right.freeze();
    };
    for (Index i : generators)
        for (Index j : generators)
            for (Index k : generators)
                if (!check_one(i, j, k)) return std::array<Index, 3>{i, j, k};
    std::mt19937_64 rng(seed);
    for (size_t s = 0; s < samples; ++s) {
        Index i = static_cast<Index>(rng() % dim);
        Index j = static_cast<Index>(rng() % dim);
        Index k = static_cast<Index>(rng() % dim);
        if (!check_one(i, j, k)) return std::array<Index, 3>{i, j, k};
    }
    return std::nullopt;
}

AlgebraData tensor_algebra(const AlgebraData& a, const AlgebraData& b) {
    AlgebraData t;
    t.dim = a.dim * b.dim;
    t.conductor = a.conductor;
    t.mult.resize(static_cast<size_t>(t.dim) * t.dim);
    for (Index i1 = 0; i1 < a.dim; ++i1)
        for (Index i2 = 0; i2 < b.dim; ++i2)
            for (Index j1 = 0; j1 < a.dim; ++j1)
                for (Index j2 = 0; j2 < b.dim; ++j2) {
                    const SparseVec& ra = a.row(i1, j1);
                    const SparseVec& rb = b.row(i2, j2);
                    SparseVec out;
                    out.e.reserve(ra.e.size() * rb.e.size());
                    for (const auto& [p, cp] : ra.e)
                        for (const auto& [q, cq] : rb.e) {
                            Scalar c = cp * cq;
                            if (!c.is_zero())
                                out.e.emplace_back(p * b.dim + q, c);
                        }
                    std::sort(out.e.begin(), out.e.end(),
                              [](const auto& x, const auto& y) { return x.first < y.first; });
                    t.mult[(static_cast<size_t>(i1) * b.dim + i2) * t.dim + (static_cast<size_t>(j1) * b.dim + j2)] = std::move(out);
                }
    VecBuilder u;
    for (const auto& [p, cp] : a.unit.e)
        for (const auto& [q, cq] : b.unit.e) u.add(p * b.dim + q, cp * cq);
    t.unit = u.freeze();
    return t;
}

SparseVec LinMap::apply(const SparseVec& v) const {
    VecBuilder acc;
    for (const auto& [j, c] : v.e) {
        if (j >= src) throw Error(ErrorCode::DimMismatch, "LinMap::apply index out of range");
        acc.add_scaled(cols[j], c);
    }
    return acc.freeze();
}

LinMap LinMap::identity(Index n, unsigned conductor) {
    LinMap m;
    m.src = m.dst = n;
    m.cols.resize(n);
    for (Index i = 0; i < n; ++i) m.cols[i] = SparseVec::basis(i, conductor);
    return m;
}

unsigned linmap_conductor(const LinMap& f) {
    for (const auto& col : f.cols)
        if (!col.e.empty()) return col.e.front().second.conductor();
    return 1;
}

LinMap LinMap::zero(Index src, Index dst) {
    LinMap m;
    m.src = src;
    m.dst = dst;
    m.cols.resize(src);
    return m;
}

LinMap compose(const LinMap& f, const LinMap& g) {
    if (f.src != g.dst) throw Error(ErrorCode::DimMismatch, "compose shape mismatch");
    LinMap m;
    m.src = g.src;
    m.dst = f.dst;
    m.cols.resize(g.src);
    for (Index j = 0; j < g.src; ++j) m.cols[j] = f.apply(g.cols[j]);
    return m;
}

LinMap linmap_add(const LinMap& f, const LinMap& g) {
    if (f.src != g.src || f.dst != g.dst) throw Error(ErrorCode::DimMismatch, "linmap_add shape");
    LinMap m;
    m.src = f.src;
    m.dst = f.dst;
    m.cols.resize(f.src);
    for (Index j = 0; j < f.src; ++j) m.cols[j] = vec_add(f.cols[j], g.cols[j]);
    return m;
}

LinMap linmap_sub(const LinMap& f, const LinMap& g) {
    if (f.src != g.src || f.dst != g.dst) throw Error(ErrorCode::DimMismatch, "linmap_sub shape");
    LinMap m;
    m.src = f.src;
    m.dst = f.dst;
    m.cols.resize(f.src);
    for (Index j = 0; j < f.src; ++j) m.cols[j] = vec_sub(f.cols[j], g.cols[j]);
    return m;
}

LinMap kron(const LinMap& f, const LinMap& g) {
    LinMap m;
    m.src = f.src * g.src;
    m.dst = f.dst * g.dst;
    m.cols.resize(m.src);
    for (Index j1 = 0; j1 < f.src; ++j1)
        for (Index j2 = 0; j2 < g.src; ++j2) {
            SparseVec col;
            for (const auto& [i1, c1] : f.cols[j1].e)
                for (const auto& [i2, c2] : g.cols[j2].e) {
                    Scalar c = c1 * c2;
                    if (!c.is_zero()) col.e.emplace_back(i1 * g.dst + i2, c);
                }
            std::sort(col.e.begin(), col.e.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            m.cols[static_cast<size_t>(j1) * g.src + j2] = std::move(col);
        }
    return m;
}

LinMap transpose(const LinMap& f) {
    LinMap t;
    t.src = f.dst;
    t.dst = f.src;
    t.cols.resize(f.dst);
    std::vector<VecBuilder> acc(f.dst);
    for (Index j = 0; j < f.src; ++j)
        for (const auto& [i, c] : f.cols[j].e) acc[i].add(j, c);
    for (Index i = 0; i < f.dst; ++i) t.cols[i] = acc[i].freeze();
    return t;
}

LinMap linmap_pow(const LinMap& f, unsigned e) {
    if (f.src != f.dst) throw Error(ErrorCode::DimMismatch, "linmap_pow needs square map");
    LinMap acc = LinMap::identity(f.src);
    for (unsigned i = 0; i < e; ++i) acc = compose(acc, f);
    return acc;
}

namespace {

// Fully reduce `r` against the accumulated pivot rows.  Stored rows carry
// entries only at their own pivot and at non-pivot columns, so each
// subtraction strictly removes one pivot column and the loop terminates.
SparseVec reduce_row(SparseVec r, const std::vector<SparseVec>& rows,
                     const std::map<Index, size_t>& pivot_of_col) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [col, coeff] : r.e) {
            auto it = pivot_of_col.find(col);
            if (it == pivot_of_col.end()) continue;
            r = vec_sub(r, vec_scale(rows[it->second], coeff));
            changed = true;
            break;
        }
    }
    return r;
}

} // namespace

Rref rref(std::vector<SparseVec> input, Index ncols) {
    std::vector<SparseVec> rows;
    std::map<Index, size_t> pivot_of_col;
    for (auto& raw : input) {
        SparseVec r = reduce_row(std::move(raw), rows, pivot_of_col);
        if (r.e.empty()) continue;
        Index lead = r.e.front().first;
        if (lead >= ncols) throw Error(ErrorCode::DimMismatch, "rref column out of range");
        r = vec_scale(r, r.e.front().second.inverse());
        // eliminate the new pivot column from earlier rows
        for (auto& [col, idx] : pivot_of_col) {
            (void)col;
            auto c = vec_coeff(rows[idx], lead);
            if (c) rows[idx] = vec_sub(rows[idx], vec_scale(r, *c));
        }
        pivot_of_col.emplace(lead, rows.size());
        rows.push_back(std::move(r));
    }
    Rref out;
    out.rows.reserve(rows.size());
    out.pivot_cols.reserve(rows.size());
    for (const auto& [col, idx] : pivot_of_col) {
        out.pivot_cols.push_back(col);
        out.rows.push_back(rows[idx]);
    }
    return out;
}

std::vector<SparseVec> nullspace(const std::vector<SparseVec>& rows, Index ncols,
                                 unsigned conductor) {
    Rref r = rref(rows, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (Index c : r.pivot_cols) is_pivot[c] = true;
    std::vector<SparseVec> basis;
    for (Index f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        VecBuilder v;
        v.add(f, Scalar::one(conductor));
        for (size_t k = 0; k < r.rows.size(); ++k) {
            auto c = vec_coeff(r.rows[k], f);
            if (c) v.add(r.pivot_cols[k], -*c);
        }
        basis.push_back(v.freeze());
    }
    return basis;
}

Index rank(const LinMap& f) {
    // rank of the transpose equals the rank; columns serve directly as rows
    Rref r = rref(f.cols, f.dst);
    return static_cast<Index>(r.rows.size());
}

std::optional<SparseVec> solve(const LinMap& m, const SparseVec& b) {
    // equations are the rows of m; augment b as column m.src
    LinMap rowsview = transpose(m);
    std::vector<SparseVec> rows(m.dst);
    for (Index r = 0; r < m.dst; ++r) rows[r] = rowsview.cols[r];
    for (const auto& [i, c] : b.e) {
        VecBuilder acc;
        for (const auto& [j, x] : rows[i].e) acc.add(j, x);
        acc.add(m.src, c);
        rows[i] = acc.freeze();
    }
    Rref r = rref(std::move(rows), m.src + 1);
    SparseVec x;
    for (size_t k = 0; k < r.rows.size(); ++k) {
        if (r.pivot_cols[k] == m.src) return std::nullopt; // inconsistent
        auto c = vec_coeff(r.rows[k], m.src);
        if (c) x.e.emplace_back(r.pivot_cols[k], *c);
    }
    return x;
}

LinMap invert(const LinMap& f) {
    if (f.src != f.dst) throw Error(ErrorCode::NotInvertible, "non-square map");
    const Index n = f.src;
    const unsigned conductor = linmap_conductor(f);
    LinMap rowsview = transpose(f);
    std::vector<SparseVec> rows(n);
    for (Index r = 0; r < n; ++r) {
        VecBuilder acc;
        for (const auto& [j, x] : rowsview.cols[r].e) acc.add(j, x);
        acc.add(n + r, Scalar::one(conductor));
        rows[r] = acc.freeze();
    }
    Rref r = rref(std::move(rows), 2 * n);
    if (r.rows.size() != n) throw Error(ErrorCode::NotInvertible, "singular matrix");
    for (Index k = 0; k < n; ++k)
        if (r.pivot_cols[k] != k) throw Error(ErrorCode::NotInvertible, "singular matrix");
    std::vector<VecBuilder> cols(n);
    for (Index k = 0; k < n; ++k)
        for (const auto& [c, x] : r.rows[k].e)
            if (c >= n) cols[c - n].add(k, x);
    LinMap inv;
    inv.src = inv.dst = n;
    inv.cols.resize(n);
    for (Index j = 0; j < n; ++j) inv.cols[j] = cols[j].freeze();
    return inv;
}

SparseVec solve_in_algebra(const AlgebraData& a, const SparseVec& x) {
    LinMap lm = linmap_of_left_mult(a, x);
    auto y = solve(lm, a.unit);
    if (!y) throw Error(ErrorCode::NotInvertible, "singular left multiplication");
    if (a.mul(x, *y) != a.unit || a.mul(*y, x) != a.unit)
        throw Error(ErrorCode::NotInvertible, "one-sided inverse only");
    return *y;
}

LinMap linmap_of_left_mult(const AlgebraData& a, const SparseVec& x) {
    LinMap m;
    m.src = m.dst = a.dim;
    m.cols.resize(a.dim);
    for (Index j = 0; j < a.dim; ++j) m.cols[j] = a.mul(x, SparseVec::basis(j, a.conductor));
    return m;
}

LinMap linmap_of_right_mult(const AlgebraData& a, const SparseVec& x) {
    LinMap m;
    m.src = m.dst = a.dim;
    m.cols.resize(a.dim);
    for (Index j = 0; j < a.dim; ++j) m.cols[j] = a.mul(SparseVec::basis(j, a.conductor), x);
    return m;
}

std::vector<FlatKey> leg_strides(const std::vector<Index>& dims) {
    std::vector<FlatKey> s(dims.size(), 1);
    for (size_t l = dims.size(); l-- > 1;) s[l - 1] = s[l] * dims[l];
    return s;
}

std::vector<Index> unflatten(FlatKey key, const std::vector<Index>& dims) {
    std::vector<Index> idx(dims.size());
    for (size_t l = dims.size(); l-- > 0;) {
        idx[l] = static_cast<Index>(key % dims[l]);
        key /= dims[l];
    }
    return idx;
}

FlatKey flatten(const std::vector<Index>& idx, const std::vector<Index>& dims) {
    FlatKey key = 0;
    for (size_t l = 0; l < dims.size(); ++l) {
        if (idx[l] >= dims[l]) throw Error(ErrorCode::DimMismatch, "index out of range");
        key = key * dims[l] + idx[l];
    }
    return key;
}

void LegElement::set(const std::vector<Index>& idx, const Scalar& c) {
    FlatKey k = flatten(idx, dims);
    if (c.is_zero())
        ent.erase(k);
    else
        ent[k] = c;
}

void LegElement::add(const std::vector<Index>& idx, const Scalar& c) {
    if (c.is_zero()) return;
    FlatKey k = flatten(idx, dims);
    auto it = ent.find(k);
    if (it == ent.end()) {
        ent.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) ent.erase(it);
    }
}

LegElement LegElement::from_vec(const SparseVec& v, Index dim) {
    LegElement x;
    x.dims = {dim};
    for (const auto& [i, c] : v.e) x.ent.emplace(i, c);
    return x;
}

SparseVec LegElement::to_vec() const {
    if (dims.size() != 1) throw Error(ErrorCode::DimMismatch, "to_vec needs a single leg");
    SparseVec v;
    v.e.reserve(ent.size());
    for (const auto& [k, c] : ent) v.e.emplace_back(static_cast<Index>(k), c);
    return v;
}

LegElement embed(const LegElement& x, const std::vector<size_t>& target_legs,
                 const std::vector<Index>& ambient_dims,
                 const std::vector<const SparseVec*>& units) {
    if (target_legs.size() != x.dims.size())
        throw Error(ErrorCode::DimMismatch, "embed: wrong number of target legs");
    if (units.size() != ambient_dims.size())
        throw Error(ErrorCode::DimMismatch, "embed: wrong number of unit vectors");
    std::vector<bool> used(ambient_dims.size(), false);
    for (size_t t = 0; t < target_legs.size(); ++t) {
        size_t leg = target_legs[t];
        if (leg >= ambient_dims.size() || used[leg])
            throw Error(ErrorCode::DimMismatch, "embed: bad target leg");
        if (ambient_dims[leg] != x.dims[t])
            throw Error(ErrorCode::DimMismatch, "embed: leg dimension mismatch");
        used[leg] = true;
    }
    std::vector<size_t> other;
    for (size_t l = 0; l < ambient_dims.size(); ++l)
        if (!used[l]) {
            if (units[l] == nullptr)
                throw Error(ErrorCode::DimMismatch, "embed: missing unit for untargeted leg");
            if (units[l]->e.empty()) {
                LegElement zero;
                zero.dims = ambient_dims;
                return zero;
            }
            other.push_back(l);
        }

    LegElement out;
    out.dims = ambient_dims;
    std::vector<Index> idx(ambient_dims.size(), 0);
    for (const auto& [key, coeff] : x.ent) {
        std::vector<Index> src = unflatten(key, x.dims);
        for (size_t t = 0; t < target_legs.size(); ++t) idx[target_legs[t]] = src[t];
        // cartesian product over unit entries of the remaining legs
        std::vector<size_t> pos(other.size(), 0);
        while (true) {
            Scalar c = coeff;
            for (size_t o = 0; o < other.size(); ++o) {
                const auto& [ui, uc] = units[other[o]]->e[pos[o]];
                idx[other[o]] = ui;
                c = c * uc;
            }
            out.add(idx, c);
            size_t o = other.size();
            while (o-- > 0) {
                if (++pos[o] < units[other[o]]->e.size()) break;
                pos[o] = 0;
                if (o == 0) goto next_entry;
            }
            if (other.empty()) break;
        }
    next_entry:;
    }
    return out;
}

LegElement leg_product(const LegElement& x, const LegElement& y,
                       const std::vector<const AlgebraData*>& algs) {
    if (x.dims != y.dims) throw Error(ErrorCode::DimMismatch, "leg_product: shape mismatch");
    if (algs.size() != x.dims.size())
        throw Error(ErrorCode::DimMismatch, "leg_product: one algebra per leg required");
    for (size_t l = 0; l < algs.size(); ++l)
        if (algs[l]->dim != x.dims[l])
            throw Error(ErrorCode::DimMismatch, "leg_product: algebra dimension mismatch");

    const size_t nlegs = x.dims.size();
    std::vector<FlatKey> stride = leg_strides(x.dims);

    // pre-unflatten both operands
    std::vector<std::pair<std::vector<Index>, const Scalar*>> xs, ys;
    xs.reserve(x.ent.size());
    for (const auto& [k, c] : x.ent) xs.emplace_back(unflatten(k, x.dims), &c);
    ys.reserve(y.ent.size());
    for (const auto& [k, c] : y.ent) ys.emplace_back(unflatten(k, y.dims), &c);

    LegElement out;
    out.dims = x.dims;
    std::vector<const SparseVec*> rows(nlegs);
    for (const auto& [ix, cx] : xs) {
        for (const auto& [iy, cy] : ys) {
            bool dead = false;
            for (size_t l = 0; l < nlegs; ++l) {
                rows[l] = &algs[l]->row(ix[l], iy[l]);
                if (rows[l]->e.empty()) {
                    dead = true;
                    break;
                }
            }
            if (dead) continue;
            Scalar base = (*cx) * (*cy);
            if (base.is_zero()) continue;
            // cartesian expansion over the per-leg product rows
            std::vector<size_t> pos(nlegs, 0);
            while (true) {
                Scalar c = base;
                FlatKey key = 0;
                for (size_t l = 0; l < nlegs; ++l) {
                    const auto& [oi, oc] = rows[l]->e[pos[l]];
                    key += stride[l] * oi;
                    c = c * oc;
                }
                if (!c.is_zero()) {
                    auto it = out.ent.find(key);
                    if (it == out.ent.end()) {
                        out.ent.emplace(key, c);
                    } else {
                        it->second += c;
                        if (it->second.is_zero()) out.ent.erase(it);
                    }
                }
                size_t l = nlegs;
                bool carry = true;
                while (l-- > 0) {
                    if (++pos[l] < rows[l]->e.size()) {
                        carry = false;
                        break;
                    }
                    pos[l] = 0;
                }
                if (carry) break;
            }
        }
    }
    return out;
}

LegElement leg_add(const LegElement& x, const LegElement& y) {
    if (x.dims != y.dims) throw Error(ErrorCode::DimMismatch, "leg_add: shape mismatch");
    LegElement out = x;
    for (const auto& [k, c] : y.ent) {
        auto it = out.ent.find(k);
        if (it == out.ent.end()) {
            out.ent.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) out.ent.erase(it);
        }
    }
    return out;
}

LegElement leg_sub(const LegElement& x, const LegElement& y) {
    if (x.dims != y.dims) throw Error(ErrorCode::DimMismatch, "leg_sub: shape mismatch");
    LegElement out = x;
    for (const auto& [k, c] : y.ent) {
        auto it = out.ent.find(k);
        if (it == out.ent.end()) {
            out.ent.emplace(k, -c);
        } else {
            it->second -= c;
            if (it->second.is_zero()) out.ent.erase(it);
        }
    }
    return out;
}

LegElement leg_scale(const LegElement& x, const Scalar& c) {
    LegElement out;
    out.dims = x.dims;
    if (c.is_zero()) return out;
    for (const auto& [k, v] : x.ent) {
        Scalar w = v * c;
        if (!w.is_zero()) out.ent.emplace(k, w);
    }
    return out;
}

LegElement permute_legs(const LegElement& x, const std::vector<size_t>& order) {
    if (order.size() != x.dims.size()) throw Error(ErrorCode::DimMismatch, "permute_legs arity");
    LegElement out;
    out.dims.resize(order.size());
    for (size_t i = 0; i < order.size(); ++i) out.dims[i] = x.dims[order[i]];
    std::vector<Index> dst(order.size());
    for (const auto& [k, c] : x.ent) {
        std::vector<Index> src = unflatten(k, x.dims);
        for (size_t i = 0; i < order.size(); ++i) dst[i] = src[order[i]];
        out.ent.emplace(flatten(dst, out.dims), c);
    }
    return out;
}

LegElement apply_comult_to_leg(const LegElement& x, size_t leg,
                               const std::vector<SparseVec>& comult_rows, Index out1, Index out2) {
    if (leg >= x.dims.size()) throw Error(ErrorCode::DimMismatch, "apply_comult_to_leg leg");
    if (comult_rows.size() != x.dims[leg])
        throw Error(ErrorCode::DimMismatch, "apply_comult_to_leg rows");
    LegElement out;
    out.dims.reserve(x.dims.size() + 1);
    for (size_t l = 0; l < x.dims.size(); ++l) {
        if (l == leg) {
            out.dims.push_back(out1);
            out.dims.push_back(out2);
        } else {
            out.dims.push_back(x.dims[l]);
        }
    }
    std::vector<Index> dst(out.dims.size());
    for (const auto& [k, c] : x.ent) {
        std::vector<Index> src = unflatten(k, x.dims);
        for (const auto& [pair, pc] : comult_rows[src[leg]].e) {
            size_t d = 0;
            for (size_t l = 0; l < x.dims.size(); ++l) {
                if (l == leg) {
                    dst[d++] = pair / out2;
                    dst[d++] = pair % out2;
                } else {
                    dst[d++] = src[l];
                }
            }
            Scalar w = c * pc;
            if (w.is_zero()) continue;
            FlatKey key = flatten(dst, out.dims);
            auto it = out.ent.find(key);
            if (it == out.ent.end()) {
                out.ent.emplace(key, w);
            } else {
                it->second += w;
                if (it->second.is_zero()) out.ent.erase(it);
            }
        }
    }
    return out;
}

LegElement group_legs(const LegElement& x, size_t first, size_t count) {
    if (first + count > x.dims.size() || count == 0)
        throw Error(ErrorCode::DimMismatch, "group_legs range");
    LegElement out;
    for (size_t l = 0; l < first; ++l) out.dims.push_back(x.dims[l]);
    Index merged = 1;
    for (size_t l = first; l < first + count; ++l) merged *= x.dims[l];
    out.dims.push_back(merged);
    for (size_t l = first + count; l < x.dims.size(); ++l) out.dims.push_back(x.dims[l]);
    out.ent = x.ent; // row-major flattening is unchanged by merging adjacent legs
    return out;
}

LegElement split_leg(const LegElement& x, size_t leg, const std::vector<Index>& parts) {
    if (leg >= x.dims.size()) throw Error(ErrorCode::DimMismatch, "split_leg leg");
    Index prod = 1;
    for (Index p : parts) prod *= p;
    if (prod != x.dims[leg]) throw Error(ErrorCode::DimMismatch, "split_leg dims");
    LegElement out;
    for (size_t l = 0; l < leg; ++l) out.dims.push_back(x.dims[l]);
    for (Index p : parts) out.dims.push_back(p);
    for (size_t l = leg + 1; l < x.dims.size(); ++l) out.dims.push_back(x.dims[l]);
    out.ent = x.ent;
    return out;
}

LegElement apply_linmap_to_leg(const LegElement& x, size_t leg, const LinMap& m) {
    if (leg >= x.dims.size()) throw Error(ErrorCode::DimMismatch, "apply_linmap_to_leg leg");
    if (m.src != x.dims[leg]) throw Error(ErrorCode::DimMismatch, "apply_linmap_to_leg shape");
    LegElement out;
    out.dims = x.dims;
    out.dims[leg] = m.dst;
    std::vector<Index> idx;
    for (const auto& [k, c] : x.ent) {
        idx = unflatten(k, x.dims);
        for (const auto& [r, mc] : m.cols[idx[leg]].e) {
            Scalar w = c * mc;
            if (w.is_zero()) continue;
            idx[leg] = r;
            FlatKey key = flatten(idx, out.dims);
            auto it = out.ent.find(key);
            if (it == out.ent.end()) {
                out.ent.emplace(key, w);
            } else {
                it->second += w;
                if (it->second.is_zero()) out.ent.erase(it);
            }
            idx = unflatten(k, x.dims);
        }
    }
    return out;
}

LegElement contract_leg_basis(const LegElement& x, size_t leg, Index i) {
    if (leg >= x.dims.size()) throw Error(ErrorCode::DimMismatch, "contract_leg_basis leg");
    LegElement out;
    for (size_t l = 0; l < x.dims.size(); ++l)
        if (l != leg) out.dims.push_back(x.dims[l]);
    std::vector<Index> dst(out.dims.size());
    for (const auto& [k, c] : x.ent) {
        std::vector<Index> src = unflatten(k, x.dims);
        if (src[leg] != i) continue;
        size_t d = 0;
        for (size_t l = 0; l < x.dims.size(); ++l)
            if (l != leg) dst[d++] = src[l];
        out.ent.emplace(flatten(dst, out.dims), c);
    }
    return out;
}

LegElement contract_leg_covector(const LegElement& x, size_t leg, const std::vector<Scalar>& w) {
    if (leg >= x.dims.size()) throw Error(ErrorCode::DimMismatch, "contract_leg_covector leg");
    if (w.size() != x.dims[leg]) throw Error(ErrorCode::DimMismatch, "contract_leg_covector size");
    LegElement out;
    for (size_t l = 0; l < x.dims.size(); ++l)
        if (l != leg) out.dims.push_back(x.dims[l]);
    std::vector<Index> dst(out.dims.size());
    for (const auto& [k, c] : x.ent) {
        std::vector<Index> src = unflatten(k, x.dims);
        Scalar coeff = c * w[src[leg]];
        if (coeff.is_zero()) continue;
        size_t d = 0;
        for (size_t l = 0; l < x.dims.size(); ++l)
            if (l != leg) dst[d++] = src[l];
        FlatKey key = flatten(dst, out.dims);
        auto it = out.ent.find(key);
        if (it == out.ent.end()) {
            out.ent.emplace(key, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) out.ent.erase(it);
        }
    }
    return out;
}

LegElement unit_leg_element(const std::vector<Index>& dims,
                            const std::vector<const SparseVec*>& units, unsigned conductor) {
    LegElement none;
    none.dims = {};
    none.ent.emplace(0, Scalar::one(conductor));
    LegElement acc = none;
    for (size_t l = 0; l < dims.size(); ++l) {
        LegElement next;
        next.dims = acc.dims;
        next.dims.push_back(dims[l]);
        for (const auto& [k, c] : acc.ent)
            for (const auto& [i, uc] : units[l]->e) {
                Scalar w = c * uc;
                if (!w.is_zero()) next.ent.emplace(k * dims[l] + i, w);
            }
        acc = std::move(next);
    }
    return acc;
}

SparseVec leg_element_to_vec(const LegElement& x) {
    SparseVec v;
    v.e.reserve(x.ent.size());
    for (const auto& [k, c] : x.ent) v.e.emplace_back(static_cast<Index>(k), c);
    return v;
}

LegElement vec_to_leg_element(const SparseVec& v, const std::vector<Index>& dims) {
    LegElement x;
    x.dims = dims;
    FlatKey total = 1;
    for (Index d : dims) total *= d;
    for (const auto& [i, c] : v.e) {
        if (i >= total) throw Error(ErrorCode::DimMismatch, "vec_to_leg_element index");
        x.ent.emplace(i, c);
    }
    return x;
}

LinMap left_mult_legs(const std::vector<const AlgebraData*>& algs, const LegElement& x) {
    FlatKey total = 1;
    for (size_t l = 0; l < algs.size(); ++l) {
        if (algs[l]->dim != x.dims[l])
            throw Error(ErrorCode::DimMismatch, "left_mult_legs dimension mismatch");
        total *= algs[l]->dim;
    }
    unsigned conductor = algs.empty() ? 1 : algs[0]->conductor;
    LinMap m;
    m.src = m.dst = static_cast<Index>(total);
    m.cols.resize(m.src);
    for (Index j = 0; j < m.src; ++j) {
        LegElement basis = vec_to_leg_element(SparseVec::basis(j, conductor), x.dims);
        m.cols[j] = leg_element_to_vec(leg_product(x, basis, algs));
    }
    return m;
}

LegElement invert_in_legs(const std::vector<const AlgebraData*>& algs, const LegElement& x) {
    LinMap lm = left_mult_legs(algs, x);
    std::vector<const SparseVec*> units(algs.size());
    std::vector<Index> dims(algs.size());
    for (size_t l = 0; l < algs.size(); ++l) {
        units[l] = &algs[l]->unit;
        dims[l] = algs[l]->dim;
    }
    unsigned conductor = algs.empty() ? 1 : algs[0]->conductor;
    LegElement unit = unit_leg_element(dims, units, conductor);
    auto y = solve(lm, leg_element_to_vec(unit));
    if (!y) throw Error(ErrorCode::NotInvertible, "singular element in tensor algebra");
    LegElement inv = vec_to_leg_element(*y, x.dims);
    if (leg_product(x, inv, algs) != unit || leg_product(inv, x, algs) != unit)
        throw Error(ErrorCode::NotInvertible, "one-sided inverse only");
    return inv;
}

} // namespace hopfx
