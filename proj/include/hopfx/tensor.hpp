#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hopfx/scalar.hpp"

namespace hopfx {

using Index = uint32_t;
using FlatKey = uint64_t;

// Sparse vector over a based space: sorted by index, all stored entries nonzero.
struct SparseVec {
    std::vector<std::pair<Index, Scalar>> e;

    bool is_zero() const { return e.empty(); }
    bool operator==(const SparseVec& o) const { return e == o.e; }
    bool operator!=(const SparseVec& o) const { return !(*this == o); }

    static SparseVec basis(Index i, const Scalar& coeff);
    static SparseVec basis(Index i, unsigned conductor = 1);
};

// Accumulator that drops exact zeros on freeze.
class VecBuilder {
public:
    void add(Index i, const Scalar& c);
    void add_scaled(const SparseVec& v, const Scalar& c);
    SparseVec freeze() const;

private:
    std::map<Index, Scalar> acc_;
};

SparseVec vec_add(const SparseVec& a, const SparseVec& b);
SparseVec vec_sub(const SparseVec& a, const SparseVec& b);
SparseVec vec_scale(const SparseVec& a, const Scalar& c);
std::optional<Scalar> vec_coeff(const SparseVec& a, Index i);

// Bare associative algebra given by its multiplication tensor.  Associativity
// is not assumed at construction; callers assert it where required.
struct AlgebraData {
    Index dim = 0;
    unsigned conductor = 1;
    std::vector<SparseVec> mult; // row (i*dim + j) is e_i * e_j
    SparseVec unit;

    const SparseVec& row(Index i, Index j) const { return mult[static_cast<size_t>(i) * dim + j]; }
    SparseVec mul(const SparseVec& a, const SparseVec& b) const;

    // witness (i, j) with e_i * unit != e_i or unit * e_j != e_j, if any
    std::optional<std::pair<Index, Index>> unit_violation() const;
    // witness (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k), if any
    std::optional<std::array<Index, 3>> associativity_violation() const;
    // seeded sample of basis triples plus an optional exhaustive sweep over a
    // generator subset; deterministic for a fixed seed
    std::optional<std::array<Index, 3>> associativity_violation_sampled(
        const std::vector<Index>& generators, size_t samples, uint64_t seed) const;
};

AlgebraData tensor_algebra(const AlgebraData& a, const AlgebraData& b);

// Exact matrix between based spaces, stored by columns.
struct LinMap {
    Index src = 0, dst = 0;
    std::vector<SparseVec> cols; // cols[j] = image of e_j

    SparseVec apply(const SparseVec& v) const;
    bool operator==(const LinMap& o) const { return src == o.src && dst == o.dst && cols == o.cols; }
    bool operator!=(const LinMap& o) const { return !(*this == o); }

    static LinMap identity(Index n, unsigned conductor = 1);
    static LinMap zero(Index src, Index dst);
};

unsigned linmap_conductor(const LinMap& f);

LinMap compose(const LinMap& f, const LinMap& g); // f after g
LinMap linmap_add(const LinMap& f, const LinMap& g);
LinMap linmap_sub(const LinMap& f, const LinMap& g);
LinMap kron(const LinMap& f, const LinMap& g); // f on the first factor, g on the second
LinMap transpose(const LinMap& f);
LinMap linmap_pow(const LinMap& f, unsigned e);

Index rank(const LinMap& f);
LinMap invert(const LinMap& f); // throws NotInvertible

// Reduced row echelon form with deterministic pivoting.
struct Rref {
    std::vector<SparseVec> rows; // pivot columns strictly increasing, pivots = 1
    std::vector<Index> pivot_cols;
};
Rref rref(std::vector<SparseVec> rows, Index ncols);

// Basis of { x : rows . x = 0 }, deterministic order.
std::vector<SparseVec> nullspace(const std::vector<SparseVec>& rows, Index ncols,
                                 unsigned conductor = 1);

// Solve M x = b exactly; empty optional when inconsistent.
std::optional<SparseVec> solve(const LinMap& m, const SparseVec& b);

// Inverse of x in A via the left-multiplication operator; the two-sided
// property is verified before returning.  Throws NotInvertible.
SparseVec solve_in_algebra(const AlgebraData& a, const SparseVec& x);

LinMap linmap_of_left_mult(const AlgebraData& a, const SparseVec& x);
LinMap linmap_of_right_mult(const AlgebraData& a, const SparseVec& x);

// Sparse element of a tensor product of based spaces ("legs").  Entries are
// keyed by the row-major flattening of the per-leg indices; every stored
// coefficient is nonzero.
struct LegElement {
    std::vector<Index> dims;
    std::map<FlatKey, Scalar> ent;

    bool is_zero() const { return ent.empty(); }
    bool operator==(const LegElement& o) const { return dims == o.dims && ent == o.ent; }
    bool operator!=(const LegElement& o) const { return !(*this == o); }

    size_t legs() const { return dims.size(); }
    void set(const std::vector<Index>& idx, const Scalar& c);
    void add(const std::vector<Index>& idx, const Scalar& c);

    static LegElement from_vec(const SparseVec& v, Index dim);
    SparseVec to_vec() const; // single-leg only
};

std::vector<FlatKey> leg_strides(const std::vector<Index>& dims);
std::vector<Index> unflatten(FlatKey key, const std::vector<Index>& dims);
FlatKey flatten(const std::vector<Index>& idx, const std::vector<Index>& dims);

// x placed on the named legs of the ambient space, tensored with the given
// unit vectors everywhere else.  units[l] may be null for target legs.
LegElement embed(const LegElement& x, const std::vector<size_t>& target_legs,
                 const std::vector<Index>& ambient_dims,
                 const std::vector<const SparseVec*>& units);

// Leg-wise product with one multiplication per leg.
LegElement leg_product(const LegElement& x, const LegElement& y,
                       const std::vector<const AlgebraData*>& algs);

LegElement leg_add(const LegElement& x, const LegElement& y);
LegElement leg_sub(const LegElement& x, const LegElement& y);
LegElement leg_scale(const LegElement& x, const Scalar& c);

// order[i] = which old leg sits at position i of the result
LegElement permute_legs(const LegElement& x, const std::vector<size_t>& order);

// Replace the given leg by two legs via a coproduct tensor (rows over the
// flattened pair index).
LegElement apply_comult_to_leg(const LegElement& x, size_t leg,
                               const std::vector<SparseVec>& comult_rows, Index out1, Index out2);

// Merge `count` adjacent legs starting at `first` into one row-major leg.
LegElement group_legs(const LegElement& x, size_t first, size_t count);
// Split leg `leg` into the given dims (product must match).
LegElement split_leg(const LegElement& x, size_t leg, const std::vector<Index>& parts);

LegElement apply_linmap_to_leg(const LegElement& x, size_t leg, const LinMap& m);

// (id ... id, e^i, id ... id) contraction: keep entries whose leg index is i,
// dropping the leg.
LegElement contract_leg_basis(const LegElement& x, size_t leg, Index i);
// contraction of a leg against a covector
LegElement contract_leg_covector(const LegElement& x, size_t leg, const std::vector<Scalar>& w);

// Tensor product of unit vectors on each leg.
LegElement unit_leg_element(const std::vector<Index>& dims,
                            const std::vector<const SparseVec*>& units, unsigned conductor);

// Flatten all legs of x into the single index of a tensor-product space.
SparseVec leg_element_to_vec(const LegElement& x);
LegElement vec_to_leg_element(const SparseVec& v, const std::vector<Index>& dims);

// Left multiplication by x in the tensor product of the given algebras,
// without materializing the product algebra.
LinMap left_mult_legs(const std::vector<const AlgebraData*>& algs, const LegElement& x);

// Inverse of x in the tensor product algebra; the two-sided property is
// verified.  Throws NotInvertible.
LegElement invert_in_legs(const std::vector<const AlgebraData*>& algs, const LegElement& x);

} // namespace hopfx
