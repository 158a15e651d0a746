#pragma once

#include "hopfx/qt.hpp"

namespace hopfx {

// The k-twisted braided dual: the dual space with multiplication twisted by
// F (D^{1,3})^k through the H^e action.  The unit is the counit of H.
struct BraidedDual {
    int k = 0;
    AlgebraData alg;
};

struct BraidedDualOptions {
    // associativity is checked exhaustively up to this dimension, above it a
    // generator sweep plus a seeded sample is used
    Index exhaustive_limit = 64;
    size_t samples = 10000;
    uint64_t seed = 1;
    bool assert_associativity = true;
};

BraidedDual build_braided_dual(const QTStructure& q, int k, const BraidedDualOptions& opts = {});

// X = sum e^i (x) e_i on legs (dual, H).
LegElement canonical_x(const QTStructure& q);

// Eq. (3): (id x Delta)(X) = D^k (R^{1,2})^-1 X^{0,2} R^{1,2} X^{0,1},
// evaluated in dual (x) H (x) H.
bool check_k_reflection(const QTStructure& q, const BraidedDual& bd);

// The untwisted reflection equation
// R^{2,1} X^{0,2} R^{1,2} X^{0,1} = X^{0,1} R^{2,1} X^{0,2} R^{1,2}.
bool check_reflection_untwisted(const QTStructure& q, const BraidedDual& bd);

// Shift isomorphism between twisted duals: f -> (c (x) 1) |> f with c = nu
// (step 2) or the ribbon (step 1).  The verified direction is recorded.
struct ShiftIso {
    LinMap map;
    int from_k = 0;
    int to_k = 0;
};

// step must be 1 or 2; throws NoRibbon when step 1 is requested without a
// ribbon, IsoCheckFailed when multiplicativity fails in both directions.
ShiftIso shift_iso(const QTStructure& q, int k, int step);

// phi: dual -> H, f -> (f (x) id)(D).
LinMap factorization_map(const QTStructure& q);
Index factorization_rank(const QTStructure& q);
bool is_factorizable(const QTStructure& q);

} // namespace hopfx
