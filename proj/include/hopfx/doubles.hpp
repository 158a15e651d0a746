#pragma once

#include "hopfx/braided.hpp"
#include "hopfx/qt.hpp"

namespace hopfx {

// T = (R^{3,2})^-1 (R^{3,1})^-1 (R^{4,2})^-1 R^{1,4} on four H legs.
LegElement build_t(const QTStructure& q);

// Hexagon axioms for T over the twisted coproduct of H^[2],coop.
bool check_t_hexagons(const QTStructure& q);
bool check_t_hexagons(const QTStructure& q, const LegElement& t);

// Braided tensor square of ~H_k with cross relations governed by T.
// Basis e^i (x) e^j at flat index i*d + j; f (x) g = (f (x) 1)(1 (x) g).
struct EllipticDouble {
    int k = 0;
    AlgebraData alg;  // dim d^2
    LegElement x, y;  // canonical elements on legs (E, H)
    BraidedDual base; // the underlying ~H_k
};

struct EllipticOptions {
    Index exhaustive_limit = 16; // full d^6 sweep up to this dimension
    size_t samples = 10000;
    uint64_t seed = 1;
    bool assert_associativity = true;
};

EllipticDouble build_elliptic(const QTStructure& q, int k, const EllipticOptions& opts = {});

// Eq. (2): X^{0,1} R^{2,1} Y^{0,2} = R^{2,1} Y^{0,2} R^{1,2} X^{0,1} R^{2,1}
// for arbitrary X_B, Y_B in B (x) H.
bool check_eq2(const QTStructure& q, const AlgebraData& b, const LegElement& xb,
               const LegElement& yb);
// Eq. (3) with parameter k for arbitrary X_B in B (x) H.
bool check_eq3(const QTStructure& q, int k, const AlgebraData& b, const LegElement& xb);

bool check_elliptic_relation(const QTStructure& q, const EllipticDouble& e);

// Universal morphism of the k-twisted dual: f -> (id (x) f)(X_B).
// Preconditions (Eq. (3)) and the homomorphism property are verified.
LinMap reflection_morphism(const QTStructure& q, const BraidedDual& dual, const AlgebraData& b,
                           const LegElement& xb);

// Universal morphism of the elliptic double:
//   e^i (x) e^j -> [(id (x) e^i)(X_B)] . [(id (x) e^j)(Y_B)].
// Verifies Eq. (3) for both arguments, Eq. (2) jointly, then unitality and
// multiplicativity on every basis pair.
LinMap universal_morphism(const QTStructure& q, const EllipticDouble& e, const AlgebraData& b,
                          const LegElement& xb, const LegElement& yb);

// D_H = ~H_0  (x)| (H (x) 1): basis e^i (x) e_j at flat index i*d + j.
struct HeisenbergDouble {
    AlgebraData alg;
    LegElement xd, yd; // canonical element and the image of the double braiding
    BraidedDual base;  // ~H_0
};

// Performs the coideal membership check (CoidealCheckFailed) and asserts
// associativity of the smash product.
HeisenbergDouble build_heisenberg(const QTStructure& q);

struct PhiResult {
    LinMap map;
    Index rank = 0;
    std::optional<LinMap> inverse; // present exactly when bijective
};

// Phi: E^(0) -> D_H via the universal property applied to (X_D, Y_D);
// asserts rank(Phi) = d * rank(phi).
PhiResult build_phi(const QTStructure& q, const EllipticDouble& e0, const HeisenbergDouble& dh);

} // namespace hopfx
