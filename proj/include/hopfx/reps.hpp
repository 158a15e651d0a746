#pragma once

#include "hopfx/doubles.hpp"

namespace hopfx {

// Operators of the punctured-torus braid group on M (x) V^(x)n, where M is a
// module over the elliptic (or Heisenberg) double and V a module over H.
struct BraidRep {
    Index n = 0;
    Index space = 0;
    std::vector<LinMap> x;     // X_1..X_n
    std::vector<LinMap> y;     // Y_1..Y_n
    std::vector<LinMap> sigma; // sigma_1..sigma_{n-1}
};

// X_1 = (rho_M x rho_V)(Xcan) on legs (0,1), sigma_i = flip . (rho_V x rho_V)(R),
// X_{i+1} = sigma_i X_i sigma_i and likewise for Y.  Module axioms are
// verified first (ModuleAxiomFailed).
BraidRep build_braid_rep(const QTStructure& q, const AlgebraData& double_alg,
                         const LegElement& xcan, const LegElement& ycan, const ModuleData& m,
                         const ModuleData& v, Index n);

// Exact matrix identities for the braid presentation.
Report check_presentation(const BraidRep& rep);

// SL2(Z)~ generators on E^(1).
struct MCGAction {
    LinMap a, b, z; // z = a^4
};

// A = phi_(Y, Y X^-1 Y^-1), B = phi_(X, Y X^-1); inverses are computed in the
// tensor algebra E^(1) (x) H.
MCGAction build_mcg_action(const QTStructure& q, const EllipticDouble& e1);

Report check_mcg_relations(const MCGAction& act);

// Quantum Fourier transform on the Heisenberg double, transported through Phi
// and the slotwise ribbon shift between E^(0) and E^(1).
struct FourierResult {
    LinMap theta;       // verified iso E^(0) -> E^(1)
    LinMap f;           // automorphism of D_H
    LinMap b_transport; // the B generator transported the same way
};

FourierResult fourier_transform(const QTStructure& q);
FourierResult fourier_transform(const QTStructure& q, const EllipticDouble& e0,
                                const EllipticDouble& e1, const HeisenbergDouble& dh,
                                const PhiResult& phi, const MCGAction& mcg);

} // namespace hopfx
