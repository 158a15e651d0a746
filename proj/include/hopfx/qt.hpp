#pragma once

#include <optional>

#include "hopfx/hopf.hpp"
#include "hopfx/report.hpp"

namespace hopfx {

// A quasitriangular structure on a validated Hopf algebra.  Rinv and the
// double braiding are computed at construction, never supplied.
struct QTStructure {
    HopfData hopf;
    LegElement r;          // 2 legs
    LegElement rinv;       // solved in H (x) H
    LegElement dbraid;     // D = R^{2,1} R^{1,2}
    LegElement dbraid_inv;
    SparseVec u;           // Drinfeld element m((S x id)(R^{2,1}))
    SparseVec nu;          // u S(u)
    std::optional<SparseVec> ribbon;

    const HopfData& h() const { return hopf; }
    Index dim() const { return hopf.dim; }
    AlgebraData algebra() const { return hopf.algebra(); }
};

// Computes Rinv (throws NotInvertible), D, u, nu.  No identity is asserted
// here; validate_qt reports them all.
QTStructure make_qt(HopfData h, LegElement r, std::optional<SparseVec> ribbon = std::nullopt);

// Hexagons, intertwining, counit normalization, Yang-Baxter, the antipode
// identities for R^-1, the transposed-antipode identity, centrality and
// coproduct of nu, and the ribbon axioms when a ribbon is present.
Report validate_qt(const QTStructure& q);

// Recomputes (u, nu) by the defining formula and asserts centrality and
// Delta(nu) = D^-2 (nu x nu); throws InternalConventionError on failure.
std::pair<SparseVec, SparseVec> compute_u_nu(const QTStructure& q);

// Center of the algebra as the nullspace of the stacked commutator operators.
std::vector<SparseVec> center_basis(const AlgebraData& a);

// Searches the center for v with v^2 = nu, Delta(v) = D^-1 (v x v), S(v) = v,
// eps(v) = 1.  Returns the lexicographically smallest solution under the
// canonical basis order, or nothing.
std::optional<SparseVec> find_ribbon(const QTStructure& q);

// H^e = H^coop (x) H on the pair basis e_a (x) e_b at index a*d + b.
HopfData build_he(const HopfData& h);

// H^[2],coop: H (x) H componentwise as an algebra, with the R-conjugated
// coproduct, then coopposite.  Stored as an explicit tensor on the d^2 basis.
struct H2Coop {
    Index dim = 0; // d^2
    std::vector<SparseVec> comult; // rows over the flat (d^2, d^2) pair index
    std::vector<Scalar> counit;
};

// assert_coassociativity throws InternalConventionError on failure.
H2Coop build_h2coop(const QTStructure& q, bool assert_coassociativity = true);

// The H^e (equally H^[2],coop) action on the dual: (x (x) y) |> f = f(S^-1(x) . y).
struct HeAction {
    Index dim = 0;
    // row((a,b), i) = (e_a (x) e_b) |> e^i over the dual basis
    std::vector<SparseVec> rows;

    const SparseVec& row(Index a, Index b, Index i) const {
        return rows[(static_cast<size_t>(a) * dim + b) * dim + i];
    }

    // action of an arbitrary element of H (x) H on a dual vector
    SparseVec apply(const SparseVec& hh, const SparseVec& f) const;
};

HeAction he_action_on_dual(const HopfData& h);

// Module axiom of the action over H^e on every basis pair; first violation.
std::optional<std::vector<Index>> he_action_module_violation(const HopfData& h,
                                                             const HeAction& act);
// Module-algebra property for the untwisted dual product over H^e.
std::optional<std::vector<Index>> he_action_module_algebra_violation(const HopfData& h,
                                                                     const HeAction& act);

// F = R^{1,3} R^{1,4} in (H^e)^(x)2, four H legs.
LegElement build_f_twist(const QTStructure& q);
// F (D^{1,3})^k
LegElement twist_with_dbraid_power(const QTStructure& q, int k);

// Cocycle and counit-normalization conditions for a twist over H^e.
Report check_twist(const QTStructure& q, const LegElement& f);

// The module map realizing a twist equivalence: action by x in H^e on the
// dual.  Requires x invertible with eps(x) = 1; throws NotInvertible.
LinMap twist_equiv_map(const QTStructure& q, const SparseVec& x_he);

} // namespace hopfx
