#pragma once

#include "hopfx/report.hpp"
#include "hopfx/tensor.hpp"

namespace hopfx {

// Structure constants of a finite-dimensional Hopf algebra over Q(zeta_N).
// comult[i] is Delta(e_i) as a sparse vector over the row-major pair index
// j*dim + k.  antipode_inv is computed at construction, never supplied.
struct HopfData {
    Index dim = 0;
    unsigned conductor = 1;
    std::vector<SparseVec> mult;
    SparseVec unit;
    std::vector<SparseVec> comult;
    std::vector<Scalar> counit;
    LinMap antipode;
    LinMap antipode_inv;
    bool antipode_singular = false;

    AlgebraData algebra() const {
        AlgebraData a;
        a.dim = dim;
        a.conductor = conductor;
        a.mult = mult;
        a.unit = unit;
        return a;
    }

    const SparseVec& mult_row(Index i, Index j) const {
        return mult[static_cast<size_t>(i) * dim + j];
    }
};

// Fills antipode_inv (marking antipode_singular instead of throwing).
HopfData finalize_hopf(Index dim, unsigned conductor, std::vector<SparseVec> mult, SparseVec unit,
                       std::vector<SparseVec> comult, std::vector<Scalar> counit, LinMap antipode);

// Bialgebra + antipode axioms, one report entry per axiom, witness = first
// failing basis tuple.
Report validate_hopf(const HopfData& h);

// Full linear dual on the dual basis: multiplication is the transpose of the
// coproduct and vice versa.
HopfData dual_hopf(const HopfData& h);

// Convolution algebra on the dual space (the algebra part of dual_hopf).
AlgebraData dual_algebra(const HopfData& h);

// Finite group given by its multiplication table, mul[i*n+j] = index of g_i g_j.
struct GroupTable {
    Index n = 0;
    std::vector<Index> mul;

    Index at(Index i, Index j) const { return mul[static_cast<size_t>(i) * n + j]; }
    Index identity() const;
    Index inverse(Index i) const;
};

// Throws NotAGroup with a reason.
void check_group(const GroupTable& g);

GroupTable cyclic_group(Index n);
GroupTable symmetric_group_s3();

// Group algebra with the identity element normalized to basis index 0.
HopfData group_algebra(GroupTable g, unsigned conductor = 1);

// R = 1 (x) 1 for cocommutative fixtures.
LegElement trivial_r(const HopfData& h);

struct QTExample {
    HopfData hopf;
    LegElement r;
};

// 4-dimensional Sweedler algebra with its one-parameter R-matrix family.
QTExample sweedler_example(const Scalar& lambda);

// Drinfeld double D(G) on the basis delta_g (x) h.
QTExample drinfeld_double_example(const GroupTable& g, unsigned conductor = 1);

// Matrices of a left module over an algebra.
struct ModuleData {
    Index dim = 0;
    std::vector<LinMap> rho; // one matrix per basis element of the acting algebra
};

ModuleData regular_module(const AlgebraData& a);

// First violated module axiom, if any: {i, j} such that rho(e_i)rho(e_j) !=
// rho(e_i e_j), or {i} when rho(unit) != id (encoded as a 1-element vector).
std::optional<std::vector<Index>> module_violation(const ModuleData& m, const AlgebraData& a);

} // namespace hopfx
