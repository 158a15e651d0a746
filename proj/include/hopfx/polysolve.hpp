#pragma once

#include <map>
#include <vector>

#include "hopfx/scalar.hpp"

namespace hopfx::polysolve {

// Exponent vector, one entry per variable; variable 0 is most significant in
// the lex order (std::map's std::less on vectors).
using Monomial = std::vector<uint16_t>;

// Polynomial over Q in a fixed number of variables.
struct Poly {
    size_t nvars = 0;
    std::map<Monomial, Rational> terms; // nonzero coefficients only

    bool is_zero() const { return terms.empty(); }
    const Monomial& leading_monomial() const { return terms.rbegin()->first; }
    const Rational& leading_coeff() const { return terms.rbegin()->second; }

    static Poly constant(size_t nvars, const Rational& c);
    static Poly variable(size_t nvars, size_t idx);

    void add_term(const Monomial& m, const Rational& c);
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rational& c);

// All rational roots of sum_i coeffs[i] t^i (exact; full divisor enumeration
// of the scaled integer polynomial).
std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs);

// Reduced lex Groebner basis (variable 0 largest), normalized and sorted.
std::vector<Poly> groebner_basis(std::vector<Poly> gens);

// All rational points of the variety of the given system.  Deterministic
// order.  Requires the ideal to be zero-dimensional when restricted to the
// rational points being enumerated; throws InternalConventionError if the lex
// Groebner basis exposes a free variable.
std::vector<std::vector<Rational>> solve_rational_system(std::vector<Poly> gens, size_t nvars);

} // namespace hopfx::polysolve
