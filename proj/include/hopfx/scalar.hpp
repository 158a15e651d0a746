#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hopfx/errors.hpp"

namespace hopfx {

using Rational = mpq_class;

// Exact element of Q(zeta_N), stored as a coefficient vector of length
// phi(N) in the power basis 1, z, ..., z^(phi(N)-1), fully reduced modulo the
// N-th cyclotomic polynomial.  N = 1 is plain Q.  Values are immutable in
// spirit: every operation returns a fresh canonical Scalar, so instances can
// be shared freely across threads.
class Scalar {
public:
    Scalar() : n_(1), c_(1) {}
    explicit Scalar(unsigned conductor);
    Scalar(unsigned conductor, const Rational& rat);
    Scalar(long num, long den = 1, unsigned conductor = 1);

    static Scalar zero(unsigned conductor) { return Scalar(conductor); }
    static Scalar one(unsigned conductor) { return Scalar(conductor, Rational(1)); }
    // zeta_N^power
    static Scalar zeta(unsigned conductor, unsigned power = 1);
    static Scalar from_coeffs(unsigned conductor, std::vector<Rational> coeffs);

    unsigned conductor() const { return n_; }
    unsigned degree() const { return static_cast<unsigned>(c_.size()); }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    // true when the element lies in Q (only the constant coefficient nonzero)
    bool is_rational() const;
    const Rational& rational_part() const { return c_[0]; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar inverse() const;
    Scalar pow(long e) const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Total order used only for deterministic tie-breaking (lexicographic on
    // the coefficient vector); not a field order.
    int lex_cmp(const Scalar& o) const;

    // Canonical text form; parse(str()) == *this.
    std::string str() const;

    // Parses the grammar
    //   rat    := int | int "/" posint
    //   term   := rat | rat "*" "z" ["^" posint] | "z" ["^" posint]
    //   scalar := ["-"] term (("+"|"-") term)*
    // where "z" denotes zeta_N.  Throws ParseError with a character position.
    static Scalar parse(const std::string& text, unsigned conductor);

private:
    void check_same_field(const Scalar& o) const;

    unsigned n_;
    std::vector<Rational> c_;
};

namespace cyclo {

// Euler phi
unsigned totient(unsigned n);

// Coefficients of the N-th cyclotomic polynomial, constant term first,
// monic of degree phi(N).  Cached per conductor.
const std::vector<Rational>& cyclotomic_polynomial(unsigned n);

} // namespace cyclo

} // namespace hopfx
