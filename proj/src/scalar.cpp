#include "hopfx/scalar.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace hopfx {

namespace cyclo {

unsigned totient(unsigned n) {
    unsigned result = n;
    unsigned m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

using Poly = std::vector<Rational>; // constant term first

Poly poly_trim(Poly p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    return p;
}

// exact division, remainder must vanish
Poly poly_divide(const Poly& num, const Poly& den) {
    if (den.size() > num.size())
        throw Error(ErrorCode::InternalConventionError, "cyclotomic division underflow");
    Poly rem = num;
    Poly quot(num.size() - den.size() + 1, Rational(0));
    for (size_t k = quot.size(); k-- > 0;) {
        Rational q = rem[k + den.size() - 1] / den.back();
        quot[k] = q;
        if (q != 0)
            for (size_t i = 0; i < den.size(); ++i) rem[k + i] -= q * den[i];
    }
    for (const auto& r : rem)
        if (r != 0) throw Error(ErrorCode::InternalConventionError, "inexact cyclotomic division");
    return poly_trim(std::move(quot));
}

Poly compute_cyclotomic(unsigned n) {
    if (n == 1) return {Rational(-1), Rational(1)}; // x - 1
    Poly p(n + 1, Rational(0));                     // x^n - 1
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d == 0) p = poly_divide(p, compute_cyclotomic(d));
    }
    return p;
}

} // namespace

const std::vector<Rational>& cyclotomic_polynomial(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, Poly> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_cyclotomic(n)).first;
    return it->second;
}

} // namespace cyclo

Scalar::Scalar(unsigned conductor) : n_(conductor), c_(cyclo::totient(conductor)) {
    if (conductor == 0) throw Error(ErrorCode::ParseError, "conductor must be positive");
}

Scalar::Scalar(unsigned conductor, const Rational& rat) : Scalar(conductor) { c_[0] = rat; }

Scalar::Scalar(long num, long den, unsigned conductor) : Scalar(conductor) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    c_[0] = Rational(num, den);
    c_[0].canonicalize();
}

Scalar Scalar::zeta(unsigned conductor, unsigned power) {
    Scalar z(conductor);
    power %= conductor;
    const unsigned deg = z.degree();
    if (power < deg) {
        z.c_[power] = 1;
        return z;
    }
    // z^power for power in [deg, N-1]: fold through the reduction table
    Scalar acc = Scalar::one(conductor);
    Scalar base(conductor);
    if (deg >= 2)
        base.c_[1] = 1;
    else
        base.c_[0] = -cyclo::cyclotomic_polynomial(conductor)[0]; // deg 1: z = -phi_0
    for (unsigned i = 0; i < power; ++i) acc = acc * base;
    return acc;
}

Scalar Scalar::from_coeffs(unsigned conductor, std::vector<Rational> coeffs) {
    Scalar s(conductor);
    if (coeffs.size() != s.c_.size())
        throw Error(ErrorCode::DimMismatch, "coefficient vector length != phi(N)");
    for (auto& r : coeffs) r.canonicalize();
    s.c_ = std::move(coeffs);
    return s;
}

void Scalar::check_same_field(const Scalar& o) const {
    if (n_ != o.n_)
        throw Error(ErrorCode::ConductorMismatch,
                    "conductor " + std::to_string(n_) + " vs " + std::to_string(o.n_));
}

bool Scalar::is_zero() const {
    for (const auto& r : c_)
        if (r != 0) return false;
    return true;
}

bool Scalar::is_one() const {
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool Scalar::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    Scalar r(*this);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_field(o);
    Scalar r(*this);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    const size_t deg = c_.size();
    if (deg == 1) {
        Scalar r(n_);
        r.c_[0] = c_[0] * o.c_[0];
        return r;
    }
    std::vector<Rational> prod(2 * deg - 1, Rational(0));
    for (size_t i = 0; i < deg; ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < deg; ++j) {
            if (o.c_[j] == 0) continue;
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    // fold powers >= deg top-down using the monic relation for z^deg
    const auto& phi = cyclo::cyclotomic_polynomial(n_);
    for (size_t k = 2 * deg - 2; k >= deg; --k) {
        const Rational coeff = prod[k];
        if (coeff != 0) {
            for (size_t i = 0; i < deg; ++i) prod[k - deg + i] -= coeff * phi[i];
            prod[k] = 0;
        }
        if (k == deg) break;
    }
    Scalar r(n_);
    for (size_t i = 0; i < deg; ++i) r.c_[i] = prod[i];
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (c_.size() == 1) {
        Scalar r(n_);
        r.c_[0] = 1 / c_[0];
        return r;
    }
    // extended Euclid in Q[z] against Phi_N
    using Poly = std::vector<Rational>;
    auto trim = [](Poly p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
        return p;
    };
    Poly r0 = cyclo::cyclotomic_polynomial(n_);
    Poly r1 = trim(c_);
    Poly t0{}, t1{Rational(1)};
    while (!r1.empty()) {
        // quotient of r0 by r1
        Poly q(r0.size() > r1.size() ? r0.size() - r1.size() + 1 : 1, Rational(0));
        Poly rem = r0;
        while (rem.size() >= r1.size() && !rem.empty()) {
            Rational f = rem.back() / r1.back();
            size_t shift = rem.size() - r1.size();
            q[shift] = f;
            for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= f * r1[i];
            rem = trim(std::move(rem));
            if (rem.empty()) break;
        }
        // t2 = t0 - q*t1
        Poly qt(q.size() + t1.size(), Rational(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < t1.size(); ++j) qt[i + j] += q[i] * t1[j];
        }
        Poly t2(std::max(t0.size(), qt.size()), Rational(0));
        for (size_t i = 0; i < t0.size(); ++i) t2[i] += t0[i];
        for (size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
        r0 = std::move(r1);
        r1 = trim(std::move(rem));
        t0 = std::move(t1);
        t1 = trim(std::move(t2));
    }
    // r0 is the gcd, a nonzero constant since Phi_N is irreducible
    if (r0.size() != 1)
        throw Error(ErrorCode::InternalConventionError, "cyclotomic gcd not constant");
    Scalar inv(n_);
    for (size_t i = 0; i < t0.size() && i < inv.c_.size(); ++i) inv.c_[i] = t0[i] / r0[0];
    return inv;
}

Scalar Scalar::operator/(const Scalar& o) const {
    check_same_field(o);
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
    if (c_.size() == 1) {
        Scalar r(n_);
        r.c_[0] = c_[0] / o.c_[0];
        return r;
    }
    return *this * o.inverse();
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar acc = Scalar::one(n_);
    Scalar base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool Scalar::operator==(const Scalar& o) const {
    if (n_ != o.n_) return false;
    return c_ == o.c_;
}

int Scalar::lex_cmp(const Scalar& o) const {
    check_same_field(o);
    for (size_t i = 0; i < c_.size(); ++i) {
        int c = cmp(c_[i], o.c_[i]);
        if (c != 0) return c;
    }
    return 0;
}

namespace {

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r.get_num();
    if (r.get_den() != 1) os << "/" << r.get_den();
    return os.str();
}

} // namespace

std::string Scalar::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t k = c_.size(); k-- > 0;) {
        const Rational& r = c_[k];
        if (r == 0) continue;
        Rational a = r;
        bool neg = a < 0;
        if (neg) a = -a;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        if (k == 0) {
            out += rational_str(a);
        } else {
            if (a != 1) {
                out += rational_str(a);
                out += "*";
            }
            out += "z";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    unsigned conductor;

    explicit Parser(const std::string& text, unsigned n) : s(text), conductor(n) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::ParseError, msg + " at position " + std::to_string(pos));
    }

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    mpz_class digits() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected digits");
        return mpz_class(s.substr(start, pos - start));
    }

    Rational rat(bool allow_sign) {
        skip_ws();
        bool neg = false;
        if (allow_sign && pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            neg = s[pos] == '-';
            ++pos;
        }
        mpz_class num = digits();
        mpz_class den = 1;
        if (accept('/')) {
            den = digits();
            if (den == 0) fail("zero denominator");
        }
        Rational r(num, den);
        r.canonicalize();
        return neg ? Rational(-r) : r;
    }

    // term after sign handling; sign applied by caller
    Scalar term() {
        skip_ws();
        if (pos < s.size() && (s[pos] == 'z' || s[pos] == 'Z')) {
            ++pos;
            unsigned power = 1;
            if (accept('^')) power = static_cast<unsigned>(digits().get_ui());
            return Scalar::zeta(conductor, power);
        }
        Rational coeff = rat(false);
        if (accept('*')) {
            skip_ws();
            if (pos >= s.size() || (s[pos] != 'z' && s[pos] != 'Z')) fail("expected z");
            ++pos;
            unsigned power = 1;
            if (accept('^')) power = static_cast<unsigned>(digits().get_ui());
            return Scalar(conductor, coeff) * Scalar::zeta(conductor, power);
        }
        return Scalar(conductor, coeff);
    }

    Scalar parse() {
        skip_ws();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            neg = s[pos] == '-';
            ++pos;
        }
        Scalar acc = term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            if (pos >= s.size()) break;
            if (s[pos] == '+' || s[pos] == '-') {
                bool minus = s[pos] == '-';
                ++pos;
                Scalar t = term();
                acc = minus ? acc - t : acc + t;
            } else {
                fail("unexpected character");
            }
        }
        return acc;
    }
};

} // namespace

Scalar Scalar::parse(const std::string& text, unsigned conductor) {
    Parser p(text, conductor);
    return p.parse();
}

} // namespace hopfx
