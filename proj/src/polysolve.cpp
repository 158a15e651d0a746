#include "hopfx/polysolve.hpp"

#include <algorithm>

#include "hopfx/errors.hpp"

namespace hopfx::polysolve {

Poly Poly::constant(size_t nvars, const Rational& c) {
    Poly p;
    p.nvars = nvars;
    if (c != 0) p.terms.emplace(Monomial(nvars, 0), c);
    return p;
}

Poly Poly::variable(size_t nvars, size_t idx) {
    Poly p;
    p.nvars = nvars;
    Monomial m(nvars, 0);
    m[idx] = 1;
    p.terms.emplace(std::move(m), Rational(1));
    return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [m, c] : b.terms) out.add_term(m, c);
    return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [m, c] : b.terms) out.add_term(m, Rational(-c));
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    out.nvars = a.nvars;
    Monomial m(a.nvars);
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            for (size_t v = 0; v < a.nvars; ++v) m[v] = static_cast<uint16_t>(ma[v] + mb[v]);
            out.add_term(m, ca * cb);
        }
    return out;
}

Poly poly_scale(const Poly& a, const Rational& c) {
    Poly out;
    out.nvars = a.nvars;
    if (c == 0) return out;
    for (const auto& [m, x] : a.terms) out.terms.emplace(m, x * c);
    return out;
}

namespace {

bool divides(const Monomial& a, const Monomial& b) {
    for (size_t v = 0; v < a.size(); ++v)
        if (a[v] > b[v]) return false;
    return true;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
    Monomial q(a.size());
    for (size_t v = 0; v < a.size(); ++v) q[v] = static_cast<uint16_t>(a[v] - b[v]);
    return q;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial l(a.size());
    for (size_t v = 0; v < a.size(); ++v) l[v] = std::max(a[v], b[v]);
    return l;
}

bool coprime(const Monomial& a, const Monomial& b) {
    for (size_t v = 0; v < a.size(); ++v)
        if (a[v] > 0 && b[v] > 0) return false;
    return true;
}

Poly shift_mul(const Poly& p, const Monomial& m, const Rational& c) {
    Poly out;
    out.nvars = p.nvars;
    Monomial t(p.nvars);
    for (const auto& [pm, pc] : p.terms) {
        for (size_t v = 0; v < p.nvars; ++v) t[v] = static_cast<uint16_t>(pm[v] + m[v]);
        out.terms.emplace(t, pc * c);
    }
    return out;
}

// normal form of p modulo the basis
Poly reduce(Poly p, const std::vector<Poly>& basis) {
    Poly rem;
    rem.nvars = p.nvars;
    while (!p.is_zero()) {
        const Monomial& lm = p.leading_monomial();
        bool divided = false;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            if (divides(g.leading_monomial(), lm)) {
                Rational f = p.leading_coeff() / g.leading_coeff();
                p = poly_sub(p, shift_mul(g, mono_div(lm, g.leading_monomial()), f));
                divided = true;
                break;
            }
        }
        if (!divided) {
            rem.add_term(lm, p.leading_coeff());
            p.terms.erase(std::prev(p.terms.end()));
        }
    }
    return rem;
}

Poly normalize(Poly p) {
    if (p.is_zero()) return p;
    Rational lc = p.leading_coeff();
    for (auto& [m, c] : p.terms) c /= lc;
    return p;
}

std::vector<Poly> buchberger_impl(std::vector<Poly> gens) {
    std::vector<Poly> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(normalize(std::move(g)));
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);
    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        const Monomial &mi = basis[i].leading_monomial(), &mj = basis[j].leading_monomial();
        if (coprime(mi, mj)) continue;
        Monomial l = mono_lcm(mi, mj);
        Poly s = poly_sub(shift_mul(basis[i], mono_div(l, mi), Rational(1)),
                          shift_mul(basis[j], mono_div(l, mj), Rational(1)));
        Poly r = reduce(std::move(s), basis);
        if (!r.is_zero()) {
            r = normalize(std::move(r));
            for (size_t k = 0; k < basis.size(); ++k) pairs.emplace_back(k, basis.size());
            basis.push_back(std::move(r));
        }
    }
    // minimalize: drop generators whose leading monomial is covered by another
    std::vector<Poly> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        const Monomial& mi = basis[i].leading_monomial();
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (j == i) continue;
            const Monomial& mj = basis[j].leading_monomial();
            if (!divides(mj, mi)) continue;
            if (mj == mi ? j < i : true) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // tail-reduce; leading monomials are pairwise non-divisible, so nothing vanishes
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (size_t k = 0; k < minimal.size(); ++k)
            if (k != i) others.push_back(minimal[k]);
        minimal[i] = normalize(reduce(minimal[i], others));
    }
    std::sort(minimal.begin(), minimal.end(),
              [](const Poly& a, const Poly& b) { return a.terms < b.terms; });
    return minimal;
}

// full factorization for divisor enumeration (trial division + Pollard-Brent)
void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (mpz_class p = 2; p * p <= n && p < 100000; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 32)) {
        ++out[n];
        return;
    }
    // Pollard-Brent rho
    mpz_class x = 2, y = 2, d = 1, c = 1;
    while (true) {
        x = 2;
        y = 2;
        d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            mpz_class diff = x > y ? x - y : y - x;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) break;
        ++c;
    }
    factor_into(d, out);
    factor_into(n / d, out);
}

std::vector<mpz_class> divisors(const mpz_class& n) {
    std::map<mpz_class, unsigned> f;
    factor_into(n, f);
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : f) {
        size_t base = divs.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace

std::vector<Poly> groebner_basis(std::vector<Poly> gens) {
    return buchberger_impl(std::move(gens));
}

std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs) {
    // strip trailing zeros
    std::vector<Rational> c = coeffs;
    while (!c.empty() && c.back() == 0) c.pop_back();
    std::vector<Rational> roots;
    if (c.size() <= 1) return roots; // zero or constant polynomial: no isolated roots reported
    // factor out t^k
    size_t low = 0;
    while (low < c.size() && c[low] == 0) ++low;
    if (low > 0) {
        roots.push_back(Rational(0));
        c.erase(c.begin(), c.begin() + static_cast<long>(low));
        if (c.size() <= 1) return roots;
    }
    // scale to a primitive integer polynomial
    mpz_class denlcm = 1;
    for (const auto& x : c) mpz_lcm(denlcm.get_mpz_t(), denlcm.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> ic(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        Rational scaled = c[i] * Rational(denlcm);
        ic[i] = scaled.get_num();
    }
    auto eval_zero = [&](const Rational& r) {
        Rational acc(0);
        for (size_t i = ic.size(); i-- > 0;) acc = acc * r + Rational(ic[i]);
        return acc == 0;
    };
    for (const mpz_class& p : divisors(ic.front()))
        for (const mpz_class& q : divisors(ic.back()))
            for (int sign : {1, -1}) {
                Rational cand(sign * p, q);
                cand.canonicalize();
                if (eval_zero(cand)) roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

namespace {

Poly substitute_last(const Poly& p, const Rational& value) {
    Poly out;
    out.nvars = p.nvars - 1;
    Monomial m(out.nvars);
    for (const auto& [pm, pc] : p.terms) {
        Rational c = pc;
        for (unsigned e = 0; e < pm.back(); ++e) c *= value;
        if (c == 0) continue;
        std::copy(pm.begin(), pm.end() - 1, m.begin());
        out.add_term(m, c);
    }
    return out;
}

void solve_rec(std::vector<Poly> gens, size_t nvars, std::vector<Rational>& partial,
               std::vector<std::vector<Rational>>& out) {
    std::vector<Poly> gb = groebner_basis(std::move(gens));
    // inconsistent?
    for (const auto& g : gb)
        if (!g.is_zero() && g.leading_monomial() == Monomial(nvars, 0)) return;
    if (nvars == 0) {
        if (gb.empty()) {
            std::vector<Rational> sol(partial.rbegin(), partial.rend());
            out.push_back(std::move(sol));
        }
        return;
    }
    if (gb.empty()) {
        throw Error(ErrorCode::InternalConventionError,
                    "polynomial system has a free variable (not zero-dimensional)");
    }
    // find a generator univariate in the last variable
    const Poly* uni = nullptr;
    for (const auto& g : gb) {
        bool only_last = true;
        for (const auto& [m, c] : g.terms) {
            (void)c;
            for (size_t v = 0; v + 1 < nvars; ++v)
                if (m[v] != 0) {
                    only_last = false;
                    break;
                }
            if (!only_last) break;
        }
        if (only_last && (uni == nullptr || g.terms.size() < uni->terms.size())) uni = &g;
    }
    if (uni == nullptr)
        throw Error(ErrorCode::InternalConventionError,
                    "polynomial system has a free variable (not zero-dimensional)");
    unsigned maxdeg = 0;
    for (const auto& [m, c] : uni->terms) {
        (void)c;
        maxdeg = std::max<unsigned>(maxdeg, m.back());
    }
    std::vector<Rational> coeffs(maxdeg + 1, Rational(0));
    for (const auto& [m, c] : uni->terms) coeffs[m.back()] = c;
    for (const Rational& root : rational_roots(coeffs)) {
        std::vector<Poly> next;
        next.reserve(gb.size());
        for (const auto& g : gb) next.push_back(substitute_last(g, root));
        partial.push_back(root);
        solve_rec(std::move(next), nvars - 1, partial, out);
        partial.pop_back();
    }
}

} // namespace

std::vector<std::vector<Rational>> solve_rational_system(std::vector<Poly> gens, size_t nvars) {
    std::vector<std::vector<Rational>> out;
    std::vector<Rational> partial;
    solve_rec(std::move(gens), nvars, partial, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace hopfx::polysolve
