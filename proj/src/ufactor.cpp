#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "geoineq/deadline.hpp"
#include "geoineq/upoly.hpp"

namespace geoineq {

namespace {

// ---------------------------------------------------------------------------
// Complex arithmetic on GMP floats (fixed working precision)

struct CF {
    mpf_class re, im;
    CF(unsigned prec) : re(0, prec), im(0, prec) {}
    CF(const mpf_class& r, const mpf_class& i) : re(r), im(i) {}
};

CF cf_add(const CF& a, const CF& b) { return {a.re + b.re, a.im + b.im}; }
CF cf_sub(const CF& a, const CF& b) { return {a.re - b.re, a.im - b.im}; }
CF cf_mul(const CF& a, const CF& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CF cf_div(const CF& a, const CF& b) {
    mpf_class d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
mpf_class cf_norm(const CF& a) { return a.re * a.re + a.im * a.im; }

// ---------------------------------------------------------------------------
// Durand-Kerner: all complex roots of a monic polynomial simultaneously

std::vector<CF> dk_roots(const std::vector<mpf_class>& c, unsigned prec) {
    int n = (int)c.size() - 1; // monic: c[n] == 1
    mpf_class radius(1, prec);
    for (int i = 0; i < n; ++i) {
        mpf_class a = abs(c[(size_t)i]);
        if (a > radius) radius = a;
    }
    radius += 1;
    std::vector<CF> x;
    for (int i = 0; i < n; ++i) {
        double ang = 2.0 * M_PI * i / n + 0.3937;
        CF z(prec);
        z.re = radius * mpf_class(std::cos(ang), prec);
        z.im = radius * mpf_class(std::sin(ang), prec);
        x.push_back(z);
    }
    mpf_class tol(1, prec);
    mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), (unsigned long)(prec * 7 / 10));
    tol = tol * radius;
    mpf_class tol2 = tol * tol;
    for (int iter = 0; iter < 500; ++iter) {
        poll_deadline();
        mpf_class worst(0, prec);
        for (int i = 0; i < n; ++i) {
            // p(x_i) by Horner
            CF num(prec);
            num.re = 1;
            for (int k = n - 1; k >= 0; --k) {
                num = cf_mul(num, x[(size_t)i]);
                num.re += c[(size_t)k];
            }
            CF den(prec);
            den.re = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den = cf_mul(den, cf_sub(x[(size_t)i], x[(size_t)j]));
            if (cf_norm(den) == 0) continue; // coincident iterates; next sweep separates
            CF step = cf_div(num, den);
            x[(size_t)i] = cf_sub(x[(size_t)i], step);
            mpf_class s = cf_norm(step);
            if (s > worst) worst = s;
        }
        if (worst < tol2) break;
    }
    return x;
}

// monic real polynomial carried by a cluster of roots (coefficients low-first)
struct Atom {
    std::vector<mpf_class> poly; // degree 1 (real root) or 2 (conjugate pair)
};

std::vector<mpf_class> poly_mul_f(const std::vector<mpf_class>& a, const std::vector<mpf_class>& b) {
    std::vector<mpf_class> r(a.size() + b.size() - 1, mpf_class(0, a[0].get_prec()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// nearest integer; ok set false when the value is not clearly integral
mpz_class round_to_int(const mpf_class& x, bool& ok) {
    mpf_class half(x + mpf_class(0.5, x.get_prec()));
    mpf_class fl(0, x.get_prec());
    mpf_floor(fl.get_mpf_t(), half.get_mpf_t());
    mpf_class diff = abs(x - fl);
    if (diff > 0.3) ok = false;
    mpz_class z;
    mpz_set_f(z.get_mpz_t(), fl.get_mpf_t());
    return z;
}

// candidate factor from a subset of atoms: lc * prod(atom polys), rounded.
// Returns the factor when it exactly divides f (f then replaced by the
// quotient), nullopt otherwise.
std::optional<UPoly> try_subset(UPoly& f, const std::vector<Atom>& atoms,
                                const std::vector<size_t>& pick, const mpz_class& lead,
                                unsigned prec) {
    std::vector<mpf_class> prod(1, mpf_class(lead, prec));
    for (size_t idx : pick) prod = poly_mul_f(prod, atoms[idx].poly);
    std::vector<Rational> coeffs;
    bool ok = true;
    for (const mpf_class& cf : prod) {
        mpz_class z = round_to_int(cf, ok);
        if (!ok) return std::nullopt;
        coeffs.emplace_back(z);
    }
    UPoly cand = UPoly(std::move(coeffs)).primitive();
    if (cand.degree() < 1) return std::nullopt;
    auto [q, r] = upoly_divmod(f, cand);
    if (!r.is_zero()) return std::nullopt;
    f = q.primitive();
    return cand;
}

} // namespace

namespace {

std::vector<UPoly> factor_impl(UPoly f) {
    std::vector<UPoly> out;
    if (f.degree() <= 1) {
        if (f.degree() == 1) out.push_back(f);
        return out;
    }
    if (f[0] == 0) { // single zero root (f is squarefree)
        out.push_back(UPoly({Rational(0), Rational(1)}));
        std::vector<Rational> shifted(f.coeffs().begin() + 1, f.coeffs().end());
        f = UPoly(std::move(shifted)).primitive();
        if (f.degree() <= 1) {
            if (f.degree() == 1) out.push_back(f);
            return out;
        }
    }

    int deg = f.degree();
    unsigned long maxbits = 0;
    for (const Rational& c : f.coeffs())
        maxbits = std::max(maxbits, mpz_sizeinbase(c.get_num().get_mpz_t(), 2));
    unsigned prec = (unsigned)std::max<unsigned long>(192, 2 * maxbits + 16 * (unsigned long)deg + 64);

    // monic float coefficients
    std::vector<mpf_class> mc;
    for (int i = 0; i <= deg; ++i) {
        mpf_class v(0, prec);
        mpf_set_q(v.get_mpf_t(), Rational(f[(size_t)i] / f.lc()).get_mpq_t());
        mc.push_back(v);
    }
    std::vector<CF> roots = dk_roots(mc, prec);

    // cluster into real roots and conjugate pairs
    mpf_class eps(1, prec);
    mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), (unsigned long)(prec / 2));
    std::vector<Atom> atoms;
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        if (abs(roots[i].im) < eps) {
            atoms.push_back({{-roots[i].re, mpf_class(1, prec)}});
            continue;
        }
        // pair with the nearest conjugate
        size_t best = i;
        mpf_class bestd(0, prec);
        for (size_t j = 0; j < roots.size(); ++j) {
            if (used[j]) continue;
            mpf_class d = (roots[j].re - roots[i].re) * (roots[j].re - roots[i].re) +
                          (roots[j].im + roots[i].im) * (roots[j].im + roots[i].im);
            if (best == i || d < bestd) {
                best = j;
                bestd = d;
            }
        }
        if (best == i) { // unpaired: give up on splitting, keep the rest whole
            out.push_back(f);
            return out;
        }
        used[best] = true;
        atoms.push_back({{cf_norm(roots[i]), -(roots[i].re + roots[best].re), mpf_class(1, prec)}});
    }

    // recombination: smallest subsets first, certified by exact division
    mpz_class lead = f.lc().get_num();
    long tries = 0;
    bool found = true;
    while (found && f.degree() >= 1 && !atoms.empty()) {
        poll_deadline();
        found = false;
        for (size_t sz = 1; sz <= atoms.size() && !found; ++sz) {
            if (sz == atoms.size()) { // the full set is f itself
                out.push_back(f);
                return out;
            }
            // enumerate size-sz subsets
            std::vector<size_t> pick(sz);
            for (size_t i = 0; i < sz; ++i) pick[i] = i;
            while (true) {
                if (++tries > 20000) { // combinatorial blowup: stop splitting
                    out.push_back(f);
                    return out;
                }
                auto g = try_subset(f, atoms, pick, lead, prec);
                if (g) {
                    out.push_back(*g);
                    std::vector<Atom> rest;
                    for (size_t i = 0, k = 0; i < atoms.size(); ++i) {
                        if (k < pick.size() && pick[k] == i) { ++k; continue; }
                        rest.push_back(atoms[i]);
                    }
                    atoms = std::move(rest);
                    lead = f.lc().get_num();
                    found = true;
                    break;
                }
                // next combination
                size_t j = sz;
                while (j > 0 && pick[j - 1] == atoms.size() - sz + (j - 1)) --j;
                if (j == 0) break;
                ++pick[j - 1];
                for (size_t i2 = j; i2 < sz; ++i2) pick[i2] = pick[i2 - 1] + 1;
            }
        }
    }
    if (f.degree() >= 1) out.push_back(f);
    return out;
}

} // namespace

std::vector<UPoly> upoly_factor_squarefree(const UPoly& p) {
    UPoly f = squarefree_part(p).primitive();
    thread_local std::map<std::vector<Rational>, std::vector<UPoly>> memo;
    if (auto it = memo.find(f.coeffs()); it != memo.end()) return it->second;
    std::vector<UPoly> out = factor_impl(f);
    memo.emplace(f.coeffs(), out);
    for (const UPoly& g : out) // each factor is fully split already
        if (!(g.coeffs() == f.coeffs())) memo.emplace(g.coeffs(), std::vector<UPoly>{g});
    return out;
}

} // namespace geoineq
