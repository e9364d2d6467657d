#ifndef GEOINEQ_POLYNOMIAL_HPP
#define GEOINEQ_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geoineq/rational.hpp"

namespace geoineq {

// Exponent vector; size equals the polynomial's declared variable arity.
using Exps = std::vector<int>;

enum class OrderKind { Lex, Grevlex, Block };

// Monomial order. Block orders place the elimination variables above the
// retained ones (grevlex within each block).
struct MonomialOrder {
    OrderKind kind = OrderKind::Grevlex;
    std::vector<char> elim; // Block only: elim[v] != 0 marks an eliminated variable

    static MonomialOrder lex() { return {OrderKind::Lex, {}}; }
    static MonomialOrder grevlex() { return {OrderKind::Grevlex, {}}; }
    static MonomialOrder block(const std::set<int>& elim_vars, int nvars);

    // <0 if a < b, 0 if equal, >0 if a > b.
    int cmp(const Exps& a, const Exps& b) const;
};

// Immutable sparse multivariate polynomial with rational coefficients.
// Stored terms never have zero coefficients.
class Polynomial {
public:
    Polynomial() : nvars_(0) {}
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial zero(int nvars) { return Polynomial(nvars); }
    static Polynomial constant(int nvars, const Rational& c);
    static Polynomial variable(int nvars, int v, int exp = 1, const Rational& c = Rational(1));

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // The constant term (zero if absent).
    Rational constant_value() const;

    const std::map<Exps, Rational>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    int degree(int v) const;        // -1 for the zero polynomial
    int total_degree() const;       // -1 for the zero polynomial
    bool contains_var(int v) const { return degree(v) > 0; }
    std::set<int> vars() const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }
    bool operator<(const Polynomial& o) const; // arbitrary total order for containers

    Polynomial pow(unsigned e) const;
    Polynomial derivative(int v) const;

    // Leading data with respect to an explicit order.
    Exps leading_monomial(const MonomialOrder& ord) const;
    Rational leading_coeff(const MonomialOrder& ord) const;

    // View as univariate in v: dense coefficient list by increasing degree,
    // entries are polynomials not involving v.
    std::vector<Polynomial> coeffs_in(int v) const;
    static Polynomial from_coeffs_in(int v, const std::vector<Polynomial>& coeffs);
    Polynomial coeff_of(int v, int deg) const;

    Polynomial subst_rational(int v, const Rational& val) const;
    Polynomial subst_poly(int v, const Polynomial& repl) const;
    // p with v := num/den, multiplied through by den^deg_v(p).
    Polynomial subst_cleared(int v, const Polynomial& num, const Polynomial& den) const;
    Rational eval(const std::vector<Rational>& point) const; // point.size() == nvars
    double eval_double(const std::vector<double>& point) const;

    // Divide by the rational content: integer coefficients with gcd 1.
    // Sign normalization makes the leading grevlex coefficient positive.
    Polynomial primitive_part(bool normalize_sign = true) const;

    // Extend/shrink the ambient variable space (shrinking requires absence).
    Polynomial with_nvars(int nvars) const;

    std::string to_string(const std::vector<std::string>& names) const;
    // Textual syntax `4*v5^2+2*v5-1`: explicit '*', '^' powers, rational or
    // integer coefficients, parentheses allowed.
    static Polynomial parse(const std::string& text, const std::vector<std::string>& names);

    void add_term(const Exps& e, const Rational& c); // building helper; keeps canonical form

private:
    int nvars_;
    std::map<Exps, Rational> terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

// Pseudo-remainder of a by b with respect to x: lc_x(b)^(da-db+1) * a mod b.
Polynomial pseudo_rem(const Polynomial& a, const Polynomial& b, int x);

// Exact division in Q[vars]; nullopt when not divisible.
std::optional<Polynomial> try_divide_exact(const Polynomial& p, const Polynomial& q);

// Resultant via the subresultant polynomial remainder sequence.
// Throws std::invalid_argument("no-elimination-variable") when both are constant in x.
Polynomial resultant(const Polynomial& p, const Polynomial& q, int x);

Polynomial discriminant(const Polynomial& p, int x);

// j-th principal subresultant coefficient of (p, q) w.r.t. x (a polynomial in
// the remaining variables), computed as a determinant of the subresultant matrix.
Polynomial psc(const Polynomial& p, const Polynomial& q, int x, int j);

// gcd of p and q viewed as univariate in x over Q(other vars), made primitive
// in x (polynomial content in the remaining variables stripped).
Polynomial gcd_in_var(const Polynomial& p, const Polynomial& q, int x);

// Full gcd in Q[vars] up to a rational factor (recursive primitive PRS).
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

// gcd of the x-coefficients of p: the x-free content, so p factors exactly as
// content_in_var(p, x) * (primitive part in x).
Polynomial content_in_var(const Polynomial& p, int x);

// Best-effort squarefree part w.r.t. variable x (falls back to p when the
// required exact divisions cannot be certified).
Polynomial squarefree_part_in_var(const Polynomial& p, int x);

} // namespace geoineq

#endif
