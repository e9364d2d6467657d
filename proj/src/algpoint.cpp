#include "geoineq/algpoint.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

#include <cstdio>
#include <cstdlib>
static const bool kApDebug = std::getenv("GEOINEQ_AP_DEBUG") != nullptr;

namespace geoineq {

namespace {

// ---------------------------------------------------------------------------
// Rational interval arithmetic

struct QIv {
    Rational lo, hi;
    static QIv point(const Rational& r) { return {r, r}; }
};

QIv iv_add(const QIv& a, const QIv& b) { return {a.lo + b.lo, a.hi + b.hi}; }

QIv iv_mul(const QIv& a, const QIv& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

QIv iv_pow(const QIv& a, int e) {
    QIv acc = QIv::point(Rational(1));
    for (int i = 0; i < e; ++i) acc = iv_mul(acc, a);
    return acc;
}

QIv coord_interval(const RealAlg& a) {
    if (a.is_rational()) return QIv::point(a.value());
    return {a.lower(), a.upper()};
}

QIv interval_eval(const Polynomial& p, const SamplePoint& pt) {
    QIv acc = QIv::point(Rational(0));
    for (const auto& [e, c] : p.terms()) {
        QIv t = QIv::point(c);
        for (int v = 0; v < p.nvars(); ++v) {
            if (e[v] == 0) continue;
            t = iv_mul(t, iv_pow(coord_interval(pt.at(v)), e[v]));
        }
        acc = iv_add(acc, t);
    }
    return acc;
}

// interval_eval with the coordinate of x overridden by an explicit interval
QIv interval_eval_x(const Polynomial& p, const SamplePoint& pt, int x, const QIv& xiv) {
    QIv acc = QIv::point(Rational(0));
    for (const auto& [e, c] : p.terms()) {
        QIv t = QIv::point(c);
        for (int v = 0; v < p.nvars(); ++v) {
            if (e[v] == 0) continue;
            t = iv_mul(t, iv_pow(v == x ? xiv : coord_interval(pt.at(v)), e[v]));
        }
        acc = iv_add(acc, t);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Iterated-resultant annihilator

// Variables of p (restricted to vars_of_interest minus keep) must each have an
// algebraic coordinate in pt; eliminates them one at a time via resultants with
// the defining polynomials, yielding a univariate annihilator in `keep`.
// Repairs reducible defining polynomials when a resultant collapses to zero.
// Returns nullopt when no nonzero annihilator could be constructed.
std::optional<UPoly> annihilator(Polynomial p, SamplePoint pt, int keep) {
    std::mt19937 rng(0x9e3779b9u);
    std::vector<int> alg_vars;
    for (int v : p.vars())
        if (v != keep) alg_vars.push_back(v);

    for (int t : alg_vars) {
        if (!p.contains_var(t)) continue;
        RealAlg alpha = pt.at(t);
        if (alpha.is_rational()) {
            p = p.subst_rational(t, alpha.value());
            continue;
        }
        for (int attempt = 0;; ++attempt) {
            if (alpha.is_rational()) { // repair below may collapse to exact
                p = p.subst_rational(t, alpha.value());
                break;
            }
            Polynomial D = alpha.defining().to_polynomial(p.nvars(), t);
            // degree cap below deg(D) keeps the resultant small and, with an
            // irreducible D, rules out a vanishing one
            if (p.degree(t) >= alpha.defining().degree()) {
                Polynomial red = pseudo_rem(p, D, t);
                if (!red.is_zero()) p = red;
            }
            if (kApDebug)
                fprintf(stderr, "[ap] annih elim var %d: p %zu terms deg %d (tdeg %d)\n", t,
                        p.term_count(), p.degree(t), p.total_degree());
            Polynomial r = resultant(D, p, t);
            if (kApDebug)
                fprintf(stderr, "[ap] annih res: %zu terms tdeg %d\n", r.term_count(), r.total_degree());
            if (!r.is_zero()) {
                p = r;
                break;
            }
            if (attempt >= 4) return std::nullopt;
            // D and p share a factor; D is univariate, so the factor is too.
            // Find it via gcd with random specializations of the other vars.
            UPoly split;
            for (int trial = 0; trial < 6 && split.degree() < 1; ++trial) {
                Polynomial spec = p;
                for (int v : p.vars()) {
                    if (v == t) continue;
                    spec = spec.subst_rational(v, make_rational((long)(rng() % 2000) - 1000, (long)(rng() % 97) + 1));
                }
                if (spec.degree(t) < 1) continue;
                UPoly g = upoly_gcd(alpha.defining(), UPoly::from_polynomial(spec, t));
                if (g.degree() >= 1 && g.degree() < alpha.defining().degree()) split = g;
            }
            if (split.degree() < 1) return std::nullopt;
            // decide which factor carries the designated root
            UPoly cof = upoly_divmod(alpha.defining(), split).first.primitive();
            UPoly keep_def = (split.sign_at(alpha.lower()) * split.sign_at(alpha.upper()) < 0) ? split : cof;
            alpha = RealAlg::from_interval(keep_def, alpha.lower(), alpha.upper());
            pt[t] = alpha;
        }
    }
    if (p.is_zero()) return std::nullopt;
    return UPoly::from_polynomial(p, keep);
}

int count_algebraic(const Polynomial& p, const SamplePoint& pt) {
    int n = 0;
    for (int v : p.vars()) {
        auto it = pt.find(v);
        if (it != pt.end() && !it->second.is_rational()) ++n;
    }
    return n;
}

Polynomial substitute_rationals(const Polynomial& p, const SamplePoint& pt) {
    Polynomial q = p;
    for (int v : p.vars()) {
        auto it = pt.find(v);
        if (it == pt.end()) continue;
        if (it->second.is_rational()) q = q.subst_rational(v, it->second.value());
    }
    return q;
}

// Cap each algebraic coordinate's degree below that of its minimal
// polynomial: on the point itself the pseudo-remainder differs from p only
// by the positive factor lc^k, so signs and root sets above the point are
// unchanged. Keeps iterated resultants over algebraic towers small.
Polynomial reduce_mod_definitions(Polynomial q, const SamplePoint& pt) {
    // Identify coordinates that are the same algebraic number: substituting
    // one variable for the other collapses the tower a level and keeps the
    // iterated resultants nondegenerate.
    std::vector<int> alg;
    for (int v : q.vars()) {
        auto it = pt.find(v);
        if (it != pt.end() && !it->second.is_rational()) alg.push_back(v);
    }
    for (size_t i = 0; i + 1 < alg.size(); ++i)
        for (size_t j = i + 1; j < alg.size(); ++j) {
            if (!q.contains_var(alg[j])) continue;
            const RealAlg &a = pt.at(alg[i]), &b = pt.at(alg[j]);
            if (a.defining() == b.defining() && a.cmp(b) == 0)
                q = q.subst_poly(alg[j], Polynomial::variable(q.nvars(), alg[i]));
        }
    for (int v : q.vars()) {
        auto it = pt.find(v);
        if (it == pt.end() || it->second.is_rational()) continue;
        const UPoly& d = it->second.defining();
        if (d.degree() < 1 || q.degree(v) < d.degree()) continue;
        Polynomial D = d.to_polynomial(std::max(q.nvars(), v + 1), v);
        if (d[(size_t)d.degree()] < 0) D = -D;
        q = pseudo_rem(q, D, v);
        if (q.is_zero()) break;
    }
    return q;
}

void refine_all(SamplePoint& pt) {
    for (auto& kv : pt) kv.second.refine();
}

double approx_coord(const RealAlg& a) {
    if (a.is_rational()) return rat_double(a.value());
    return rat_double((a.lower() + a.upper()) / 2);
}

double eval_double(const Polynomial& p, const SamplePoint& pt) {
    double acc = 0;
    for (const auto& [e, c] : p.terms()) {
        double t = rat_double(c);
        for (int v = 0; v < p.nvars(); ++v)
            for (int k = 0; k < e[v]; ++k) t *= approx_coord(pt.at(v));
        acc += t;
    }
    return acc;
}

// nearby rational with a small denominator (exactness is not needed: the
// value is only a test point certified afterwards)
Rational rat_near(double v) {
    double s = std::ldexp(v, 16);
    if (!std::isfinite(s) || std::fabs(s) >= 9.0e15) return Rational(std::isfinite(v) ? v : 0.0);
    return make_rational((long)std::llround(s), 65536);
}

// rational upper bound on sqrt(d)
Rational sqrt_upper(const Rational& d) {
    if (d <= 0) return Rational(0);
    Rational u = rat_near(std::sqrt(rat_double(d)) * 1.0001) + make_rational(1, 65536);
    while (u * u < d) u *= 2;
    return u;
}

// certified interval sign with bounded refinement; zero only when exact
std::optional<int> iv_sign_bounded(const Polynomial& p, SamplePoint& pt, int rounds) {
    Polynomial q = substitute_rationals(p, pt);
    if (q.is_constant()) return sign_of(q.constant_value());
    for (int r = 0; r < rounds; ++r) {
        QIv iv = interval_eval(q, pt);
        if (sign_of(iv.lo) > 0) return 1;
        if (sign_of(iv.hi) < 0) return -1;
        for (int v : q.vars()) pt.at(v).refine();
    }
    return std::nullopt;
}

} // namespace

int sign_at(const Polynomial& p, const SamplePoint& pt) {
    Polynomial q = reduce_mod_definitions(substitute_rationals(p, pt), pt);
    if (q.is_constant()) return sign_of(q.constant_value());

    int nalg = count_algebraic(q, pt);
    if (nalg == 1) {
        int v = *q.vars().begin();
        return pt.at(v).sign_of(UPoly::from_polynomial(q, v));
    }

    // Several algebraic coordinates: refine, with a one-time exact
    // zero-certification via an annihilator of the value.
    std::optional<UPoly> annih;
    bool annih_tried = false;
    bool value_known_nonzero = false;
    std::vector<RealAlg> nonzero_candidates;
    for (int round = 0;; ++round) {
        QIv iv = interval_eval(q, pt);
        if (sign_of(iv.lo) > 0) return 1;
        if (sign_of(iv.hi) < 0) return -1;
        if (!annih_tried && round >= 2) {
            annih_tried = true;
            // annihilator of z - q(t...)
            int nv = q.nvars();
            Polynomial zq = Polynomial::variable(nv + 1, nv) - q.with_nvars(nv + 1);
            SamplePoint ptz = pt;
            annih = annihilator(zq, ptz, nv);
            if (annih) {
                UPoly r = *annih;
                // strip powers of z
                size_t k = 0;
                while (k < r.coeffs().size() && r[k] == 0) ++k;
                if (k == 0) {
                    value_known_nonzero = true; // r(0) != 0
                } else {
                    std::vector<Rational> stripped(r.coeffs().begin() + (long)k, r.coeffs().end());
                    UPoly rs{std::move(stripped)};
                    if (rs.degree() >= 1)
                        for (auto& root : RealAlg::roots_of(rs))
                            if (root.cmp(Rational(0)) != 0) nonzero_candidates.push_back(root);
                }
            }
        }
        if (annih_tried && annih && !value_known_nonzero) {
            // value is 0 or one of the nonzero candidates; if the enclosing
            // interval excludes every candidate, the value is exactly 0
            bool separated = true;
            for (const auto& cand : nonzero_candidates) {
                cand.refine_width_below(Rational(iv.hi - iv.lo) + make_rational(1, 1024));
                if (!(cand.upper() <= iv.lo || iv.hi <= cand.lower())) {
                    separated = false;
                    break;
                }
            }
            if (separated) return 0;
        }
        if (annih_tried && !annih && round > 200) throw UndecidableSample();
        for (int v : q.vars()) pt.at(v).refine();
    }
}

RootsAbove roots_above(const Polynomial& p, const SamplePoint& pt, int x) {
    RootsAbove out;
    Polynomial q = reduce_mod_definitions(substitute_rationals(p, pt), pt);
    if (q.is_constant()) {
        out.vanishes = q.is_zero();
        return out;
    }
    if (!q.contains_var(x)) {
        // no x left: either vanishes at the point or contributes nothing
        out.vanishes = (sign_at(q, pt) == 0);
        return out;
    }
    if (count_algebraic(q, pt) == 0 || q.vars() == std::set<int>{x}) {
        UPoly u = UPoly::from_polynomial(q, x);
        if (u.degree() < 1) {
            out.vanishes = u.is_zero();
            return out;
        }
        out.roots = RealAlg::roots_of(u);
        return out;
    }
    // effective degree: highest x-coefficient not vanishing at the point
    std::vector<Polynomial> cs = q.coeffs_in(x);
    int d_eff = -1;
    for (int d = (int)cs.size() - 1; d >= 0; --d) {
        if (cs[(size_t)d].is_zero()) continue;
        if (sign_at(cs[(size_t)d], pt) != 0) {
            d_eff = d;
            break;
        }
    }
    if (d_eff < 0) {
        out.vanishes = true;
        return out;
    }
    if (d_eff == 0) return out; // constant nonzero: no roots
    SamplePoint pt2 = pt;
    auto annih = annihilator(q, pt2, x);
    if (!annih || annih->degree() < 0) throw UndecidableSample();
    if (annih->degree() < 1) return out; // nonzero constant: no roots
    std::vector<RealAlg> cands = RealAlg::roots_of(*annih);

    // For effective degree <= 2 the exact root count follows from the
    // discriminant, and the roots can then be picked out of the candidate
    // superset by interval exclusion alone.
    int count = -1;
    if (d_eff == 1) {
        count = 1;
    } else if (d_eff == 2) {
        Polynomial a2 = cs[2], a1 = cs.size() > 1 ? cs[1] : Polynomial::zero(q.nvars());
        Polynomial a0 = cs.empty() ? Polynomial::zero(q.nvars()) : cs[0];
        int sd = sign_at(a1 * a1 - 4 * a2 * a0, pt);
        count = sd > 0 ? 2 : (sd == 0 ? 1 : 0);
    }
    if (count == 0) return out;
    if (count > 0) {
        std::vector<char> alive(cands.size(), 1);
        for (int round = 0; round < 400; ++round) {
            int live = 0;
            for (size_t i = 0; i < cands.size(); ++i) {
                if (!alive[i]) continue;
                SamplePoint ext = pt;
                ext[x] = cands[i];
                QIv iv = interval_eval(q, ext);
                if (sign_of(iv.lo) > 0 || sign_of(iv.hi) < 0)
                    alive[i] = 0;
                else
                    ++live;
            }
            if (live == count) {
                for (size_t i = 0; i < cands.size(); ++i)
                    if (alive[i]) out.roots.push_back(cands[i]);
                return out;
            }
            for (size_t i = 0; i < cands.size(); ++i)
                if (alive[i]) cands[i].refine();
            for (int v : q.vars())
                if (v != x) pt.at(v).refine();
        }
        // enclosures refuse to separate; fall through to exact selection
    }
    for (auto& cand : cands) {
        SamplePoint ext = pt;
        ext[x] = cand;
        if (sign_at(q, ext) == 0) out.roots.push_back(cand);
    }
    return out;
}

std::optional<bool> satisfiable_on_sections(const Polynomial& q0, SamplePoint pt, int x,
                                            const std::vector<SignReq>& reqs) {
    constexpr int kRounds = 48;
    Polynomial q = reduce_mod_definitions(substitute_rationals(q0, pt), pt);
    if (q.is_constant() || !q.contains_var(x)) return std::nullopt;
    std::vector<Polynomial> cs = q.coeffs_in(x);

    // effective degree, with every coefficient sign interval-certified
    int d_eff = -1, lc_sign = 0;
    for (int d = (int)cs.size() - 1; d >= 0; --d) {
        if (cs[(size_t)d].is_zero()) continue;
        auto s = iv_sign_bounded(cs[(size_t)d], pt, kRounds);
        if (!s) return std::nullopt;
        if (*s != 0) {
            d_eff = d;
            lc_sign = *s;
            break;
        }
    }
    if (d_eff <= 0 || d_eff > 2) return std::nullopt;

    // certified sign of q(pt, t); zero is never certified
    auto sign_at_point = [&](const Rational& t) -> std::optional<int> {
        for (int r = 0; r < kRounds; ++r) {
            QIv iv = interval_eval_x(q, pt, x, QIv::point(t));
            if (sign_of(iv.lo) > 0) return 1;
            if (sign_of(iv.hi) < 0) return -1;
            for (int v : q.vars())
                if (v != x) pt.at(v).refine();
        }
        return std::nullopt;
    };

    // bracket each root between rational points with certified opposite signs
    std::vector<std::pair<Rational, Rational>> brackets;
    std::vector<int> left_sign;
    if (d_eff == 2) {
        Polynomial disc = cs[1] * cs[1] - 4 * cs[2] * cs[0];
        auto sd = iv_sign_bounded(disc, pt, kRounds);
        if (sd && *sd < 0) return false; // no real sections above the point
        if (!sd || *sd == 0) {
            // Discriminant at (or straddling) zero: any real root lies in a
            // narrow band around -c1/(2 c2). A requirement failing on the
            // whole band settles the level as false; a root's existence can
            // only be affirmed when the zero is exact.
            Polynomial p2 = substitute_rationals(cs[2], pt), p1 = substitute_rationals(cs[1], pt),
                       pd = substitute_rationals(disc, pt);
            bool disc_pos = false;
            for (int r = 0; r < kRounds && !disc_pos; ++r) {
                QIv c2 = interval_eval(p2, pt), c1 = interval_eval(p1, pt), dv = interval_eval(pd, pt);
                if (sign_of(dv.hi) < 0) return false;
                if (sign_of(dv.lo) > 0) {
                    disc_pos = true; // separated after all: bracket normally
                    break;
                }
                if (sign_of(c2.lo) * sign_of(c2.hi) <= 0) {
                    refine_all(pt);
                    continue;
                }
                Rational den = 2 * std::min(abs(c2.lo), abs(c2.hi));
                Rational corners[4] = {-c1.lo / (2 * c2.lo), -c1.lo / (2 * c2.hi),
                                       -c1.hi / (2 * c2.lo), -c1.hi / (2 * c2.hi)};
                Rational delta = sqrt_upper(std::max(dv.hi, Rational(0))) / den;
                QIv band{*std::min_element(corners, corners + 4) - delta,
                         *std::max_element(corners, corners + 4) + delta};
                bool undecided = false;
                for (const SignReq& req : reqs) {
                    Polynomial rp = substitute_rationals(req.poly, pt);
                    int s = 0;
                    bool known = false;
                    if (rp.is_constant()) {
                        s = sign_of(rp.constant_value());
                        known = true;
                    } else {
                        QIv iv = interval_eval_x(rp, pt, x, band);
                        if (sign_of(iv.lo) > 0) {
                            s = 1;
                            known = true;
                        } else if (sign_of(iv.hi) < 0) {
                            s = -1;
                            known = true;
                        }
                    }
                    if (known) {
                        if (!(s < 0 ? req.neg : (s == 0 ? req.zero : req.pos))) return false;
                    } else {
                        undecided = true;
                    }
                }
                if (!undecided && sd && *sd == 0) return true; // the double root exists
                refine_all(pt);
            }
            if (!disc_pos) return std::nullopt;
        }
        for (int attempt = 0; brackets.empty(); ++attempt) {
            if (attempt >= 6) return std::nullopt;
            double a = eval_double(cs[2], pt), b = eval_double(cs[1], pt), cc = eval_double(cs[0], pt);
            double dv = b * b - 4 * a * cc;
            if (!(dv > 0) || a == 0) {
                refine_all(pt);
                continue;
            }
            double sq = std::sqrt(dv);
            double y1 = (-b - sq) / (2 * a), y2 = (-b + sq) / (2 * a);
            if (y1 > y2) std::swap(y1, y2);
            double pad = std::max(1.0, y2 - y1);
            Rational t0 = rat_near(y1 - pad), t1 = rat_near((y1 + y2) / 2), t2 = rat_near(y2 + pad);
            auto s0 = sign_at_point(t0), s1 = sign_at_point(t1), s2 = sign_at_point(t2);
            if (s0 && s1 && s2 && *s0 == lc_sign && *s1 == -lc_sign && *s2 == lc_sign) {
                brackets = {{t0, t1}, {t1, t2}};
                left_sign = {lc_sign, -lc_sign};
            } else {
                refine_all(pt);
            }
        }
    } else {
        for (int attempt = 0; brackets.empty(); ++attempt) {
            if (attempt >= 6) return std::nullopt;
            double a = eval_double(cs[1], pt), cc = eval_double(cs[0], pt);
            if (a == 0) {
                refine_all(pt);
                continue;
            }
            double y = -cc / a;
            Rational t0 = rat_near(y - 1.0), t1 = rat_near(y + 1.0);
            auto s0 = sign_at_point(t0), s1 = sign_at_point(t1);
            if (s0 && s1 && *s0 == -*s1) {
                brackets = {{t0, t1}};
                left_sign = {*s0};
            } else {
                refine_all(pt);
            }
        }
    }

    // per bracket: do all requirements hold at the enclosed root? Undecided
    // requirements drive a certified-sign bisection of the bracket.
    auto decide = [&](std::pair<Rational, Rational>& br, int sa) -> std::optional<bool> {
        int frac = 0;
        for (int r = 0; r < kRounds; ++r) {
            bool undecided = false;
            for (const SignReq& req : reqs) {
                Polynomial rp = substitute_rationals(req.poly, pt);
                int s = 0;
                bool known = false;
                if (rp.is_constant()) {
                    s = sign_of(rp.constant_value());
                    known = true;
                } else {
                    QIv iv = interval_eval_x(rp, pt, x, {br.first, br.second});
                    if (sign_of(iv.lo) > 0) {
                        s = 1;
                        known = true;
                    } else if (sign_of(iv.hi) < 0) {
                        s = -1;
                        known = true;
                    }
                }
                if (known) {
                    if (!(s < 0 ? req.neg : (s == 0 ? req.zero : req.pos))) return false;
                } else {
                    undecided = true;
                }
            }
            if (!undecided) return true;
            static const int num[4] = {1, 2, 3, 3}, den[4] = {2, 5, 5, 7};
            Rational t = br.first + (br.second - br.first) * num[frac % 4] / den[frac % 4];
            auto st = sign_at_point(t);
            if (st)
                (*st == sa ? br.first : br.second) = t;
            else
                ++frac; // split point sits on the root; shift it next round
            refine_all(pt);
        }
        return std::nullopt;
    };
    bool any_undecided = false;
    for (size_t i = 0; i < brackets.size(); ++i) {
        auto d = decide(brackets[i], left_sign[i]);
        if (d && *d) return true;
        if (!d) any_undecided = true;
    }
    if (any_undecided) return std::nullopt;
    return false;
}

} // namespace geoineq
