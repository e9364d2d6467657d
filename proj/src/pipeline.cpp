#include "geoineq/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "geoineq/deadline.hpp"
#include "geoineq/preprocess.hpp"

namespace geoineq {

namespace {

// -1 / 0 / 1 for a < b / a == b / a > b on lower endpoints (nullopt = -inf)
int cmp_lo(const std::optional<RealAlg>& a, const std::optional<RealAlg>& b) {
    if (!a && !b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    return a->cmp(*b);
}

int cmp_hi(const std::optional<RealAlg>& a, const std::optional<RealAlg>& b) {
    if (!a && !b) return 0;
    if (!a) return 1;  // +inf
    if (!b) return -1;
    return a->cmp(*b);
}

} // namespace

bool IntervalSet::contains(const Rational& x) const {
    for (const Interval& iv : parts) {
        if (iv.lo) {
            int c = iv.lo->cmp(x);
            if (c > 0) continue;
            if (c == 0 && !iv.lo_closed) continue;
        }
        if (iv.hi) {
            int c = iv.hi->cmp(x);
            if (c < 0) continue;
            if (c == 0 && !iv.hi_closed) continue;
        }
        return true;
    }
    return false;
}

std::string IntervalSet::str() const {
    if (parts.empty()) return "{}";
    std::ostringstream os;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) os << " u ";
        const Interval& iv = parts[i];
        os << (iv.lo_closed ? "[" : "(") << (iv.lo ? ran_pretty(*iv.lo) : "-inf") << ", "
           << (iv.hi ? ran_pretty(*iv.hi) : "+inf") << (iv.hi_closed ? "]" : ")");
    }
    return os.str();
}

IntervalSet formula_to_intervals(const QfFormula1V& f) {
    // cell k: even = sector, odd = section at roots[k/2]
    IntervalSet out;
    size_t n = f.truth.size();
    size_t k = 0;
    while (k < n) {
        if (!f.truth[k]) {
            ++k;
            continue;
        }
        size_t end = k;
        while (end + 1 < n && f.truth[end + 1]) ++end;
        Interval iv;
        if (k > 0) {
            iv.lo = f.roots[(k - 1) / 2];
            iv.lo_closed = (k % 2 == 1);
        }
        if (end + 1 < n) {
            iv.hi = f.roots[end / 2];
            iv.hi_closed = (end % 2 == 1);
        }
        out.parts.push_back(std::move(iv));
        k = end + 1;
    }
    return out;
}

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> all = a.parts;
    all.insert(all.end(), b.parts.begin(), b.parts.end());
    std::sort(all.begin(), all.end(), [](const Interval& x, const Interval& y) {
        int c = cmp_lo(x.lo, y.lo);
        if (c != 0) return c < 0;
        return x.lo_closed && !y.lo_closed;
    });
    IntervalSet out;
    for (Interval& iv : all) {
        if (out.parts.empty()) {
            out.parts.push_back(std::move(iv));
            continue;
        }
        Interval& cur = out.parts.back();
        // overlap or touch?
        bool joins;
        if (!cur.hi || !iv.lo) {
            joins = true;
        } else {
            int c = iv.lo->cmp(*cur.hi);
            joins = c < 0 || (c == 0 && (iv.lo_closed || cur.hi_closed));
        }
        if (!joins) {
            out.parts.push_back(std::move(iv));
            continue;
        }
        int c = cmp_hi(iv.hi, cur.hi);
        if (c > 0 || (c == 0 && iv.hi_closed)) {
            cur.hi = iv.hi;
            cur.hi_closed = iv.hi_closed;
        }
    }
    return out;
}

IntervalSet restrict_positive(const IntervalSet& s) {
    IntervalSet out;
    for (Interval iv : s.parts) {
        if (iv.hi) {
            int c = iv.hi->cmp(Rational(0));
            if (c < 0 || (c == 0)) continue;  // entirely at or below zero
        }
        if (!iv.lo || iv.lo->cmp(Rational(0)) <= 0) {
            iv.lo = RealAlg::from_rational(Rational(0));
            iv.lo_closed = false;
        }
        out.parts.push_back(std::move(iv));
    }
    return out;
}

std::vector<std::pair<std::string, long>> StageTimings::lines() const {
    return {{"translate", translate}, {"wlog+elim", wlog_elim}, {"delinearize", delinearize},
            {"qe", qe},               {"interval", interval},   {"format", format}};
}

namespace {

struct StageClock {
    std::chrono::steady_clock::time_point last = std::chrono::steady_clock::now();
    long* pending = nullptr;  // stage to charge if an exception interrupts
    void mark(long& slot) {
        auto now = std::chrono::steady_clock::now();
        slot += std::chrono::duration_cast<std::chrono::milliseconds>(now - last).count();
        last = now;
        pending = nullptr;
    }
    void flush() {
        if (pending) mark(*pending);
    }
};

void trace_line(const PipelineOptions& opts, const std::string& line) {
    if (opts.trace) opts.trace->push_back(line);
}

std::string ratio_display(const QuerySpec& q) {
    std::ostringstream os;
    os << q.q2;
    if (q.e2 != 1) os << "^" << q.e2;
    os << "/" << q.q1;
    if (q.e1 != 1) os << "^" << q.e1;
    return os.str();
}

// conjunction over the delinearized equalities and the sign conditions
Conjunction build_conjunction(const std::vector<Polynomial>& he,
                              const std::vector<std::pair<Polynomial, Rel>>& hi,
                              std::optional<int> free_var) {
    Conjunction base;
    base.free_var = free_var;
    for (const Polynomial& p : he)
        if (!p.is_zero()) base.atoms.push_back({p, Rel::Eq});
    for (const auto& [p, r] : hi) base.atoms.push_back({p, r});
    for (const Atom& a : base.atoms)
        for (int v : a.poly.vars())
            if (!free_var || v != *free_var) base.exist.insert(v);
    return base;
}

std::vector<QfFormula1V> qe_branches(const DisjunctiveProblem& dp, const CadOptions& copts,
                                     const PipelineOptions& opts) {
    std::vector<QfFormula1V> out(dp.branches.size());
    unsigned workers = opts.jobs > 0 ? (unsigned)opts.jobs
                                     : std::max(1u, std::thread::hardware_concurrency());
    if (dp.branches.size() <= 1 || workers <= 1) {
        for (size_t i = 0; i < dp.branches.size(); ++i) out[i] = qe_exists(dp.branches[i], copts);
        return out;
    }
    std::vector<std::future<QfFormula1V>> futs;
    for (const Conjunction& b : dp.branches)
        futs.push_back(std::async(std::launch::async, [&b, copts] {
            DeadlineScope scope(copts.deadline); // workers inherit the wall clock
            return qe_exists(b, copts);
        }));
    std::optional<std::string> err;
    for (size_t i = 0; i < futs.size(); ++i) {
        try {
            out[i] = futs[i].get();
        } catch (const std::exception& e) {
            if (!err) err = e.what();
        }
    }
    if (err) throw std::runtime_error(*err);
    return out;
}

std::string attainment_text(bool lo_att, bool hi_att) {
    if (lo_att && hi_att) return "both attained";
    if (lo_att) return "min attained";
    if (hi_att) return "max attained";
    return "neither attained";
}

} // namespace

ComparisonResult compare(const Construction& c, const std::string& q1, const std::string& q2,
                         const PipelineOptions& opts) {
    if (c.quantity_index(q1) < 0 || c.quantity_index(q2) < 0)
        throw std::runtime_error("unknown-quantity");
    ComparisonResult res;
    StageClock clock;
    auto deadline = std::chrono::steady_clock::now() + opts.timeout;
    DeadlineScope scope(deadline);
    try {
        clock.pending = &res.timings.translate;
        QuerySpec q = QuerySpec::compare(q1, q2);
        SemiAlgebraicSystem s0 = algebraize(c, {opts.allow_degenerate});
        clock.mark(res.timings.translate);

        clock.pending = &res.timings.wlog_elim;
        SemiAlgebraicSystem s = attach_query(fix_wlog(s0, c, &q), q, c);
        res.ratio_text = ratio_display(q);
        int m = *s.ratio_var;
        std::optional<std::vector<RealAlg>> fixed;
        if (!opts.skip_groebner) {
            try {
                // cap the fast path so a hard elimination still leaves the
                // bulk of the wall clock for the qe route
                DeadlineScope fast(std::chrono::steady_clock::now() + opts.timeout / 3);
                auto elim = eliminate(s.he, {m}, s.nvars, opts.groebner);
                if (elim.empty()) {
                    // saturate the strict sign conditions so that degenerate
                    // components do not drown the elimination ideal
                    Polynomial prod = Polynomial::constant(s.nvars + 1, Rational(1));
                    for (const auto& [p, r] : s.hi)
                        if (r == Rel::Gt) prod = prod * p.with_nvars(s.nvars + 1);
                    std::vector<Polynomial> gens;
                    for (const Polynomial& p : s.he) gens.push_back(p.with_nvars(s.nvars + 1));
                    gens.push_back(Polynomial::variable(s.nvars + 1, s.nvars) * prod -
                                   Polynomial::constant(s.nvars + 1, Rational(1)));
                    elim = eliminate(gens, {m}, s.nvars + 1, opts.groebner);
                    for (Polynomial& p : elim) p = p.with_nvars(s.nvars);
                    if (!elim.empty()) trace_line(opts, "fast path: saturated elimination ideal");
                } else {
                    trace_line(opts, "fast path: elimination ideal nonzero");
                }
                if (!elim.empty()) fixed = candidate_ratios(elim, s, c, q);
            } catch (const std::runtime_error& e) {
                std::string what = e.what();
                if (what != "groebner-budget-exceeded" && what != "timeout") throw;
                if (what == "timeout" && std::chrono::steady_clock::now() > deadline) throw;
                trace_line(opts, "fast path: budget exceeded, falling through to qe");
            }
        }
        clock.mark(res.timings.wlog_elim);
        if (fixed && !fixed->empty()) {
            res.kind = ComparisonResult::Kind::FixedRatio;
            res.fixed = (*fixed)[0];
            std::ostringstream os;
            os << res.ratio_text << " = " << ran_pretty(res.fixed);
            res.pretty = os.str();
            clock.mark(res.timings.format);
            return res;
        }

        clock.pending = &res.timings.delinearize;
        std::set<int> protect = {m};
        for (const auto& [p, r] : s.hi)
            for (int v : p.vars()) protect.insert(v);
        std::vector<Polynomial> delin = delinearize(s.he, protect);
        Conjunction base = groebner_reduce(
            reduce_even_powers(build_conjunction(delin, s.hi, m)), opts.groebner);
        DisjunctiveProblem dp = case_split(base);
        for (Conjunction& b : dp.branches)
            b = drop_implied_equalities(
                groebner_reduce(reduce_even_powers(std::move(b)), opts.groebner),
                opts.groebner);
        std::erase_if(dp.branches, [](const Conjunction& b) { return b.is_false; });
        trace_line(opts, "branches: " + std::to_string(dp.branches.size()));
        clock.mark(res.timings.delinearize);

        clock.pending = &res.timings.qe;
        CadOptions copts;
        copts.max_cad_vars = opts.max_cad_vars;
        copts.deadline = deadline;
        std::vector<QfFormula1V> formulas = qe_branches(dp, copts, opts);
        clock.mark(res.timings.qe);

        clock.pending = &res.timings.interval;
        IntervalSet set;
        for (const QfFormula1V& f : formulas) set = interval_union(set, formula_to_intervals(f));
        set = restrict_positive(set);
        clock.mark(res.timings.interval);

        if (set.empty()) {
            res.kind = ComparisonResult::Kind::Inconclusive;
            res.reason = "empty-ratio-set";
            return res;
        }
        res.kind = ComparisonResult::Kind::Range;
        res.set = set;
        const Interval& first = set.parts.front();
        const Interval& last = set.parts.back();
        res.min = *first.lo;  // finite: clipped at 0
        res.min_attained = first.lo_closed;
        if (last.hi) {
            res.max = *last.hi;
            res.max_attained = last.hi_closed;
        } else {
            res.max_unbounded = true;
        }
        std::ostringstream os;
        os << ran_pretty(res.min) << " " << (res.min_attained ? "≤" : "<") << " "
           << res.ratio_text;
        if (!res.max_unbounded)
            os << " " << (res.max_attained ? "≤" : "<") << " " << ran_pretty(res.max);
        os << ", " << attainment_text(res.min_attained, !res.max_unbounded && res.max_attained);
        res.pretty = os.str();
        clock.mark(res.timings.format);
    } catch (const std::exception& e) {
        clock.flush();
        res.kind = ComparisonResult::Kind::Inconclusive;
        res.reason = e.what();
        res.pretty = "inconclusive (" + res.reason + ")";
    }
    return res;
}

ProofResult prove(const Construction& c, const std::string& statement,
                  const PipelineOptions& opts) {
    QuerySpec q = QuerySpec::prove(statement, c);  // parse errors propagate
    ProofResult res;
    StageClock clock;
    auto deadline = std::chrono::steady_clock::now() + opts.timeout;
    DeadlineScope scope(deadline);
    try {
        clock.pending = &res.timings.translate;
        SemiAlgebraicSystem s0 = algebraize(c, {opts.allow_degenerate});
        clock.mark(res.timings.translate);
        clock.pending = &res.timings.wlog_elim;
        SemiAlgebraicSystem s = attach_query(fix_wlog(s0, c, &q), q, c);
        clock.mark(res.timings.wlog_elim);

        clock.pending = &res.timings.delinearize;
        std::set<int> protect;
        for (const auto& [p, r] : s.hi)
            for (int v : p.vars()) protect.insert(v);
        std::vector<Polynomial> delin = delinearize(s.he, protect);
        Conjunction base = groebner_reduce(
            reduce_even_powers(build_conjunction(delin, s.hi, std::nullopt)), opts.groebner);
        DisjunctiveProblem dp = case_split(base);
        for (Conjunction& b : dp.branches)
            b = drop_implied_equalities(
                groebner_reduce(reduce_even_powers(std::move(b)), opts.groebner),
                opts.groebner);
        std::erase_if(dp.branches, [](const Conjunction& b) { return b.is_false; });
        trace_line(opts, "branches: " + std::to_string(dp.branches.size()));
        clock.mark(res.timings.delinearize);

        clock.pending = &res.timings.qe;
        CadOptions copts;
        copts.max_cad_vars = opts.max_cad_vars;
        copts.deadline = deadline;
        bool satisfiable = false;
        for (const Conjunction& b : dp.branches)
            if (qe_decide(b, copts)) {
                satisfiable = true;
                break;
            }
        clock.mark(res.timings.qe);
        res.verdict = satisfiable ? ProofResult::Verdict::Disproved : ProofResult::Verdict::Proved;
        res.pretty = satisfiable ? "Disproved" : "Proved";
        clock.mark(res.timings.format);
    } catch (const std::exception& e) {
        clock.flush();
        res.verdict = ProofResult::Verdict::Inconclusive;
        res.reason = e.what();
        res.pretty = "Inconclusive (" + res.reason + ")";
    }
    return res;
}

RelationReport relation(const Construction& c, const std::string& q1, const std::string& q2,
                        const std::map<std::string, std::array<double, 2>>& coords,
                        const PipelineOptions& opts) {
    if (c.quantity_index(q1) < 0 || c.quantity_index(q2) < 0)
        throw std::runtime_error("unknown-quantity");
    Instance inst = instance_from_coords(c, coords);
    SemiAlgebraicSystem s = algebraize(c, {opts.allow_degenerate});
    std::vector<double> vars = instance_vars(inst, s, c);
    auto abs_scale = [&](const Polynomial& p) {
        double sc = 1.0;
        for (const auto& [e, coeff] : p.terms()) {
            double t = std::abs(coeff.get_d());
            for (int v = 0; v < p.nvars(); ++v)
                for (int k = 0; k < e[v]; ++k) t *= std::max(1.0, std::abs(vars[v]));
            sc += t;
        }
        return sc;
    };
    for (const Polynomial& p : s.he)
        if (std::abs(p.eval_double(vars)) > 1e-9 * abs_scale(p))
            throw std::runtime_error("invalid-instance");
    for (const auto& [p, r] : s.hi) {
        double v = p.eval_double(vars);
        bool ok = r == Rel::Gt ? v > 0 : v >= -1e-9 * abs_scale(p);
        if (!ok) throw std::runtime_error("invalid-instance");
    }

    RelationReport rep;
    auto d1 = quantity_degree(c.quantities[c.quantity_index(q1)], c);
    auto d2 = quantity_degree(c.quantities[c.quantity_index(q2)], c);
    if (!d1 || !d2 || *d1 <= 0 || *d2 <= 0) throw std::runtime_error("degree-balance-failed");
    int g = std::gcd(*d1, *d2);
    rep.v1 = inst.qty.at(q1);
    rep.v2 = inst.qty.at(q2);
    rep.ratio = std::pow(rep.v2, *d1 / g) / std::pow(rep.v1, *d2 / g);
    rep.symbolic = compare(c, q1, q2, opts);
    return rep;
}

} // namespace geoineq
