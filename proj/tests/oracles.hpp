#ifndef GEOINEQ_TEST_ORACLES_HPP
#define GEOINEQ_TEST_ORACLES_HPP

// Independent test oracles. These deliberately avoid the library's own
// decision paths (Descartes isolation, PRS resultants) so they can certify
// them: Sturm sequences for root counting, brute substitution for resultants.

#include <random>
#include <vector>

#include "geoineq/upoly.hpp"

namespace oracles {

using geoineq::Rational;
using geoineq::UPoly;

inline std::vector<UPoly> sturm_sequence(const UPoly& p) {
    std::vector<UPoly> seq;
    seq.push_back(p);
    seq.push_back(p.derivative());
    while (!seq.back().is_zero()) {
        const UPoly& a = seq[seq.size() - 2];
        const UPoly& b = seq.back();
        UPoly r = geoineq::upoly_divmod(a, b).second;
        seq.push_back(-r);
    }
    seq.pop_back();
    return seq;
}

inline int sign_at_neg_inf(const UPoly& p) {
    if (p.is_zero()) return 0;
    int s = geoineq::sign_of(p.lc());
    return (p.degree() % 2 == 0) ? s : -s;
}

inline int sign_at_pos_inf(const UPoly& p) {
    if (p.is_zero()) return 0;
    return geoineq::sign_of(p.lc());
}

inline int variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

// Number of distinct real roots of p (Sturm over the whole line).
inline int sturm_root_count(const UPoly& p) {
    UPoly sf = geoineq::squarefree_part(p);
    if (sf.degree() < 1) return 0;
    auto seq = sturm_sequence(sf);
    std::vector<int> lo, hi;
    for (const auto& q : seq) {
        lo.push_back(sign_at_neg_inf(q));
        hi.push_back(sign_at_pos_inf(q));
    }
    return variations(lo) - variations(hi);
}

// Number of distinct real roots of squarefree p in (a, b].
inline int sturm_count_interval(const UPoly& sf, const Rational& a, const Rational& b) {
    auto seq = sturm_sequence(sf);
    std::vector<int> lo, hi;
    for (const auto& q : seq) {
        lo.push_back(q.sign_at(a));
        hi.push_back(q.sign_at(b));
    }
    return variations(lo) - variations(hi);
}

inline geoineq::Rational random_rational(std::mt19937& rng, long num_range = 10, long den_range = 4) {
    long num = (long)(rng() % (2 * num_range + 1)) - num_range;
    long den = (long)(rng() % (unsigned long)den_range) + 1;
    return geoineq::make_rational(num, den);
}

} // namespace oracles

#endif
