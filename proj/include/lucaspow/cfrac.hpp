#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "lucaspow/realexpr.hpp"

namespace lucaspow {

struct Convergent {
    mpz_class p;
    mpz_class q;
    std::size_t index = 0;
};

// Certified partial quotients of an irrational number given as a re-evaluable
// expression.  A quotient is accepted only when the interval floor of the
// Gauss-map iterate is a single integer; any ambiguity restarts the whole
// expansion at doubled precision, so every stored quotient is exact.
class ContinuedFraction {
public:
    ContinuedFraction(RealExpr source, PrecConfig cfg = {});

    // Ensures quotients a_0..a_count are certified.
    void extend_to(std::size_t count);

    std::size_t certified_upto() const { return quotients_.empty() ? 0 : quotients_.size() - 1; }
    const std::vector<mpz_class>& quotients() const { return quotients_; }
    const RealExpr& source() const { return source_; }

    // Exact p_k/q_k (k <= certified_upto, extending on demand).
    Convergent convergent(std::size_t k);
    // Least-index convergent with q_k > threshold; extends on demand.
    Convergent first_q_above(const mpz_class& threshold);
    // max a_i over 0 <= i <= upto.
    mpz_class max_quotient(std::size_t upto);

private:
    void rebuild(std::size_t count);

    RealExpr source_;
    PrecConfig cfg_;
    mpfr_prec_t good_prec_;
    std::vector<mpz_class> quotients_;
    std::vector<mpz_class> pnum_, qden_;
};

struct GapBound {
    long gap = 0;                 // G: alpha^G < threshold <= alpha^(G+1)
    mpz_class threshold;          // ceil(numerator_const (a_M + 2) a_max)
    mpz_class a_max_quotient;     // a_M
    std::size_t cover_index = 0;  // least k with q_k > a_max
};

// The continued-fraction step of the proof: for every integer 1 <= y <= a_max
// one has ||y x|| > 1 / ((a_M + 2) y), where a_M is the largest partial
// quotient up to the first convergent denominator beyond a_max.  Combining
// with ||y x|| < numerator_const * alpha^-g yields alpha^g < threshold; the
// returned gap bound G is the largest g compatible with that, certified by
// direct ball comparison of alpha^g against the exact threshold.
GapBound legendre_gap_bound(ContinuedFraction& cf, const mpz_class& a_max,
                            const mpq_class& numerator_const, const PrecConfig& cfg = {});

}  // namespace lucaspow
