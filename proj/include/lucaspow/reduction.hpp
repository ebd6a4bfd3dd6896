#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "lucaspow/cfrac.hpp"
#include "lucaspow/realexpr.hpp"

namespace lucaspow {

// Input of the Dujella-Petho lemma: if q is a convergent denominator of
// kappa with q > 6M and eps = ||mu q|| - M ||kappa q|| > 0, then
// 0 < m kappa - n + mu < A B^-m has no integer solution with
// log(A q / eps) / log B <= m <= M.
struct ReductionInstance {
    RealExpr kappa;   // irrational, re-evaluable
    RealExpr mu;      // shift
    mpq_class A;      // > 0, exact
    RealExpr B;       // > 1
    mpz_class M;      // bound on the integer multiplying kappa
    std::string label;
};

struct ReductionAttempt {
    mpz_class q;
    std::string epsilon;  // midpoint rendering, for the record
    bool positive = false;
};

struct ReductionResult {
    mpz_class q_used;
    PrecReal epsilon;
    mpz_class reduced_bound;  // certified ceil of log(A q / eps)/log B
    std::vector<ReductionAttempt> attempts;
};

// Walks convergents of kappa with q > 6M until eps > 0 is certified (at most
// retry_budget of them), escalating precision whenever the sign of eps is
// undecided.  Throws epsilon_error when the budget is exhausted.
ReductionResult dujella_petho(const ReductionInstance& inst, const PrecConfig& cfg = {},
                              int retry_budget = 10);
// Same, reusing an existing expansion of kappa.
ReductionResult dujella_petho(const ReductionInstance& inst, ContinuedFraction& cf,
                              const PrecConfig& cfg, int retry_budget);

enum class CaseSign { ZPositive, ZNegative };

// The two linear forms of the reduction step for U_n + U_m = p^a, gap
// u = n - m, rho(u) = 1 + alpha^-u:
//   z > 0:  0 < a (log p/log alpha) - n - log rho/log alpha < 5 alpha^-n
//   z < 0:  0 < n (log alpha/log p) - a + log rho/log p     < 4 alpha^-n
ReductionInstance build_case_instance(CaseSign case_sign, unsigned long gap, const mpz_class& p,
                                      const mpz_class& M);

// Exact detection of the degenerate shifts: alpha^u + 1 == p^s alpha^j makes
// mu an integer combination of 1 and kappa, so eps > 0 is impossible for
// every q and the gap must be closed by the homogeneous Legendre bound
// instead.  Returns (s, j) when the identity holds.
struct RhoPrimePowerForm {
    unsigned long s = 0;
    long j = 0;
};
std::optional<RhoPrimePowerForm> rho_prime_power_form(unsigned long gap, const mpz_class& p);

// Outcome for one gap of a sweep.
struct GapOutcome {
    unsigned long gap = 0;
    bool degenerate = false;
    // Dujella-Petho route (degenerate == false):
    std::optional<ReductionResult> reduction;
    // Homogeneous route (degenerate == true): the linear form collapses to
    // 0 < |y kappa - x| < A alpha^-n with 1 <= |y| <= y_bound, and the
    // Legendre lower bound 1/((a_M + 2) |y|) forces n <= n_bound.
    RhoPrimePowerForm form;
    mpz_class homogeneous_threshold;
    long homogeneous_n_bound = 0;
};

struct SweepResult {
    CaseSign case_sign = CaseSign::ZPositive;
    std::vector<GapOutcome> per_gap;
    // Max reduced bound over the Dujella-Petho gaps, in the variable the
    // lemma actually bounds (a for z > 0, n for z < 0).
    mpz_class max_reduced_bound;
    // Max n-bound over the degenerate gaps (0 when none).
    long max_homogeneous_bound = 0;
};

// Runs one case over gaps 1..gap_bound.  Any gap that neither certifies
// eps > 0 nor is exactly degenerate aborts with the failing gap identified.
SweepResult run_reduction_sweep(CaseSign case_sign, unsigned long gap_bound, const mpz_class& p,
                                const mpz_class& M, const PrecConfig& cfg = {},
                                int retry_budget = 10);

}  // namespace lucaspow
