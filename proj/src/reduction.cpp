#include "lucaspow/reduction.hpp"

#include <utility>

namespace lucaspow {

namespace {

mpq_class to_rational(mpfr_srcptr v) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v);
    return q;
}

// Certified ceil of the upper endpoint of x (a sound integer upper bound for
// any value in the ball).
mpz_class ceil_upper(const PrecReal& x) {
    mpq_class hi = to_rational(x.upper().get());
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    return c;
}

}  // namespace

ReductionResult dujella_petho(const ReductionInstance& inst, const PrecConfig& cfg,
                              int retry_budget) {
    ContinuedFraction cf(inst.kappa, cfg);
    return dujella_petho(inst, cf, cfg, retry_budget);
}

ReductionResult dujella_petho(const ReductionInstance& inst, ContinuedFraction& cf,
                              const PrecConfig& cfg, int retry_budget) {
    if (inst.A <= 0) throw domain_error("dujella_petho: A must be positive");
    if (inst.M < 1) throw domain_error("dujella_petho: M must be >= 1");
    if (certified_sign(inst.B - RealExpr::integer(1), cfg) != Sign::Positive)
        throw domain_error("dujella_petho: B must exceed 1");

    ReductionResult result;
    Convergent conv = cf.first_q_above(6 * inst.M);
    for (int tries = 0; tries < retry_budget; ++tries, conv = cf.convergent(conv.index + 1)) {
        const mpz_class& q = conv.q;
        for (mpfr_prec_t prec = cfg.start;; prec *= 2) {
            PrecReal qv = PrecReal::from_integer(q, prec);
            PrecReal mu_q = mul(inst.mu.eval(prec), qv);
            PrecReal ka_q = mul(inst.kappa.eval(prec), qv);
            if (!(mpfr_cmp_d(mu_q.err().get(), 0.25) < 0) ||
                !(mpfr_cmp_d(ka_q.err().get(), 0.25) < 0)) {
                if (prec >= cfg.ceiling)
                    throw precision_error("dujella_petho: cannot localize ||.|| at ceiling");
                continue;
            }
            IntegerDistance dmu = nearest_integer_distance(mu_q);
            IntegerDistance dka = nearest_integer_distance(ka_q);
            PrecReal eps =
                sub(dmu.dist, mul(PrecReal::from_integer(inst.M, prec), dka.dist));
            Sign s = sign_of(eps);
            if (s == Sign::Positive) {
                result.q_used = q;
                result.epsilon = eps;
                result.attempts.push_back(ReductionAttempt{q, eps.approx_decimal(6), true});
                // reduced bound: ceil of log(A q / eps) / log B
                PrecReal aq = mul(PrecReal::from_rational(inst.A, prec), qv);
                PrecReal ratio = lucaspow::div(ln(lucaspow::div(aq, eps)), ln(inst.B.eval(prec)));
                result.reduced_bound = ceil_upper(ratio);
                return result;
            }
            if (s == Sign::Negative || s == Sign::Zero) {
                result.attempts.push_back(ReductionAttempt{q, eps.approx_decimal(6), false});
                break;  // next convergent
            }
            if (prec >= cfg.ceiling)
                throw precision_error("dujella_petho: epsilon sign undecided at ceiling (q = " +
                                      q.get_str() + ")");
        }
    }
    throw epsilon_error("dujella_petho" + (inst.label.empty() ? "" : " [" + inst.label + "]") +
                        ": no qualifying convergent with certified epsilon > 0 within " +
                        std::to_string(retry_budget) + " attempts");
}

ReductionInstance build_case_instance(CaseSign case_sign, unsigned long gap, const mpz_class& p,
                                      const mpz_class& M) {
    if (gap < 1) throw domain_error("build_case_instance: gap must be >= 1");
    RealExpr alpha = RealExpr::constant(Constant::Alpha);
    RealExpr rho = RealExpr::integer(1) + RealExpr::pow_int(alpha, -static_cast<long>(gap));
    RealExpr log_alpha = RealExpr::constant(Constant::LogAlpha);
    RealExpr log_p = RealExpr::log_integer(p);
    PrecConfig cfg;
    ReductionInstance inst;
    inst.M = M;
    if (case_sign == CaseSign::ZPositive) {
        // the constant absorption behind A = 5: 0 < z < 2 alpha^-n divided by
        // log alpha needs 2/log alpha < 5
        if (!certify_less(RealExpr::integer(2) / log_alpha, RealExpr::integer(5), cfg))
            throw domain_error("build_case_instance: 2/log alpha < 5 failed");
        inst.kappa = log_p / log_alpha;
        inst.mu = -(RealExpr::ln(rho) / log_alpha);
        inst.A = 5;
        inst.B = alpha;
        inst.label = "z>0 gap " + std::to_string(gap);
    } else {
        // A = 4 needs 4/log p <= 4, i.e. log p >= 1, true for p >= 3
        if (!certify_less(RealExpr::integer(1), log_p, cfg))
            throw domain_error("build_case_instance: log p > 1 failed (p must be >= 3)");
        inst.kappa = log_alpha / log_p;
        inst.mu = RealExpr::ln(rho) / log_p;
        inst.A = 4;
        inst.B = alpha;
        inst.label = "z<0 gap " + std::to_string(gap);
    }
    return inst;
}

std::optional<RhoPrimePowerForm> rho_prime_power_form(unsigned long gap, const mpz_class& p) {
    if (gap < 1) throw domain_error("rho_prime_power_form: gap must be >= 1");
    // In Fibonacci coordinates alpha^u + 1 = F_u alpha + (F_{u-1} + 1), while
    // p^s alpha^j = p^s F_j alpha + p^s F_{j-1}.  Both target coordinates are
    // positive, which pins 1 <= j <= u + 1.
    std::vector<mpz_class> fib(gap + 4);
    fib[0] = 0;
    fib[1] = 1;
    for (std::size_t i = 2; i < fib.size(); ++i) fib[i] = fib[i - 1] + fib[i - 2];
    const mpz_class& x = fib[gap];          // F_u
    mpz_class y = fib[gap - 1] + 1;         // F_{u-1} + 1
    for (unsigned long j = 1; j <= gap + 1; ++j) {
        const mpz_class& fj = fib[j];
        if (fj == 0 || x % fj != 0) continue;
        mpz_class scale = x / fj;
        if (scale < 1 || scale * fib[j - 1] != y) continue;
        unsigned long s = 0;
        mpz_class t = scale;
        while (t > 1 && t % p == 0) {
            t /= p;
            ++s;
        }
        if (t != 1) continue;  // scale is not a pure power of p
        return RhoPrimePowerForm{s, static_cast<long>(j)};
    }
    return std::nullopt;
}

namespace {

// Largest n with alpha^n < threshold, certified by direct power comparison.
long certified_power_bound(const mpz_class& threshold, const PrecConfig& cfg) {
    RealExpr alpha = RealExpr::constant(Constant::Alpha);
    RealExpr thr = RealExpr::integer(threshold);
    mpz_class est = certified_floor(RealExpr::ln(thr) / RealExpr::constant(Constant::LogAlpha), cfg);
    long g = est.get_si();
    while (!certify_less(RealExpr::pow_int(alpha, g), thr, cfg)) --g;
    while (certify_less(RealExpr::pow_int(alpha, g + 1), thr, cfg)) ++g;
    return g;
}

}  // namespace

SweepResult run_reduction_sweep(CaseSign case_sign, unsigned long gap_bound, const mpz_class& p,
                                const mpz_class& M, const PrecConfig& cfg, int retry_budget) {
    SweepResult sweep;
    sweep.case_sign = case_sign;
    sweep.max_reduced_bound = 0;

    // One shared expansion of kappa per case; expansions are certified and
    // immutable once extended.
    ReductionInstance probe = build_case_instance(case_sign, 2, p, M);
    ContinuedFraction cf(probe.kappa, cfg);

    // Shared data for the degenerate gaps: for 1 <= |y| <= M + 2,
    // ||y kappa|| > 1/((a_M + 2) |y|), hence alpha^n < A (a_M + 2) (M + 2).
    std::optional<std::pair<mpz_class, long>> homogeneous;  // (threshold, n bound)

    for (unsigned long gap = 1; gap <= gap_bound; ++gap) {
        GapOutcome outcome;
        outcome.gap = gap;
        if (auto form = rho_prime_power_form(gap, p)) {
            outcome.degenerate = true;
            outcome.form = *form;
            if (!homogeneous) {
                ReductionInstance inst = build_case_instance(case_sign, gap, p, M);
                Convergent cover = cf.first_q_above(M + 2);
                mpz_class a_m = cf.max_quotient(cover.index);
                mpz_class thr = inst.A.get_num() * (a_m + 2) * (M + 2);
                mpz_cdiv_q(thr.get_mpz_t(), thr.get_mpz_t(), inst.A.get_den().get_mpz_t());
                homogeneous = {thr, certified_power_bound(thr, cfg)};
            }
            outcome.homogeneous_threshold = homogeneous->first;
            outcome.homogeneous_n_bound = homogeneous->second;
            if (outcome.homogeneous_n_bound > sweep.max_homogeneous_bound)
                sweep.max_homogeneous_bound = outcome.homogeneous_n_bound;
        } else {
            ReductionInstance inst = build_case_instance(case_sign, gap, p, M);
            try {
                outcome.reduction = dujella_petho(inst, cf, cfg, retry_budget);
            } catch (const epsilon_error& e) {
                throw epsilon_error("sweep aborted at gap " + std::to_string(gap) + ": " +
                                    e.what());
            }
            if (outcome.reduction->reduced_bound > sweep.max_reduced_bound)
                sweep.max_reduced_bound = outcome.reduction->reduced_bound;
        }
        sweep.per_gap.push_back(std::move(outcome));
    }
    return sweep;
}

}  // namespace lucaspow
