#include "lucaspow/sequences.hpp"

#include <utility>

namespace lucaspow {

std::string sequence_name(const RecurrenceSpec& spec) {
    std::string base = spec.kind == SequenceKind::Fibonacci ? "fibonacci" : "lucas";
    if (spec.a_param != 1) base += "(a=" + std::to_string(spec.a_param) + ")";
    return base;
}

char sequence_symbol(const RecurrenceSpec& spec) {
    return spec.kind == SequenceKind::Fibonacci ? 'F' : 'L';
}

namespace {

// (A_n, A_{n+1}) for the Fibonacci-like sequence of the given parameter, by
// fast doubling on the identities
//   A_{2k}   = A_k (2 A_{k+1} - a A_k)
//   A_{2k+1} = A_{k+1}^2 + A_k^2
std::pair<mpz_class, mpz_class> fib_pair(unsigned long a, unsigned long n) {
    if (n == 0) return {mpz_class(0), mpz_class(1)};
    auto [f, g] = fib_pair(a, n >> 1);  // f = A_k, g = A_{k+1}
    mpz_class even = f * (2 * g - a * f);
    mpz_class odd = g * g + f * f;
    if (n & 1UL)
        return {odd, mpz_class(a * odd + even)};
    return {even, odd};
}

}  // namespace

mpz_class term(const RecurrenceSpec& spec, unsigned long n) {
    if (spec.a_param < 1) throw domain_error("recurrence parameter must be >= 1");
    auto [an, an1] = fib_pair(spec.a_param, n);
    if (spec.kind == SequenceKind::Fibonacci) return an;
    // B_n = A_{n+1} + A_{n-1} = 2 A_{n+1} - a A_n
    return 2 * an1 - mpz_class(spec.a_param) * an;
}

mpz_class term_iterative(const RecurrenceSpec& spec, unsigned long n) {
    if (spec.a_param < 1) throw domain_error("recurrence parameter must be >= 1");
    mpz_class u0, u1;
    if (spec.kind == SequenceKind::Fibonacci) {
        u0 = 0;
        u1 = 1;
    } else {
        u0 = 2;
        u1 = spec.a_param;
    }
    if (n == 0) return u0;
    for (unsigned long i = 1; i < n; ++i) {
        mpz_class next = mpz_class(spec.a_param) * u1 + u0;
        u0 = std::move(u1);
        u1 = std::move(next);
    }
    return u1;
}

std::vector<mpz_class> terms_upto(const RecurrenceSpec& spec, unsigned long n_max) {
    std::vector<mpz_class> out;
    out.reserve(n_max + 1);
    mpz_class u0, u1;
    if (spec.kind == SequenceKind::Fibonacci) {
        u0 = 0;
        u1 = 1;
    } else {
        u0 = 2;
        u1 = spec.a_param;
    }
    out.push_back(u0);
    if (n_max >= 1) out.push_back(u1);
    for (unsigned long i = 2; i <= n_max; ++i)
        out.push_back(mpz_class(spec.a_param) * out[i - 1] + out[i - 2]);
    return out;
}

PrecReal binet_residual(unsigned long n, mpfr_prec_t prec) {
    RecurrenceSpec lucas{SequenceKind::Lucas, 1};
    PrecReal exact = PrecReal::from_integer(term(lucas, n), prec);
    PrecReal an = pow_int(const_eval(Constant::Alpha, prec), static_cast<long>(n));
    PrecReal bn = pow_int(const_eval(Constant::Beta, prec), static_cast<long>(n));
    return sub(sub(exact, an), bn);
}

bool proposition1_check(unsigned long n, const PrecConfig& cfg) {
    if (n < 2) throw domain_error("proposition1_check: requires n >= 2");
    RecurrenceSpec lucas{SequenceKind::Lucas, 1};
    mpz_class ln_exact = term(lucas, n);
    mpq_class low(94, 100), high(115, 100);
    for (mpfr_prec_t prec = cfg.start;; prec *= 2) {
        PrecReal an = pow_int(const_eval(Constant::Alpha, prec), static_cast<long>(n));
        PrecReal lval = PrecReal::from_integer(ln_exact, prec);
        Sign lower = compare(mul(PrecReal::from_rational(low, prec), an), lval);
        Sign upper = compare(lval, mul(PrecReal::from_rational(high, prec), an));
        if (lower == Sign::Negative && upper == Sign::Negative) return true;
        if (lower == Sign::Positive || upper == Sign::Positive) return false;
        if (prec >= cfg.ceiling)
            throw precision_error("proposition1_check undecided at ceiling");
    }
}

std::optional<unsigned long> as_prime_power(const mpz_class& x, const mpz_class& p) {
    if (x < 1) throw domain_error("as_prime_power: argument must be >= 1");
    if (p < 2) throw domain_error("as_prime_power: modulus must be >= 2");
    if (x == 1) return 0UL;
    mpz_class rest;
    mp_bitcnt_t count = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    if (rest == 1) return static_cast<unsigned long>(count);
    return std::nullopt;
}

std::vector<SolutionTriple> search_solutions(const RecurrenceSpec& spec, const mpz_class& p,
                                             unsigned long n_max, const SearchOptions& opts) {
    std::vector<SolutionTriple> out;
    std::vector<mpz_class> u = terms_upto(spec, n_max);
    for (unsigned long n = opts.min_index; n <= n_max; ++n) {
        unsigned long m_end = opts.allow_equal ? n : (n == 0 ? 0 : n - 1);
        if (!opts.allow_equal && n == opts.min_index) continue;
        for (unsigned long m = opts.min_index; m <= m_end; ++m) {
            mpz_class sum = u[n] + u[m];
            if (sum == 0) continue;
            if (auto a = as_prime_power(sum, p))
                out.push_back(SolutionTriple{n, m, *a});
        }
    }
    return out;  // loop order is already lexicographic in (n, m)
}

}  // namespace lucaspow
