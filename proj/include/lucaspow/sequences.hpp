#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "lucaspow/precision.hpp"

namespace lucaspow {

enum class SequenceKind { Fibonacci, Lucas };

// The binary recurrences U_{n+2} = a U_{n+1} + U_n.  Fibonacci-like starts
// (0, 1); Lucas-like starts (2, a).  a_param = 1 gives the classical pair.
struct RecurrenceSpec {
    SequenceKind kind = SequenceKind::Lucas;
    unsigned long a_param = 1;
};

std::string sequence_name(const RecurrenceSpec& spec);
char sequence_symbol(const RecurrenceSpec& spec);  // 'F' or 'L'

// Exact term by fast doubling.
mpz_class term(const RecurrenceSpec& spec, unsigned long n);
// Exact term by the plain recurrence; kept as an independent route.
mpz_class term_iterative(const RecurrenceSpec& spec, unsigned long n);
// All terms 0..n_max in one pass.
std::vector<mpz_class> terms_upto(const RecurrenceSpec& spec, unsigned long n_max);

// Enclosure of L_n - alpha^n - beta^n (classical Lucas); contains 0.
PrecReal binet_residual(unsigned long n, mpfr_prec_t prec);

// Certifies 0.94 alpha^n < L_n < 1.15 alpha^n for n >= 2.
bool proposition1_check(unsigned long n, const PrecConfig& cfg = {});

// Exponent a with p^a == x, when x is a pure power of the prime p (a = 0 for
// x = 1); nullopt otherwise.  Throws on x < 1.
std::optional<unsigned long> as_prime_power(const mpz_class& x, const mpz_class& p);

struct SolutionTriple {
    unsigned long n = 0, m = 0, a = 0;
    friend auto operator<=>(const SolutionTriple&, const SolutionTriple&) = default;
};

struct SearchOptions {
    bool allow_equal = false;      // include n == m pairs
    unsigned long min_index = 0;   // smallest index considered for n and m
};

// Exhaustive, duplicate-free, lexicographically sorted list of all (n, m, a)
// with min_index <= m < n <= n_max (m <= n when allow_equal) and
// U_n + U_m = p^a.  Sums of value zero are skipped.
std::vector<SolutionTriple> search_solutions(const RecurrenceSpec& spec, const mpz_class& p,
                                             unsigned long n_max, const SearchOptions& opts = {});

}  // namespace lucaspow
