#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "lucaspow/realexpr.hpp"

namespace lucaspow {

// Data of an algebraic number needed for its absolute logarithmic height:
// minimal polynomial over Z (leading coefficient first) and enclosures of
// the conjugate absolute values.
struct AlgebraicNumberDesc {
    std::vector<mpz_class> minpoly_coeffs;
    std::vector<RealExpr> conjugate_moduli;
    std::size_t degree() const { return conjugate_moduli.size(); }
};

// h(x) = (1/d) (log|a_d| + sum log max{1, |x_i|}).
PrecReal height(const AlgebraicNumberDesc& desc, mpfr_prec_t prec);

enum class HeightRule { Sum, Product, Power };

// Standard upper bounds: h(x +- y) <= h(x) + h(y) + log 2,
// h(x y^(+-1)) <= h(x) + h(y), h(x^s) = |s| h(x).
PrecReal height_combine(HeightRule rule, const std::vector<PrecReal>& h_inputs, long s = 0);

// Two-log lower bound (Laurent-Mignotte-Nesterenko form):
// log|Gamma| > -30.9 D^4 max{log b', 21/D, 1/2}^2 logA1 logA2 with
// b' = b1/(D logA2) + b2/(D logA1).
struct LmnInstance {
    mpz_class b1, b2;
    unsigned long D = 2;
    PrecReal logA1, logA2;
};
PrecReal lmn_lower_bound(const LmnInstance& inst);

// Matveev's lower bound, standard statement.  Real field:
//   log|Lambda| > -1.4 30^(l+3) l^4.5 D^2 A_1..A_l (1+log D)(1+log B).
// General: -3 30^(l+4) (l+1)^5.5 D^2 A_1..A_l (1+log D)(1+log B).
struct MatveevInstance {
    unsigned long l = 1;
    unsigned long D = 1;
    std::vector<PrecReal> A;
    PrecReal B;
    bool real_field = true;
};
PrecReal matveev_lower_bound(const MatveevInstance& inst);

// alpha is a unit of Q(sqrt 5) (norm -1 from X^2 - X - 1) while p^k has norm
// p^(2k) != +-1, so alpha^x = p^y forces x = y = 0.
bool multiplicative_independence_check(const mpz_class& p);

// One certified numeric claim of the bound chain, with the published rounding
// it is measured against (empty when there is none).
struct BoundClaim {
    std::string name;
    PrecReal value;
    std::string paper_rounding;  // published decimal; empty if not applicable
    bool within_paper = true;
    int stage = 5;  // pipeline stage the claim belongs to (3, 4 or 5)
};

struct CrudeBounds {
    PrecReal a_coeff;           // c1 = log 2 / log p
    PrecReal lmn_aggregate;     // 30.9 * 2^4 * logA1 * logA2       (<= 272 for p = 3)
    PrecReal gap_coeff;         // lmn_aggregate + log p / (21/2)^2 (<= 276 for p = 3)
    PrecReal matveev_c;         // 1.4 30^6 3^4.5 D^2 (1+log D)     (<= 9.7e11)
    PrecReal log_absorb_ratio;  // r with 1+log(n+1) <= r log n for n > n_floor
    PrecReal chain_coeff;       // matveev_c * A1 * A2 * r, the log n (2+(n-m) log alpha) factor
    PrecReal nbound_coeff;      // combined coefficient of n < K log n max{log 2n, 21/2}^2
    mpz_class branch_small;     // rounded bound when max = 21/2
    mpz_class branch_log;       // rounded bound when max = log 2n
    mpz_class n_upper;          // max of the two branches
    mpz_class exponent_bound;   // a <= n + 2 <= this
    std::vector<BoundClaim> claims;
    std::vector<std::string> notes;

    // The gap inequality of the chain: (n - m) log alpha < gap_coeff * max^2,
    // evaluated at a given n.
    PrecReal gap_bound_at(const mpz_class& n, mpfr_prec_t prec) const;
};

// Reproduces the crude-bound chain for U_n + U_m = p^a in the regime
// n > n_floor, with every inequality of the derivation machine-checked.
CrudeBounds derive_crude_bounds(const mpz_class& p, unsigned long n_floor,
                                const PrecConfig& cfg = {});

}  // namespace lucaspow
