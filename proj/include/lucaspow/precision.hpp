#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "lucaspow/errors.hpp"

namespace lucaspow {

// Precision, in bits, at which radii (error bounds) are tracked.  Radii are
// always rounded upward, so a short mantissa costs tightness, never soundness.
inline constexpr mpfr_prec_t kErrPrec = 64;
inline constexpr mpfr_prec_t kDefaultPrec = 192;
inline constexpr mpfr_prec_t kPrecCeiling = 4096;

struct PrecConfig {
    mpfr_prec_t start = kDefaultPrec;
    mpfr_prec_t ceiling = kPrecCeiling;
};

enum class Sign { Negative, Zero, Positive, Unknown };

// Minimal RAII wrapper for one mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

private:
    mpfr_t value_;
};

// A real number carried as a ball (approx, err): the represented value x
// satisfies |x - approx| <= err.  approx holds `prec` bits; err is a short
// upward-rounded magnitude.  Values are immutable once built.
class PrecReal {
public:
    PrecReal();  // exact zero at kDefaultPrec
    explicit PrecReal(mpfr_prec_t prec);  // exact zero

    static PrecReal from_integer(const mpz_class& v, mpfr_prec_t prec);
    static PrecReal from_long(long v, mpfr_prec_t prec);
    static PrecReal from_rational(const mpq_class& v, mpfr_prec_t prec);
    // Exact decimal string (optionally with exponent, e.g. "1.2e20").
    static PrecReal from_decimal(const std::string& s, mpfr_prec_t prec);
    // Ball covering the exact interval [lo, hi].
    static PrecReal from_interval(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return approx_.precision(); }
    bool exact() const;
    const BigFloat& approx() const { return approx_; }
    const BigFloat& err() const { return err_; }

    double approx_double() const;
    // Decimal rendering of the midpoint (round to nearest) and of the radius
    // (rounded up), for reports and certificates.
    std::string approx_decimal(std::size_t digits) const;
    std::string err_decimal() const;

    // Certified floor: the floor shared by every point of the ball, or
    // nullopt when the ball straddles an integer.
    std::optional<mpz_class> floor_certified() const;

    // Directed-rounding endpoints, at this value's precision.
    BigFloat lower() const;
    BigFloat upper() const;

    // true iff the ball of `this` is contained in the ball of `outer`.
    bool contained_in(const PrecReal& outer) const;
    // true iff the exact rational q lies inside the ball.
    bool contains_rational(const mpq_class& q) const;

private:
    friend PrecReal add(const PrecReal&, const PrecReal&);
    friend PrecReal sub(const PrecReal&, const PrecReal&);
    friend PrecReal mul(const PrecReal&, const PrecReal&);
    friend PrecReal div(const PrecReal&, const PrecReal&);
    friend PrecReal neg(const PrecReal&);
    friend PrecReal abs(const PrecReal&);
    friend PrecReal ln(const PrecReal&);
    friend PrecReal exp(const PrecReal&);
    friend PrecReal sqrt(const PrecReal&);
    friend PrecReal pow_int(const PrecReal&, long);
    friend Sign compare(const PrecReal&, const PrecReal&);
    friend struct IntegerDistance nearest_integer_distance(const PrecReal&);

    BigFloat approx_;
    BigFloat err_;
};

// Outward-rounded ball arithmetic.  Binary operations work at the larger of
// the operand precisions; every result ball encloses the exact image.
PrecReal add(const PrecReal& x, const PrecReal& y);
PrecReal sub(const PrecReal& x, const PrecReal& y);
PrecReal mul(const PrecReal& x, const PrecReal& y);
PrecReal div(const PrecReal& x, const PrecReal& y);  // y must exclude 0
PrecReal neg(const PrecReal& x);
PrecReal abs(const PrecReal& x);
PrecReal ln(const PrecReal& x);  // x must be strictly positive
PrecReal exp(const PrecReal& x);
PrecReal sqrt(const PrecReal& x);  // x must be nonnegative
PrecReal pow_int(const PrecReal& x, long k);

// Positive iff x's ball lies strictly above y's; Zero only for identical
// exact values; Unknown whenever the balls overlap.
Sign compare(const PrecReal& x, const PrecReal& y);
Sign sign_of(const PrecReal& x);
Sign opposite(Sign s);

struct IntegerDistance {
    PrecReal dist;          // enclosure of min_{k in Z} |x - k|, within [0, 1/2]
    mpz_class nearest;      // meaningful only when nearest_determined
    bool nearest_determined = false;
};

// Distance to the nearest integer.  Requires err < 1/4.  If the ball
// straddles a half-integer the enclosure widens to cover both candidate
// integers and `nearest_determined` is false; no branch is ever picked.
IntegerDistance nearest_integer_distance(const PrecReal& x);

// Named constants of the pipeline.
enum class Constant { Alpha, Beta, Sqrt5, LogAlpha, Log2, Golden };

// Enclosure of a named constant with err <= 2^(-prec/2).
PrecReal const_eval(Constant c, mpfr_prec_t prec);
// Enclosure of log k for an integer k >= 2.
PrecReal log_of_integer(const mpz_class& k, mpfr_prec_t prec);

// Exact rational value of a decimal literal such as "-27.25" or "1.2e20".
mpq_class decimal_to_rational(const std::string& s);

}  // namespace lucaspow
