#include "lucaspow/precision.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <vector>

namespace lucaspow {

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);  // same precision: exact
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

namespace {

// Upper bound on the rounding error of a round-to-nearest operation whose
// result is r at precision prec.  Zero when the operation was exact.
void rounding_bound(mpfr_ptr out, mpfr_srcptr r, int ternary, mpfr_prec_t prec) {
    if (ternary == 0) {
        mpfr_set_zero(out, 1);
        return;
    }
    if (mpfr_zero_p(r) || !mpfr_number_p(r))
        throw domain_error("ball arithmetic: rounded result out of exponent range");
    mpfr_set_ui_2exp(out, 1, mpfr_get_exp(r) - prec, MPFR_RNDU);
}

// |v| rounded toward +inf into a kErrPrec temporary.
BigFloat abs_up(mpfr_srcptr v) {
    BigFloat r(kErrPrec);
    mpfr_abs(r.get(), v, MPFR_RNDU);
    return r;
}

// |v| rounded toward 0 into a kErrPrec temporary.
BigFloat abs_down(mpfr_srcptr v) {
    BigFloat r(kErrPrec);
    mpfr_abs(r.get(), v, MPFR_RNDD);
    return r;
}

void check_err(const BigFloat& e) {
    if (mpfr_sgn(e.get()) < 0 || !mpfr_number_p(e.get()))
        throw domain_error("ball arithmetic: invalid error bound");
}

}  // namespace

PrecReal::PrecReal() : approx_(kDefaultPrec), err_(kErrPrec) {}

PrecReal::PrecReal(mpfr_prec_t prec) : approx_(prec), err_(kErrPrec) {}

PrecReal PrecReal::from_integer(const mpz_class& v, mpfr_prec_t prec) {
    PrecReal r(prec);
    int t = mpfr_set_z(r.approx_.get(), v.get_mpz_t(), MPFR_RNDN);
    rounding_bound(r.err_.get(), r.approx_.get(), t, prec);
    return r;
}

PrecReal PrecReal::from_long(long v, mpfr_prec_t prec) {
    PrecReal r(prec);
    int t = mpfr_set_si(r.approx_.get(), v, MPFR_RNDN);
    rounding_bound(r.err_.get(), r.approx_.get(), t, prec);
    return r;
}

PrecReal PrecReal::from_rational(const mpq_class& v, mpfr_prec_t prec) {
    PrecReal r(prec);
    int t = mpfr_set_q(r.approx_.get(), v.get_mpq_t(), MPFR_RNDN);
    rounding_bound(r.err_.get(), r.approx_.get(), t, prec);
    return r;
}

mpq_class decimal_to_rational(const std::string& s) {
    // Optional sign, digits, optional fraction, optional decimal exponent.
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = (s[i++] == '-');
    std::string digits;
    long frac_digits = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
        std::string es;
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) es.push_back(s[i]);
        if (es.empty()) throw domain_error("bad decimal literal: " + s);
        exp10 = std::stol(es);
        if (eneg) exp10 = -exp10;
    }
    if (!seen_digit || i != s.size()) throw domain_error("bad decimal literal: " + s);

    mpz_class numerator(digits.empty() ? std::string("0") : digits, 10);
    if (negative) numerator = -numerator;
    mpq_class q(numerator);
    long shift = exp10 - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift >= 0 ? shift : -shift));
    if (shift >= 0)
        q *= mpq_class(pow10);
    else
        q /= mpq_class(pow10);
    q.canonicalize();
    return q;
}

PrecReal PrecReal::from_decimal(const std::string& s, mpfr_prec_t prec) {
    return from_rational(decimal_to_rational(s), prec);
}

PrecReal PrecReal::from_interval(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
    if (lo > hi) throw domain_error("from_interval: empty interval");
    mpq_class mid = (lo + hi) / 2, rad = (hi - lo) / 2;
    PrecReal r = from_rational(mid, prec);  // err already covers the rounding
    BigFloat radf(kErrPrec);
    mpfr_set_q(radf.get(), rad.get_mpq_t(), MPFR_RNDU);
    mpfr_add(r.err_.get(), r.err_.get(), radf.get(), MPFR_RNDU);
    return r;
}

bool PrecReal::exact() const { return mpfr_zero_p(err_.get()); }

double PrecReal::approx_double() const { return mpfr_get_d(approx_.get(), MPFR_RNDN); }

std::string PrecReal::approx_decimal(std::size_t digits) const {
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%zuRNg", digits);
    char* out = nullptr;
    mpfr_asprintf(&out, fmt, approx_.get());
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

std::string PrecReal::err_decimal() const {
    char* out = nullptr;
    mpfr_asprintf(&out, "%.3RUg", err_.get());
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

BigFloat PrecReal::lower() const {
    BigFloat lo(precision());
    mpfr_sub(lo.get(), approx_.get(), err_.get(), MPFR_RNDD);
    return lo;
}

BigFloat PrecReal::upper() const {
    BigFloat hi(precision());
    mpfr_add(hi.get(), approx_.get(), err_.get(), MPFR_RNDU);
    return hi;
}

std::optional<mpz_class> PrecReal::floor_certified() const {
    BigFloat lo = lower(), hi = upper();
    mpz_class flo, fhi;
    mpfr_get_z(flo.get_mpz_t(), lo.get(), MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), hi.get(), MPFR_RNDD);
    if (flo != fhi) return std::nullopt;
    return flo;
}

bool PrecReal::contained_in(const PrecReal& outer) const {
    BigFloat lo = lower(), hi = upper();
    BigFloat olo = outer.lower(), ohi = outer.upper();
    return mpfr_greaterequal_p(lo.get(), olo.get()) && mpfr_lessequal_p(hi.get(), ohi.get());
}

bool PrecReal::contains_rational(const mpq_class& q) const {
    // |q - approx| <= err, decided exactly: evaluate q - approx as a rational.
    mpq_class amid, aerr;
    mpfr_get_q(amid.get_mpq_t(), approx_.get());
    mpfr_get_q(aerr.get_mpq_t(), err_.get());
    mpq_class d = q - amid;
    if (d < 0) d = -d;
    return d <= aerr;
}

PrecReal add(const PrecReal& x, const PrecReal& y) {
    mpfr_prec_t prec = std::max(x.precision(), y.precision());
    PrecReal z(prec);
    int t = mpfr_add(z.approx_.get(), x.approx_.get(), y.approx_.get(), MPFR_RNDN);
    BigFloat rb(kErrPrec);
    rounding_bound(rb.get(), z.approx_.get(), t, prec);
    mpfr_add(z.err_.get(), x.err_.get(), y.err_.get(), MPFR_RNDU);
    mpfr_add(z.err_.get(), z.err_.get(), rb.get(), MPFR_RNDU);
    check_err(z.err_);
    return z;
}

PrecReal sub(const PrecReal& x, const PrecReal& y) { return add(x, neg(y)); }

PrecReal neg(const PrecReal& x) {
    PrecReal z(x.precision());
    mpfr_neg(z.approx_.get(), x.approx_.get(), MPFR_RNDN);  // exact
    mpfr_set(z.err_.get(), x.err_.get(), MPFR_RNDU);
    return z;
}

PrecReal abs(const PrecReal& x) {
    PrecReal z(x.precision());
    mpfr_abs(z.approx_.get(), x.approx_.get(), MPFR_RNDN);  // exact
    mpfr_set(z.err_.get(), x.err_.get(), MPFR_RNDU);
    return z;
}

PrecReal mul(const PrecReal& x, const PrecReal& y) {
    mpfr_prec_t prec = std::max(x.precision(), y.precision());
    PrecReal z(prec);
    int t = mpfr_mul(z.approx_.get(), x.approx_.get(), y.approx_.get(), MPFR_RNDN);
    BigFloat rb(kErrPrec);
    rounding_bound(rb.get(), z.approx_.get(), t, prec);
    // |xy - x^y^| <= |x^| ey + |y^| ex + ex ey
    BigFloat ax = abs_up(x.approx_.get()), ay = abs_up(y.approx_.get());
    BigFloat t1(kErrPrec), t2(kErrPrec), t3(kErrPrec);
    mpfr_mul(t1.get(), ax.get(), y.err_.get(), MPFR_RNDU);
    mpfr_mul(t2.get(), ay.get(), x.err_.get(), MPFR_RNDU);
    mpfr_mul(t3.get(), x.err_.get(), y.err_.get(), MPFR_RNDU);
    mpfr_add(z.err_.get(), t1.get(), t2.get(), MPFR_RNDU);
    mpfr_add(z.err_.get(), z.err_.get(), t3.get(), MPFR_RNDU);
    mpfr_add(z.err_.get(), z.err_.get(), rb.get(), MPFR_RNDU);
    check_err(z.err_);
    return z;
}

PrecReal div(const PrecReal& x, const PrecReal& y) {
    mpfr_prec_t prec = std::max(x.precision(), y.precision());
    // Lower bound for |y| over the whole ball.
    BigFloat ay_dn = abs_down(y.approx_.get());
    BigFloat ylow(kErrPrec);
    mpfr_sub(ylow.get(), ay_dn.get(), y.err_.get(), MPFR_RNDD);
    if (mpfr_sgn(ylow.get()) <= 0)
        throw domain_error("division by an interval containing zero");

    PrecReal z(prec);
    int t = mpfr_div(z.approx_.get(), x.approx_.get(), y.approx_.get(), MPFR_RNDN);
    BigFloat rb(kErrPrec);
    rounding_bound(rb.get(), z.approx_.get(), t, prec);
    // |x/y - x^/y^| <= (ex |y^| + ey |x^|) / (|y^| (|y^| - ey))
    BigFloat ax = abs_up(x.approx_.get()), ay_up = abs_up(y.approx_.get());
    BigFloat num(kErrPrec), t2(kErrPrec), den(kErrPrec);
    mpfr_mul(num.get(), x.err_.get(), ay_up.get(), MPFR_RNDU);
    mpfr_mul(t2.get(), y.err_.get(), ax.get(), MPFR_RNDU);
    mpfr_add(num.get(), num.get(), t2.get(), MPFR_RNDU);
    mpfr_mul(den.get(), ay_dn.get(), ylow.get(), MPFR_RNDD);
    mpfr_div(z.err_.get(), num.get(), den.get(), MPFR_RNDU);
    mpfr_add(z.err_.get(), z.err_.get(), rb.get(), MPFR_RNDU);
    check_err(z.err_);
    return z;
}

PrecReal ln(const PrecReal& x) {
    mpfr_prec_t prec = x.precision();
    BigFloat ax_dn = abs_down(x.approx_.get());
    BigFloat xlow(kErrPrec);
    mpfr_sub(xlow.get(), ax_dn.get(), x.err_.get(), MPFR_RNDD);
    if (mpfr_sgn(x.approx_.get()) <= 0 || mpfr_sgn(xlow.get()) <= 0)
        throw domain_error("log of an interval not strictly positive");

    PrecReal z(prec);
    int t = mpfr_log(z.approx_.get(), x.approx_.get(), MPFR_RNDN);
    BigFloat rb(kErrPrec);
    rounding_bound(rb.get(), z.approx_.get(), t, prec);
    // Mean value: |ln x - ln x^| <= ex / min(x) over the ball.
    mpfr_div(z.err_.get(), x.err_.get(), xlow.get(), MPFR_RNDU);
    mpfr_add(z.err_.get(), z.err_.get(), rb.get(), MPFR_RNDU);
    check_err(z.err_);
    return z;
}

PrecReal exp(const PrecReal& x) {
    mpfr_prec_t prec = x.precision();
    PrecReal z(prec);
    int t = mpfr_exp(z.approx_.get(), x.approx_.get(), MPFR_RNDN);
    BigFloat rb(kErrPrec);
    rounding_bound(rb.get(), z.approx_.get(), t, prec);
    // |e^x - e^x^| <= e^(x^+ex) ex
    BigFloat hi(kErrPrec), ehi(kErrPrec);
    mpfr_add(hi.get(), x.approx_.get(), x.err_.get(), MPFR_RNDU);
    mpfr_exp(ehi.get(), hi.get(), MPFR_RNDU);
    mpfr_mul(z.err_.get(), ehi.get(), x.err_.get(), MPFR_RNDU);
    mpfr_add(z.err_.get(), z.err_.get(), rb.get(), MPFR_RNDU);
    check_err(z.err_);
    return z;
}

PrecReal sqrt(const PrecReal& x) {
    mpfr_prec_t prec = x.precision();
    BigFloat lo = x.lower();
    if (mpfr_sgn(lo.get()) < 0)
        throw domain_error("sqrt of an interval containing negatives");
    PrecReal z(prec);
    int t = mpfr_sqrt(z.approx_.get(), x.approx_.get(), MPFR_RNDN);
    BigFloat rb(kErrPrec);
    rounding_bound(rb.get(), z.approx_.get(), t, prec);
    if (x.exact()) {
        mpfr_set(z.err_.get(), rb.get(), MPFR_RNDU);
        return z;
    }
    BigFloat prop(kErrPrec);
    if (mpfr_sgn(lo.get()) > 0) {
        // derivative bound: ex / (2 sqrt(min x))
        BigFloat slo(kErrPrec);
        mpfr_sqrt(slo.get(), lo.get(), MPFR_RNDD);
        mpfr_mul_ui(slo.get(), slo.get(), 2, MPFR_RNDD);
        mpfr_div(prop.get(), x.err_.get(), slo.get(), MPFR_RNDU);
    } else {
        // |sqrt a - sqrt b| <= sqrt |a - b|
        mpfr_sqrt(prop.get(), x.err_.get(), MPFR_RNDU);
    }
    mpfr_add(z.err_.get(), prop.get(), rb.get(), MPFR_RNDU);
    check_err(z.err_);
    return z;
}

PrecReal pow_int(const PrecReal& x, long k) {
    mpfr_prec_t prec = x.precision();
    if (k == 0) return PrecReal::from_long(1, prec);
    bool invert = k < 0;
    unsigned long e = invert ? static_cast<unsigned long>(-(k + 1)) + 1UL
                             : static_cast<unsigned long>(k);
    PrecReal acc = PrecReal::from_long(1, prec);
    PrecReal base = x;
    while (e > 0) {
        if (e & 1UL) acc = mul(acc, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    if (invert) acc = div(PrecReal::from_long(1, prec), acc);
    return acc;
}

Sign compare(const PrecReal& x, const PrecReal& y) {
    if (x.exact() && y.exact()) {
        int c = mpfr_cmp(x.approx_.get(), y.approx_.get());
        return c < 0 ? Sign::Negative : (c > 0 ? Sign::Positive : Sign::Zero);
    }
    BigFloat xlo = x.lower(), xhi = x.upper();
    BigFloat ylo = y.lower(), yhi = y.upper();
    if (mpfr_greater_p(xlo.get(), yhi.get())) return Sign::Positive;
    if (mpfr_less_p(xhi.get(), ylo.get())) return Sign::Negative;
    return Sign::Unknown;
}

Sign sign_of(const PrecReal& x) {
    if (x.exact()) {
        int s = mpfr_sgn(x.approx().get());
        return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero);
    }
    BigFloat lo = x.lower(), hi = x.upper();
    if (mpfr_sgn(lo.get()) > 0) return Sign::Positive;
    if (mpfr_sgn(hi.get()) < 0) return Sign::Negative;
    return Sign::Unknown;
}

Sign opposite(Sign s) {
    switch (s) {
        case Sign::Negative: return Sign::Positive;
        case Sign::Positive: return Sign::Negative;
        default: return s;
    }
}

IntegerDistance nearest_integer_distance(const PrecReal& x) {
    mpfr_prec_t prec = x.precision();
    BigFloat quarter(kErrPrec);
    mpfr_set_ui_2exp(quarter.get(), 1, -2, MPFR_RNDN);
    if (!mpfr_less_p(x.err().get(), quarter.get()))
        throw domain_error("nearest_integer_distance: error bound not below 1/4");

    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x.approx().get(), MPFR_RNDN);
    // r = approx - z is exact: z matches the high-order part of approx.
    BigFloat r(prec);
    int t = mpfr_sub_z(r.get(), x.approx().get(), z.get_mpz_t(), MPFR_RNDN);
    if (t != 0) throw domain_error("nearest_integer_distance: unexpected inexact recentering");

    BigFloat flo(prec), fhi(prec);
    mpfr_sub(flo.get(), r.get(), x.err().get(), MPFR_RNDD);
    mpfr_add(fhi.get(), r.get(), x.err().get(), MPFR_RNDU);
    // |r| <= 1/2 and err < 1/4, so (flo, fhi) lies within (-3/4, 3/4) and can
    // cross at most one of -1/2, +1/2.

    BigFloat half(kErrPrec);
    mpfr_set_ui_2exp(half.get(), 1, -1, MPFR_RNDN);
    BigFloat neg_half(kErrPrec);
    mpfr_neg(neg_half.get(), half.get(), MPFR_RNDN);

    // Distances of the endpoints to Z, as directed bounds.
    auto fold = [&](mpfr_srcptr v, mpfr_rnd_t rnd, BigFloat& out) {
        // ||v|| for v in (-3/4, 3/4): |v| if <= 1/2 else 1 - |v|
        BigFloat av(prec);
        mpfr_abs(av.get(), v, rnd);
        if (mpfr_cmp(av.get(), half.get()) <= 0) {
            out = av;
        } else {
            BigFloat one_minus(prec);
            mpfr_ui_sub(one_minus.get(), 1, av.get(), rnd == MPFR_RNDD ? MPFR_RNDD : MPFR_RNDU);
            out = one_minus;
        }
    };

    IntegerDistance result;
    BigFloat dlo(prec), dhi(prec);
    bool cross_pos = mpfr_greaterequal_p(fhi.get(), half.get());
    bool cross_neg = mpfr_lessequal_p(flo.get(), neg_half.get());
    bool contains_int = mpfr_sgn(flo.get()) <= 0 && mpfr_sgn(fhi.get()) >= 0;

    if (cross_pos || cross_neg) {
        // ||.|| peaks at 1/2 inside the interval; min at one of the endpoints.
        BigFloat d1(prec), d2(prec);
        fold(flo.get(), MPFR_RNDD, d1);
        fold(fhi.get(), MPFR_RNDD, d2);
        if (mpfr_cmp(d1.get(), d2.get()) <= 0) dlo = d1; else dlo = d2;
        mpfr_set(dhi.get(), half.get(), MPFR_RNDU);
        result.nearest_determined = false;
        result.nearest = z;  // one of the two candidates; flagged undetermined
    } else if (contains_int) {
        mpfr_set_zero(dlo.get(), 1);
        BigFloat d1(prec), d2(prec);
        fold(flo.get(), MPFR_RNDU, d1);
        fold(fhi.get(), MPFR_RNDU, d2);
        if (mpfr_cmp(d1.get(), d2.get()) >= 0) dhi = d1; else dhi = d2;
        result.nearest_determined = true;
        result.nearest = z;
    } else {
        // Monotone region: image is [min, max] of the endpoint distances.
        BigFloat a(prec), b(prec);
        fold(flo.get(), MPFR_RNDD, a);
        fold(fhi.get(), MPFR_RNDD, b);
        if (mpfr_cmp(a.get(), b.get()) <= 0) dlo = a; else dlo = b;
        fold(flo.get(), MPFR_RNDU, a);
        fold(fhi.get(), MPFR_RNDU, b);
        if (mpfr_cmp(a.get(), b.get()) >= 0) dhi = a; else dhi = b;
        result.nearest_determined = true;
        result.nearest = z;
    }

    // Re-center [dlo, dhi] into a ball.
    PrecReal d(prec);
    mpfr_add(d.approx_.get(), dlo.get(), dhi.get(), MPFR_RNDN);
    mpfr_div_2ui(d.approx_.get(), d.approx_.get(), 1, MPFR_RNDN);
    BigFloat e1(kErrPrec), e2(kErrPrec);
    mpfr_sub(e1.get(), d.approx_.get(), dlo.get(), MPFR_RNDU);
    mpfr_sub(e2.get(), dhi.get(), d.approx_.get(), MPFR_RNDU);
    if (mpfr_cmp(e1.get(), e2.get()) >= 0)
        mpfr_set(d.err_.get(), e1.get(), MPFR_RNDU);
    else
        mpfr_set(d.err_.get(), e2.get(), MPFR_RNDU);
    if (mpfr_sgn(d.err_.get()) < 0) mpfr_set_zero(d.err_.get(), 1);
    result.dist = d;
    return result;
}

PrecReal const_eval(Constant c, mpfr_prec_t prec) {
    if (prec < 64) throw domain_error("const_eval: precision below 64 bits");
    switch (c) {
        case Constant::Sqrt5:
            return sqrt(PrecReal::from_long(5, prec));
        case Constant::Alpha:
        case Constant::Golden: {
            PrecReal s = sqrt(PrecReal::from_long(5, prec));
            return div(add(PrecReal::from_long(1, prec), s), PrecReal::from_long(2, prec));
        }
        case Constant::Beta: {
            PrecReal s = sqrt(PrecReal::from_long(5, prec));
            return div(sub(PrecReal::from_long(1, prec), s), PrecReal::from_long(2, prec));
        }
        case Constant::LogAlpha:
            return ln(const_eval(Constant::Alpha, prec));
        case Constant::Log2:
            return ln(PrecReal::from_long(2, prec));
    }
    throw domain_error("const_eval: unknown constant");
}

PrecReal log_of_integer(const mpz_class& k, mpfr_prec_t prec) {
    if (k < 2) throw domain_error("log_of_integer: argument must be >= 2");
    return ln(PrecReal::from_integer(k, prec));
}

}  // namespace lucaspow
