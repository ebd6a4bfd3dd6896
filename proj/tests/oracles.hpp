#pragma once

// Test-only oracles, independent of the library's evaluation path.

#include <gmpxx.h>

#include <stdexcept>
#include <utility>

namespace oracles {

// Exact rational interval [lo, hi] containing ln(x) for rational x > 0,
// computed purely in mpq arithmetic: reduce x to m in [1, 2) by powers of
// two, then ln(m) = 2 atanh(t) with t = (m-1)/(m+1) in [0, 1/3], summed with
// a geometric tail bound; ln 2 itself is 2 atanh(1/3).
struct RationalInterval {
    mpq_class lo, hi;
    bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }
    bool intersects(const RationalInterval& o) const { return lo <= o.hi && o.lo <= hi; }
};

inline RationalInterval atanh_series(const mpq_class& t, unsigned terms) {
    // sum_{k=0}^{terms-1} t^(2k+1)/(2k+1); tail <= t^(2*terms+1) / ((2 terms+1)(1-t^2))
    if (t < 0 || t >= 1) throw std::runtime_error("atanh_series: need 0 <= t < 1");
    mpq_class sum = 0, power = t, t2 = t * t;
    for (unsigned k = 0; k < terms; ++k) {
        sum += power / mpq_class(2 * k + 1);
        power *= t2;
    }
    mpq_class tail = power / (mpq_class(2 * terms + 1) * (1 - t2));
    return RationalInterval{sum, sum + tail};
}

inline RationalInterval ln_rational(mpq_class x, unsigned terms = 64) {
    if (x <= 0) throw std::runtime_error("ln_rational: need x > 0");
    long e = 0;
    while (x >= 2) {
        x /= 2;
        ++e;
    }
    while (x < 1) {
        x *= 2;
        --e;
    }
    RationalInterval ln2 = atanh_series(mpq_class(1, 3), terms);
    ln2.lo *= 2;
    ln2.hi *= 2;
    mpq_class t = (x - 1) / (x + 1);
    RationalInterval lnm = atanh_series(t, terms);
    lnm.lo *= 2;
    lnm.hi *= 2;
    // ln(x) = ln(m) + e ln 2, with interval endpoints ordered by the sign of e
    RationalInterval out;
    if (e >= 0) {
        out.lo = lnm.lo + e * ln2.lo;
        out.hi = lnm.hi + e * ln2.hi;
    } else {
        out.lo = lnm.lo + e * ln2.hi;
        out.hi = lnm.hi + e * ln2.lo;
    }
    return out;
}

}  // namespace oracles
