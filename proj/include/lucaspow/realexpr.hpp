#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>

#include "lucaspow/precision.hpp"

namespace lucaspow {

// An immutable real-valued expression that can be re-evaluated to a certified
// ball at any requested precision.  This is what the continued-fraction and
// reduction machinery consume: raising precision re-derives the whole value,
// so certification never depends on a single fixed evaluation.
class RealExpr {
public:
    RealExpr();  // zero

    static RealExpr integer(mpz_class v);
    static RealExpr integer(long v);
    static RealExpr rational(mpq_class v);
    static RealExpr constant(Constant c);
    static RealExpr log_integer(mpz_class k);  // log k, k >= 2

    PrecReal eval(mpfr_prec_t prec) const;
    std::string describe() const;

    friend RealExpr operator+(const RealExpr&, const RealExpr&);
    friend RealExpr operator-(const RealExpr&, const RealExpr&);
    friend RealExpr operator*(const RealExpr&, const RealExpr&);
    friend RealExpr operator/(const RealExpr&, const RealExpr&);
    friend RealExpr operator-(const RealExpr&);

    static RealExpr ln(RealExpr x);
    static RealExpr exp(RealExpr x);
    static RealExpr sqrt(RealExpr x);
    static RealExpr abs(RealExpr x);
    static RealExpr pow_int(RealExpr x, long k);

private:
    struct Node;
    friend struct ExprFactory;
    explicit RealExpr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

// Evaluates expr at increasing precision (doubling from cfg.start) until the
// sign of the ball is decided; throws precision_error at cfg.ceiling.
Sign certified_sign(const RealExpr& expr, const PrecConfig& cfg);

// certified_sign of (a - b), mapped back to a comparison.
Sign certified_compare(const RealExpr& a, const RealExpr& b, const PrecConfig& cfg);

// true iff a < b is certified (throws on Unknown at ceiling).
bool certify_less(const RealExpr& a, const RealExpr& b, const PrecConfig& cfg);

// Certified floor of an expression value.
mpz_class certified_floor(const RealExpr& expr, const PrecConfig& cfg);

}  // namespace lucaspow
