#include <doctest.h>

#include "lucaspow/realexpr.hpp"

using namespace lucaspow;

TEST_CASE("expressions re-evaluate at any precision") {
    RealExpr gamma = RealExpr::log_integer(3) / RealExpr::constant(Constant::LogAlpha);
    PrecReal coarse = gamma.eval(128);
    PrecReal fine = gamma.eval(1024);
    // the coarse ball encloses the fine midpoint's value
    mpq_class mid;
    mpfr_get_q(mid.get_mpq_t(), fine.approx().get());
    CHECK(coarse.contains_rational(mid));
    BigFloat tol(64);
    mpfr_set_ui_2exp(tol.get(), 1, -1000, MPFR_RNDN);
    CHECK(mpfr_cmp(fine.err().get(), tol.get()) < 0);
}

TEST_CASE("certified sign escalates precision") {
    // alpha^2 - alpha - 1 + 2^-200: thin but nonzero, needs escalation
    RealExpr alpha = RealExpr::constant(Constant::Alpha);
    RealExpr thin = RealExpr::pow_int(alpha, 2) - alpha - RealExpr::integer(1) +
                    RealExpr::rational(mpq_class(1, mpz_class(1) << 200));
    PrecConfig cfg{128, 2048};
    CHECK(certified_sign(thin, cfg) == Sign::Positive);

    // alpha^2 - alpha - 1 is exactly zero: no precision can decide it
    RealExpr zero = RealExpr::pow_int(alpha, 2) - alpha - RealExpr::integer(1);
    CHECK_THROWS_AS(certified_sign(zero, PrecConfig{128, 512}), precision_error);
}

TEST_CASE("certified comparisons and floors") {
    RealExpr gamma = RealExpr::log_integer(3) / RealExpr::constant(Constant::LogAlpha);
    PrecConfig cfg;
    CHECK(certified_floor(gamma, cfg) == 2);
    CHECK(certify_less(RealExpr::integer(2), gamma, cfg));
    CHECK(certified_compare(gamma, RealExpr::integer(3), cfg) == Sign::Negative);
    CHECK(certified_floor(-gamma, cfg) == -3);
    CHECK_FALSE(RealExpr::ln(RealExpr::integer(2)).describe().empty());
}
