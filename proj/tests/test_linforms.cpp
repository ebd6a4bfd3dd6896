#include <doctest.h>

#include <random>

#include "lucaspow/linforms.hpp"

using namespace lucaspow;

namespace {
mpq_class q(const char* s) { return decimal_to_rational(s); }

bool ball_within(const PrecReal& v, const mpq_class& center, const mpq_class& tol) {
    return compare(v, PrecReal::from_rational(center - tol, v.precision())) == Sign::Positive &&
           compare(v, PrecReal::from_rational(center + tol, v.precision())) == Sign::Negative;
}

bool upper_at_most(const PrecReal& v, const mpq_class& bound) {
    mpq_class hi;
    mpfr_get_q(hi.get_mpq_t(), v.upper().get());
    return hi <= bound;
}
}  // namespace

TEST_CASE("heights of the numbers in play") {
    AlgebraicNumberDesc alpha_desc{
        {1, -1, -1},
        {RealExpr::abs(RealExpr::constant(Constant::Alpha)),
         RealExpr::abs(RealExpr::constant(Constant::Beta))}};
    PrecReal h_alpha = height(alpha_desc, 192);
    CHECK(ball_within(h_alpha, q("0.240605912529801723748879456712"), q("1e-25")));

    AlgebraicNumberDesc three{{1, -3}, {RealExpr::integer(3)}};
    CHECK(ball_within(height(three, 192), q("1.098612288668109691395245236922"), q("1e-25")));

    AlgebraicNumberDesc two{{1, -2}, {RealExpr::integer(2)}};
    CHECK(ball_within(height(two, 192), q("0.693147180559945309417232121458"), q("1e-25")));

    // a conjugate-modulus enclosure straddling 1 widens the height instead of
    // picking a side
    RealExpr near_one = RealExpr::constant(Constant::Alpha) -
                        RealExpr::constant(Constant::Alpha) + RealExpr::integer(1);
    AlgebraicNumberDesc synthetic{{1, -3}, {near_one}};
    PrecReal h = height(synthetic, 192);
    CHECK(h.contains_rational(0));
    CHECK(compare(h, PrecReal::from_decimal("1e-10", 192)) == Sign::Negative);
}

TEST_CASE("height combination rules") {
    PrecReal h_alpha = div(const_eval(Constant::LogAlpha, 192), PrecReal::from_long(2, 192));
    // shift bound for 1 + alpha^(m-n) with n-m = 10:
    // log 2 + 10 (log alpha)/2 <= 3.10
    PrecReal shifted = height_combine(HeightRule::Sum,
                                      {height_combine(HeightRule::Power, {h_alpha}, 10),
                                       PrecReal::from_long(0, 192)});
    CHECK(upper_at_most(shifted, q("3.10")));
    CHECK(ball_within(shifted, q("3.0992063"), q("1e-4")));

    CHECK(height_combine(HeightRule::Power, {h_alpha}, 0).contains_rational(0));

    PrecReal a = PrecReal::from_decimal("0.5", 192), b = PrecReal::from_decimal("1.1", 192);
    CHECK(height_combine(HeightRule::Product, {a, b}).contains_rational(q("1.6")));
}

TEST_CASE("two-log lower bound evaluation") {
    // b1 = b2 = 1 keeps log b' below 21/2, so the max is 21/2 and the value
    // is exactly -30.9 * 16 * (21/2)^2 * 0.5 * 1.1 = -29979.18
    LmnInstance inst;
    inst.b1 = 1;
    inst.b2 = 1;
    inst.D = 2;
    inst.logA1 = PrecReal::from_decimal("0.5", 192);
    inst.logA2 = PrecReal::from_decimal("1.1", 192);
    PrecReal lb = lmn_lower_bound(inst);
    CHECK(lb.contains_rational(q("-29979.18")));

    // monotone: enlarging logA2 never raises the lower bound
    LmnInstance larger = inst;
    larger.logA2 = PrecReal::from_decimal("1.3", 192);
    CHECK(compare(lmn_lower_bound(larger), lb) != Sign::Positive);

    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> b(1, 1000000);
    std::uniform_int_distribution<int> a100(50, 400);
    for (int i = 0; i < 60; ++i) {
        LmnInstance r;
        r.b1 = b(rng);
        r.b2 = b(rng);
        r.D = 2;
        r.logA1 = PrecReal::from_rational(mpq_class(a100(rng), 100), 192);
        r.logA2 = PrecReal::from_rational(mpq_class(a100(rng), 100), 192);
        PrecReal base = lmn_lower_bound(r);
        LmnInstance worse = r;
        worse.logA1 = add(worse.logA1, PrecReal::from_long(1, 192));
        CHECK(compare(lmn_lower_bound(worse), base) != Sign::Positive);
    }
}

TEST_CASE("matveev lower bound evaluation") {
    SUBCASE("smallest real instance is exact") {
        MatveevInstance inst;
        inst.l = 1;
        inst.D = 1;
        inst.A = {PrecReal::from_decimal("0.16", 192)};
        inst.B = PrecReal::from_long(1, 192);
        inst.real_field = true;
        CHECK(matveev_lower_bound(inst).contains_rational(-181440));
    }
    SUBCASE("complex branch constant") {
        MatveevInstance inst;
        inst.l = 2;
        inst.D = 1;
        inst.A = {PrecReal::from_long(1, 192), PrecReal::from_long(1, 192)};
        inst.B = PrecReal::from_long(1, 192);
        inst.real_field = false;
        // -3 * 30^6 * 3^5.5, frozen from an independent evaluation
        CHECK(ball_within(matveev_lower_bound(inst), q("-920482813225.2117177495196"), q("1e-6")));
    }
    SUBCASE("monotonicity in A and B") {
        std::mt19937_64 rng(42);
        std::uniform_int_distribution<int> a100(16, 300);
        std::uniform_int_distribution<int> b10(1, 1000);
        for (int i = 0; i < 60; ++i) {
            MatveevInstance inst;
            inst.l = 3;
            inst.D = 2;
            inst.A = {PrecReal::from_rational(mpq_class(a100(rng), 100), 192),
                      PrecReal::from_rational(mpq_class(a100(rng), 100), 192),
                      PrecReal::from_rational(mpq_class(a100(rng), 100), 192)};
            inst.B = PrecReal::from_long(b10(rng), 192);
            PrecReal base = matveev_lower_bound(inst);
            MatveevInstance worse = inst;
            worse.A[1] = add(worse.A[1], PrecReal::from_long(1, 192));
            worse.B = add(worse.B, PrecReal::from_long(5, 192));
            CHECK(compare(matveev_lower_bound(worse), base) != Sign::Positive);
        }
    }
}

TEST_CASE("multiplicative independence") {
    CHECK(multiplicative_independence_check(3));
    CHECK(multiplicative_independence_check(2));
    CHECK_THROWS_AS(multiplicative_independence_check(1), domain_error);
}

TEST_CASE("crude bound chain for p = 3") {
    CrudeBounds b = derive_crude_bounds(3, 200);

    CHECK(ball_within(b.a_coeff, q("0.630929753571457437099527114343"), q("1e-25")));
    CHECK(upper_at_most(b.lmn_aggregate, 272));
    CHECK(upper_at_most(b.gap_coeff, 276));
    CHECK(upper_at_most(b.matveev_c, q("9.7e11")));
    CHECK(upper_at_most(b.nbound_coeff, q("7.3e14")));
    CHECK(b.branch_small <= q("3.5e18"));
    CHECK(b.branch_log <= q("7.2e19"));
    CHECK(b.n_upper <= q("7.2e19"));
    CHECK(b.exponent_bound <= q("1.2e20"));

    // the published 1.26e12 rounding is too small for the certified chain
    bool found_chain_claim = false;
    for (const auto& c : b.claims)
        if (c.name == "Matveev chain coefficient") {
            found_chain_claim = true;
            CHECK_FALSE(c.within_paper);
            CHECK(c.paper_rounding == "1.26e12");
        } else {
            CHECK(c.within_paper);
        }
    CHECK(found_chain_claim);
    CHECK_FALSE(b.notes.empty());

    // the defining inequality holds at a sample point below the bound and
    // fails just above it (fixed-point logic)
    const mpfr_prec_t w = 320;
    auto rhs_at = [&](const mpz_class& n) {
        PrecReal ln_n = ln(PrecReal::from_integer(n, w));
        PrecReal ln_2n = ln(PrecReal::from_integer(2 * n, w));
        // in this range log 2n > 21/2 always
        return mul(b.nbound_coeff, mul(ln_n, mul(ln_2n, ln_2n)));
    };
    mpz_class sample(decimal_to_rational("1e18").get_num());
    CHECK(compare(PrecReal::from_integer(sample, w), rhs_at(sample)) == Sign::Negative);
    CHECK(compare(PrecReal::from_integer(b.n_upper + 1, w), rhs_at(b.n_upper + 1)) ==
          Sign::Positive);

    // gap bound function is positive and sane at the absolute bound
    PrecReal gb = b.gap_bound_at(b.n_upper, 256);
    CHECK(sign_of(gb) == Sign::Positive);

    CHECK_THROWS_AS(derive_crude_bounds(2, 200), domain_error);
    CHECK_THROWS_AS(derive_crude_bounds(3, 100), domain_error);
}

TEST_CASE("crude bound chain generalizes to p = 7") {
    CrudeBounds b = derive_crude_bounds(7, 200);
    for (const auto& c : b.claims) CHECK(c.within_paper);
    CHECK(b.exponent_bound > 0);
    CHECK(sign_of(b.a_coeff) == Sign::Positive);
    // larger prime, smaller c1
    CHECK(compare(b.a_coeff, PrecReal::from_decimal("0.5", 320)) == Sign::Negative);
}
