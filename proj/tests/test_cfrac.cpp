#include <doctest.h>

#include "lucaspow/cfrac.hpp"

using namespace lucaspow;

namespace {
RealExpr gamma_expr() {
    return RealExpr::log_integer(3) / RealExpr::constant(Constant::LogAlpha);
}
}  // namespace

TEST_CASE("golden ratio expands to all ones") {
    ContinuedFraction cf(RealExpr::constant(Constant::Golden));
    cf.extend_to(10);
    for (std::size_t i = 0; i <= 10; ++i) CHECK(cf.quotients()[i] == 1);
    Convergent c5 = cf.convergent(5);
    CHECK(c5.p == 13);
    CHECK(c5.q == 8);
    Convergent above = cf.first_q_above(10);
    CHECK(above.q == 13);
    CHECK(above.index == 6);
}

TEST_CASE("certified expansion of log3/logalpha") {
    ContinuedFraction cf(gamma_expr());
    cf.extend_to(42);
    std::vector<long> first15{2, 3, 1, 1, 6, 1, 49, 1, 2, 2, 1, 1, 2, 1, 2};
    for (std::size_t i = 0; i < first15.size(); ++i) CHECK(cf.quotients()[i] == first15[i]);

    CHECK(cf.convergent(41).q == mpz_class("4977896525362041575"));
    CHECK(cf.convergent(42).q == mpz_class("805929983250536127817"));
    CHECK(cf.max_quotient(42) == 161);

    // quotients are stable under a much higher starting precision
    ContinuedFraction cf2(gamma_expr(), PrecConfig{1024, 8192});
    cf2.extend_to(42);
    CHECK(cf2.quotients() == cf.quotients());
}

TEST_CASE("determinant identity for all certified indices") {
    ContinuedFraction cf(gamma_expr());
    cf.extend_to(60);
    for (std::size_t k = 1; k <= 60; ++k) {
        Convergent a = cf.convergent(k - 1), b = cf.convergent(k);
        mpz_class det = b.p * a.q - a.p * b.q;
        CHECK(det == ((k % 2 == 0) ? -1 : 1));  // p_k q_{k-1} - p_{k-1} q_k = (-1)^(k-1)
        CHECK(gcd(b.p, b.q) == 1);
        if (k >= 2) CHECK(b.q > a.q);
    }
}

TEST_CASE("approximation quality of convergents") {
    ContinuedFraction cf(gamma_expr());
    cf.extend_to(41);
    PrecConfig cfg;
    RealExpr g = gamma_expr();
    for (std::size_t k : {1UL, 3UL, 7UL, 15UL, 25UL, 40UL}) {
        Convergent ck = cf.convergent(k), ck1 = cf.convergent(k + 1);
        RealExpr diff = RealExpr::abs(g - RealExpr::rational(mpq_class(ck.p) / mpq_class(ck.q)));
        // |gamma - p/q| < 1/(q_k q_{k+1})
        CHECK(certify_less(diff, RealExpr::rational(mpq_class(1) / mpq_class(ck.q * ck1.q)), cfg));
        // |gamma - p/q| > 1/((q_{k+1} + 2) q_k^2)
        CHECK(certify_less(
            RealExpr::rational(mpq_class(1) / (mpq_class(ck1.q + 2) * mpq_class(ck.q * ck.q))),
            diff, cfg));
    }
}

TEST_CASE("convergents are best approximations (small denominators)") {
    ContinuedFraction cf(gamma_expr());
    PrecConfig cfg;
    cf.extend_to(12);
    // all convergent denominators <= 10^4
    std::vector<Convergent> small;
    for (std::size_t k = 0;; ++k) {
        Convergent c = cf.convergent(k);
        if (c.q > 10000) break;
        small.push_back(c);
    }
    REQUIRE(small.size() >= 8);
    PrecReal g = gamma_expr().eval(256);
    auto dist_to = [&](const mpz_class& y) {
        return nearest_integer_distance(mul(g, PrecReal::from_integer(y, 256))).dist;
    };
    // for each convergent, no smaller denominator approximates better:
    // ||y gamma||/y > |gamma - p_k/q_k| for all y < q_k
    for (const auto& c : small) {
        if (c.q == 1) continue;
        PrecReal target = div(dist_to(c.q), PrecReal::from_integer(c.q, 256));
        for (mpz_class y = 1; y < c.q; ++y) {
            PrecReal mine = div(dist_to(y), PrecReal::from_integer(y, 256));
            REQUIRE(compare(mine, target) == Sign::Positive);
        }
    }
}

TEST_CASE("legendre gap bound") {
    SUBCASE("golden toy: a_M = 1, a_max = 1, const = 1 gives G = 2") {
        ContinuedFraction cf(RealExpr::constant(Constant::Golden));
        GapBound gb = legendre_gap_bound(cf, 1, 1);
        CHECK(gb.a_max_quotient == 1);
        CHECK(gb.threshold == 3);
        CHECK(gb.gap == 2);  // alpha^2 < 3 <= alpha^3
    }
    SUBCASE("published data: threshold 1.3692e23 and G = 110") {
        ContinuedFraction cf(gamma_expr());
        mpz_class M(decimal_to_rational("1.2e20").get_num());
        GapBound gb = legendre_gap_bound(cf, M, 7);
        CHECK(gb.a_max_quotient == 161);
        CHECK(gb.cover_index == 42);
        CHECK(gb.threshold == decimal_to_rational("1.3692e23"));
        CHECK(gb.gap == 110);
        // the reduction's q > 6M threshold is also met at index 42
        Convergent six = cf.first_q_above(6 * M);
        CHECK(six.index == 42);
        CHECK(six.q > decimal_to_rational("7.2e20"));
    }
    SUBCASE("mid-range instance cross-checked by direct powers") {
        ContinuedFraction cf(gamma_expr());
        mpz_class M(decimal_to_rational("1e10").get_num());
        GapBound gb = legendre_gap_bound(cf, M, 7);
        PrecConfig cfg;
        RealExpr alpha = RealExpr::constant(Constant::Alpha);
        RealExpr thr = RealExpr::integer(gb.threshold);
        CHECK(certify_less(RealExpr::pow_int(alpha, gb.gap), thr, cfg));
        CHECK(certify_less(thr, RealExpr::pow_int(alpha, gb.gap + 1), cfg));
    }
}

TEST_CASE("rational sources cannot be certified forever") {
    ContinuedFraction cf(RealExpr::rational(mpq_class(22, 7)), PrecConfig{64, 256});
    CHECK_THROWS_AS(cf.extend_to(10), precision_error);
}
