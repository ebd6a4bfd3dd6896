#include "lucaspow/cfrac.hpp"

#include <utility>

namespace lucaspow {

ContinuedFraction::ContinuedFraction(RealExpr source, PrecConfig cfg)
    : source_(std::move(source)), cfg_(cfg), good_prec_(cfg.start) {}

void ContinuedFraction::rebuild(std::size_t count) {
    for (mpfr_prec_t prec = good_prec_;; prec *= 2) {
        std::vector<mpz_class> quots;
        PrecReal x = source_.eval(prec);
        bool ok = true;
        while (quots.size() <= count) {
            auto fl = x.floor_certified();
            if (!fl) {
                ok = false;
                break;
            }
            quots.push_back(*fl);
            if (quots.size() > count) break;
            PrecReal frac = sub(x, PrecReal::from_integer(*fl, prec));
            if (sign_of(frac) != Sign::Positive) {
                ok = false;  // ambiguous fractional part; needs more precision
                break;
            }
            x = div(PrecReal::from_long(1, prec), frac);
        }
        if (ok) {
            // Quotients are exact, so a longer expansion must extend the old one.
            for (std::size_t i = 0; i < quotients_.size() && i < quots.size(); ++i)
                if (quotients_[i] != quots[i])
                    throw precision_error("continued fraction: certified prefix changed");
            quotients_ = std::move(quots);
            good_prec_ = prec;
            pnum_.clear();
            qden_.clear();
            mpz_class pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
            for (const mpz_class& a : quotients_) {
                pnum_.push_back(a * pm1 + pm2);
                qden_.push_back(a * qm1 + qm2);
                pm2 = pm1;
                pm1 = pnum_.back();
                qm2 = qm1;
                qm1 = qden_.back();
            }
            return;
        }
        if (prec >= cfg_.ceiling)
            throw precision_error("continued fraction of " + source_.describe() +
                                  ": quotient " + std::to_string(quots.size()) +
                                  " uncertifiable at precision ceiling");
    }
}

void ContinuedFraction::extend_to(std::size_t count) {
    if (quotients_.size() > count) return;
    rebuild(count);
}

Convergent ContinuedFraction::convergent(std::size_t k) {
    extend_to(k);
    return Convergent{pnum_[k], qden_[k], k};
}

Convergent ContinuedFraction::first_q_above(const mpz_class& threshold) {
    if (threshold < 1) throw domain_error("first_q_above: threshold must be >= 1");
    std::size_t k = 0;
    for (;;) {
        extend_to(k + 7);
        for (; k < qden_.size(); ++k)
            if (qden_[k] > threshold) return Convergent{pnum_[k], qden_[k], k};
    }
}

mpz_class ContinuedFraction::max_quotient(std::size_t upto) {
    extend_to(upto);
    mpz_class best = quotients_[0];
    for (std::size_t i = 1; i <= upto; ++i)
        if (quotients_[i] > best) best = quotients_[i];
    return best;
}

GapBound legendre_gap_bound(ContinuedFraction& cf, const mpz_class& a_max,
                            const mpq_class& numerator_const, const PrecConfig& cfg) {
    if (a_max < 1) throw domain_error("legendre_gap_bound: a_max must be >= 1");
    if (numerator_const <= 0) throw domain_error("legendre_gap_bound: constant must be positive");

    GapBound out;
    Convergent cover = cf.first_q_above(a_max);
    out.cover_index = cover.index;
    out.a_max_quotient = cf.max_quotient(cover.index);

    // threshold = ceil(numerator_const * (a_M + 2) * a_max), exact.
    mpq_class t = numerator_const * mpq_class(out.a_max_quotient + 2) * mpq_class(a_max);
    mpz_class thr;
    mpz_cdiv_q(thr.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    out.threshold = thr;

    // Largest g with alpha^g < threshold, estimated by logarithms and then
    // certified by direct power comparison.
    RealExpr alpha = RealExpr::constant(Constant::Alpha);
    RealExpr logt = RealExpr::ln(RealExpr::integer(thr));
    RealExpr la = RealExpr::constant(Constant::LogAlpha);
    mpz_class g_est = certified_floor(logt / la, cfg);
    long g = g_est.get_si();
    RealExpr thr_expr = RealExpr::integer(thr);
    while (!certify_less(RealExpr::pow_int(alpha, g), thr_expr, cfg)) --g;
    while (certify_less(RealExpr::pow_int(alpha, g + 1), thr_expr, cfg)) ++g;
    out.gap = g;

    // Cross-check of the compressed step against the direct Legendre bounds
    // for the realized convergent: 1/(q_{k+1}+q_k) < ||q_k x|| < 1/q_{k+1}.
    if (cover.index >= 1) {
        std::size_t k = cover.index - 1;
        Convergent ck = cf.convergent(k);
        Convergent ck1 = cf.convergent(k + 1);
        RealExpr x = cf.source();
        RealExpr dist = RealExpr::abs(x * RealExpr::integer(ck.q) - RealExpr::integer(ck.p));
        RealExpr upper = RealExpr::rational(mpq_class(1) / mpq_class(ck1.q));
        RealExpr lower = RealExpr::rational(mpq_class(1) / mpq_class(ck1.q + ck.q));
        if (!certify_less(dist, upper, cfg) || !certify_less(lower, dist, cfg))
            throw precision_error("legendre_gap_bound: convergent quality check failed");
    }
    return out;
}

}  // namespace lucaspow
