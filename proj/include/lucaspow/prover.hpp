#pragma once

#include <string>

#include "lucaspow/certificate.hpp"
#include "lucaspow/linforms.hpp"
#include "lucaspow/reduction.hpp"
#include "lucaspow/sequences.hpp"

namespace lucaspow {

struct ProverConfig {
    PrecConfig prec;
    int retry_budget = 10;
};

// Runs the seven proof stages for U_n + U_m = p^a:
//   S1 exhaustive search up to search_limit,
//   S2 exclusion of n = m (odd p),
//   S3 crude exponent bound a <= (n+2) log 2/log p,
//   S4 two-log bound and the gap inequality,
//   S5 Matveev bound and the Lemma-3 absolute bound,
//   S6 continued fraction of log p/log alpha and the Legendre gap bound,
//   S7 Baker-Davenport reduction of both sign cases down to a contradiction
//      with the n > 200 regime.
// The analytic stages S4..S7 run for the Lucas sequence with an odd prime;
// other equations stop after S3 with a partial certificate.  Any stage
// failure yields a certificate marked invalid with the stage identified.
ProofCertificate prove(const RecurrenceSpec& spec, const mpz_class& p, unsigned long search_limit,
                       const ProverConfig& config = {});

// Independently re-derives every stage of the certificate at its recorded
// precision schedule and compares all claims, conclusions and notes; also
// checks the structural chaining.  True iff everything matches and the
// certificate is marked valid.  When `reason` is non-null it receives the
// first discrepancy found.
bool verify_certificate(const ProofCertificate& cert, std::string* reason = nullptr);

}  // namespace lucaspow
