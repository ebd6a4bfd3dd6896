// Command-line front end: search / cfrac / reduce / prove / verify / bound.
//
// Exit codes: 0 success, 2 usage, 3 precision ceiling, 4 epsilon
// certification failure, 5 stage or verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lucaspow/cfrac.hpp"
#include "lucaspow/prover.hpp"
#include "lucaspow/reduction.hpp"
#include "lucaspow/sequences.hpp"

using nlohmann::json;
using namespace lucaspow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitEpsilon = 4;
constexpr int kExitStage = 5;

struct GlobalOpts {
    long prec_start = kDefaultPrec;
    long prec_ceiling = kPrecCeiling;
    std::string format = "human";
    std::string output;
};

PrecConfig prec_config(const GlobalOpts& g) {
    if (g.prec_start < 64 || g.prec_ceiling < g.prec_start)
        throw CLI::ValidationError("--prec-start/--prec-ceiling", "bad precision schedule");
    return PrecConfig{g.prec_start, g.prec_ceiling};
}

void emit(const GlobalOpts& g, const std::string& human, const json& machine) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!g.output.empty()) {
        file.open(g.output);
        if (!file) throw std::runtime_error("cannot open output file " + g.output);
        out = &file;
    }
    if (g.format == "json")
        *out << machine.dump(2) << "\n";
    else
        *out << human;
}

// The constant mini-language: named constants and ratios of logarithms, or a
// plain decimal treated as an exact rational.
RealExpr parse_real(const std::string& spec) {
    auto strip = [](std::string s) {
        std::string r;
        for (char c : s)
            if (c != ' ') r.push_back(c);
        return r;
    };
    std::string s = strip(spec);
    if (s == "golden" || s == "alpha") return RealExpr::constant(Constant::Alpha);
    if (s == "sqrt5") return RealExpr::constant(Constant::Sqrt5);
    if (s == "log(alpha)") return RealExpr::constant(Constant::LogAlpha);

    auto log_atom = [](const std::string& t) -> std::optional<RealExpr> {
        if (t == "log(alpha)") return RealExpr::constant(Constant::LogAlpha);
        if (t.rfind("log(", 0) == 0 && t.back() == ')') {
            std::string inner = t.substr(4, t.size() - 5);
            if (inner == "alpha") return RealExpr::constant(Constant::LogAlpha);
            if (!inner.empty() && inner.find_first_not_of("0123456789") == std::string::npos)
                return RealExpr::log_integer(mpz_class(inner));
        }
        return std::nullopt;
    };
    std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        auto num = log_atom(s.substr(0, slash));
        auto den = log_atom(s.substr(slash + 1));
        if (num && den) return *num / *den;
    }
    if (auto atom = log_atom(s)) return *atom;
    return RealExpr::rational(decimal_to_rational(s));
}

mpz_class parse_integer(const std::string& s) {
    mpq_class q = decimal_to_rational(s);
    if (q.get_den() != 1)
        throw CLI::ValidationError("integer", s + " is not an integer");
    return q.get_num();
}

RecurrenceSpec parse_sequence(const std::string& seq, unsigned long a_param) {
    RecurrenceSpec spec;
    spec.a_param = a_param;
    if (seq == "lucas")
        spec.kind = SequenceKind::Lucas;
    else if (seq == "fibonacci" || seq == "fib")
        spec.kind = SequenceKind::Fibonacci;
    else
        throw CLI::ValidationError("--seq", "expected lucas or fibonacci");
    return spec;
}

int run(int argc, char** argv) {
    CLI::App app{"certified solver for U_n + U_m = p^a by Baker's method"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOpts g;
    app.add_option("--prec-start", g.prec_start, "starting working precision in bits");
    app.add_option("--prec-ceiling", g.prec_ceiling, "precision ceiling in bits");
    app.add_option("--format", g.format, "output format: human or json")
        ->check(CLI::IsMember({"human", "json"}));
    app.add_option("-o,--output", g.output, "write output to a file");

    // search
    auto* search = app.add_subcommand("search", "exhaustive solution search");
    std::string seq = "lucas", p_str = "3";
    unsigned long nmax = 200, a_param = 1, min_index = 0;
    bool allow_equal = false;
    search->add_option("--seq", seq, "sequence: lucas or fibonacci");
    search->add_option("--p", p_str, "prime p")->required();
    search->add_option("--nmax", nmax, "search n up to this bound")->required();
    search->add_option("--a-param", a_param, "recurrence parameter a");
    search->add_option("--min-index", min_index, "smallest index considered");
    search->add_flag("--allow-equal", allow_equal, "include n == m");

    // cfrac
    auto* cfrac = app.add_subcommand("cfrac", "certified continued fraction");
    std::string x_spec;
    unsigned long count = 10;
    std::string emit_what = "quotients";
    long emit_index = -1;
    cfrac->add_option("--x", x_spec, "constant, e.g. \"log(3)/log(alpha)\" or \"golden\"")
        ->required();
    cfrac->add_option("--count", count, "number of quotients after a_0")->required();
    cfrac->add_option("--emit", emit_what, "quotients, q or p")
        ->check(CLI::IsMember({"quotients", "q", "p"}));
    cfrac->add_option("--index", emit_index, "convergent index for --emit q/p");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "one Baker-Davenport reduction");
    std::string kappa_s, mu_s, a_s = "1", b_s = "alpha", m_s, case_s, case_p = "3";
    unsigned long case_gap = 1;
    reduce->add_option("--kappa", kappa_s, "kappa (decimal or named constant)");
    reduce->add_option("--mu", mu_s, "mu (decimal or named constant)");
    reduce->add_option("--A", a_s, "A > 0 (decimal)");
    reduce->add_option("--B", b_s, "B > 1 (decimal or named constant)");
    reduce->add_option("--M", m_s, "bound M (decimal integer)")->required();
    reduce->add_option("--case", case_s, "paper case: zpos or zneg (builds kappa/mu/A/B)")
        ->check(CLI::IsMember({"zpos", "zneg"}));
    reduce->add_option("--gap", case_gap, "gap n - m for --case");
    reduce->add_option("--case-p", case_p, "prime for --case");

    // prove
    auto* prove_cmd = app.add_subcommand("prove", "run the full pipeline");
    std::string pr_seq = "lucas", pr_p = "3";
    unsigned long pr_limit = 200, pr_a_param = 1;
    int pr_budget = 10;
    prove_cmd->add_option("--seq", pr_seq, "sequence: lucas or fibonacci");
    prove_cmd->add_option("--p", pr_p, "prime p")->required();
    prove_cmd->add_option("--limit", pr_limit, "search limit (>= 200 to close the proof)")
        ->required();
    prove_cmd->add_option("--a-param", pr_a_param, "recurrence parameter a");
    prove_cmd->add_option("--retry-budget", pr_budget, "convergent retries per gap");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate file");
    std::string cert_path;
    verify_cmd->add_option("--cert", cert_path, "certificate JSON file")->required();

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "certified crude-bound chain");
    std::string bd_p = "3";
    unsigned long bd_floor = 200;
    bound_cmd->add_option("--p", bd_p, "odd prime p")->required();
    bound_cmd->add_option("--n-floor", bd_floor, "regime threshold (>= 200)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;  // --help exits 0, bad flags exit 2
    }
    PrecConfig cfg = prec_config(g);

    if (*search) {
        RecurrenceSpec spec = parse_sequence(seq, a_param);
        SearchOptions opts{allow_equal, min_index};
        auto found = search_solutions(spec, parse_integer(p_str), nmax, opts);
        std::string human;
        json arr = json::array();
        char sym = sequence_symbol(spec);
        for (const auto& t : found) {
            human += std::to_string(t.n) + " " + std::to_string(t.m) + " " + std::to_string(t.a) +
                     "  " + sym + ("_" + std::to_string(t.n)) + "+" + sym +
                     ("_" + std::to_string(t.m)) + "=" + p_str + "^" + std::to_string(t.a) + "\n";
            arr.push_back(json{{"n", t.n}, {"m", t.m}, {"a", t.a}});
        }
        emit(g, human, arr);
        return kExitOk;
    }

    if (*cfrac) {
        ContinuedFraction cf(parse_real(x_spec), cfg);
        cf.extend_to(count);
        if (emit_what == "quotients") {
            std::string human;
            json arr = json::array();
            for (std::size_t i = 0; i <= count; ++i) {
                if (i) human += " ";
                human += cf.quotients()[i].get_str();
                arr.push_back(cf.quotients()[i].get_str());
            }
            human += "\n";
            emit(g, human, arr);
        } else {
            std::size_t k = emit_index >= 0 ? static_cast<std::size_t>(emit_index) : count;
            Convergent c = cf.convergent(k);
            const mpz_class& v = emit_what == "q" ? c.q : c.p;
            emit(g, v.get_str() + "\n",
                 json{{"index", k}, {"p", c.p.get_str()}, {"q", c.q.get_str()}});
        }
        return kExitOk;
    }

    if (*reduce) {
        ReductionInstance inst;
        if (!case_s.empty()) {
            inst = build_case_instance(case_s == "zpos" ? CaseSign::ZPositive : CaseSign::ZNegative,
                                       case_gap, parse_integer(case_p), parse_integer(m_s));
        } else {
            if (kappa_s.empty() || mu_s.empty())
                throw CLI::ValidationError("reduce", "--kappa and --mu (or --case) are required");
            inst.kappa = parse_real(kappa_s);
            inst.mu = parse_real(mu_s);
            inst.A = decimal_to_rational(a_s);
            inst.B = parse_real(b_s);
            inst.M = parse_integer(m_s);
        }
        try {
            ReductionResult r = dujella_petho(inst, cfg, 10);
            std::string human = "q = " + r.q_used.get_str() + "\n" +
                                "epsilon ~ " + r.epsilon.approx_decimal(10) +
                                " (err <= " + r.epsilon.err_decimal() + ")\n" +
                                "reduced bound = " + r.reduced_bound.get_str() + "\n";
            emit(g, human,
                 json{{"q", r.q_used.get_str()},
                      {"epsilon", r.epsilon.approx_decimal(20)},
                      {"reduced_bound", r.reduced_bound.get_str()},
                      {"attempts", r.attempts.size()}});
            return kExitOk;
        } catch (const epsilon_error& e) {
            std::cerr << e.what() << "\n";
            return kExitEpsilon;
        }
    }

    if (*prove_cmd) {
        ProverConfig pc;
        pc.prec = cfg;
        pc.retry_budget = pr_budget;
        RecurrenceSpec spec = parse_sequence(pr_seq, pr_a_param);
        ProofCertificate cert = prove(spec, parse_integer(pr_p), pr_limit, pc);
        std::string verified_reason;
        bool ok = cert.valid && verify_certificate(cert, &verified_reason);
        json jc = certificate_to_json(cert);
        if (!g.output.empty()) {
            std::ofstream f(g.output);
            f << jc.dump(2) << "\n";
        }
        if (ok) {
            std::string sols = "{";
            for (std::size_t i = 0; i < cert.conclusion.size(); ++i) {
                if (i) sols += ", ";
                sols += "(" + std::to_string(cert.conclusion[i].n) + "," +
                        std::to_string(cert.conclusion[i].m) + "," +
                        std::to_string(cert.conclusion[i].a) + ")";
            }
            sols += "}";
            std::cout << "PROVED: solutions = " << sols << "\n";
            return kExitOk;
        }
        std::cout << "FAILED: " << (cert.valid ? verified_reason : cert.failure) << "\n";
        return kExitStage;
    }

    if (*verify_cmd) {
        std::ifstream f(cert_path);
        if (!f) {
            std::cerr << "cannot read " << cert_path << "\n";
            return kExitUsage;
        }
        json j = json::parse(f);
        ProofCertificate cert = certificate_from_json(j);
        std::string reason;
        if (verify_certificate(cert, &reason)) {
            std::cout << "VERIFIED\n";
            return kExitOk;
        }
        std::cout << "INVALID: " << reason << "\n";
        return kExitStage;
    }

    if (*bound_cmd) {
        CrudeBounds b = derive_crude_bounds(parse_integer(bd_p), bd_floor, cfg);
        std::string human;
        json arr = json::array();
        for (const auto& c : b.claims) {
            human += c.name + ": " + c.value.approx_decimal(12);
            if (!c.paper_rounding.empty())
                human += std::string("  [paper ") + c.paper_rounding +
                         (c.within_paper ? ", within]" : ", exceeded]");
            human += "\n";
            arr.push_back(json{{"name", c.name},
                               {"value", c.value.approx_decimal(20)},
                               {"paper", c.paper_rounding},
                               {"within_paper", c.within_paper}});
        }
        human += "n_upper = " + b.n_upper.get_str() + "\n";
        human += "exponent bound = " + b.exponent_bound.get_str() + "\n";
        emit(g, human,
             json{{"claims", arr},
                  {"n_upper", b.n_upper.get_str()},
                  {"exponent_bound", b.exponent_bound.get_str()}});
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error&) {
        // CLI11_PARSE already handled printing; only reachable via our throws
        return kExitUsage;
    } catch (const precision_error& e) {
        std::cerr << "precision: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const epsilon_error& e) {
        std::cerr << "epsilon: " << e.what() << "\n";
        return kExitEpsilon;
    } catch (const stage_error& e) {
        std::cerr << "stage: " << e.what() << "\n";
        return kExitStage;
    } catch (const domain_error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStage;
    }
}
