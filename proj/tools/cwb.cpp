// cwb: command-line front end. Exit codes: 0 ok, 1 identity or verdict
// failure, 2 bad input or unmet precondition, 3 materialization guard.

#include "cwb/cwb.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <thread>

namespace {

enum Exit { kOk = 0, kFailed = 1, kInput = 2, kGuard = 3 };

int finish(const cwb::Report& r, const std::string& out)
{
    std::cout << r.summary;
    if (!out.empty()) cwb::io::write_json(r.doc, out);
    std::cout << (r.ok ? "OK" : "FAILED") << '\n';
    return r.ok ? kOk : kFailed;
}

std::vector<cwb::Vec> trace_basis(const cwb::Workbench& w)
{
    return cwb::columns_of(w.space({cwb::Complex::E, -1}).basis);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact cyclic cochain workbench"};
    app.require_subcommand(1);
    app.fallthrough();

    cwb::RunConfig cfg;
    cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
    app.add_option("--algebra", cfg.algebra, "builtin name (scalar, matrix:K, group:zN, semilattice:chainN, sum:A+B) or file:path")
        ->capture_default_str();
    app.add_option("--cap", cfg.cap, "degree cap")->capture_default_str()->check(CLI::Range(1, 64));
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--height", cfg.height, "bound on random integer coefficients")
        ->capture_default_str()
        ->check(CLI::Range(0LL, 1LL << 40));
    app.add_option("--tolerance", cfg.tolerance, "float tolerance for norm comparisons")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--guard", cfg.guard, "maximum stored entries per materialized matrix")->capture_default_str();
    app.add_option("--out", out, "write the JSON report here");
    app.add_flag("--profile", cfg.profile, "print wall-clock per phase to stderr");

    auto* verify = app.add_subcommand("verify", "check every operator identity within the cap");
    auto* cohomology = app.add_subcommand("cohomology", "dimensions and representatives of H(D), H(E), H(F), H(G)");
    auto* sbi = app.add_subcommand("sbi", "exactness of the S, I, B sequence and the shift isomorphism");
    auto* report = app.add_subcommand("report", "cohomology and sbi in one document");

    auto* cobound = app.add_subcommand("cobound", "certified cobounding of a cyclic cocycle");
    int degree = 0;
    bool random = false;
    int count = 1;
    std::string input;
    cobound->add_option("--degree", degree, "degree of the random cocycle");
    cobound->add_flag("--random", random, "draw a random cyclic cocycle");
    cobound->add_option("--count", count, "number of random cocycles (seeds seed, seed+1, ...)")->check(CLI::Range(1, 100000));
    cobound->add_option("--input", input, "cochain file");

    auto* tpower = app.add_subcommand("trace-power", "tau^(n)(a0, ..., an) = tau(a0 ... an) for the traces");
    int tp_degree = 0;
    std::string tp_input;
    tpower->add_option("--degree", tp_degree, "n")->required()->check(CLI::Range(0, 64));
    tpower->add_option("--input", tp_input, "trace file (degree -1 cochain); default: the canonical trace basis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    try {
        cwb::AlgebraPtr alg = cwb::io::load_algebra(cfg.algebra);
        cwb::Workbench w(alg);
        if (*verify) return finish(cwb::verify_report(w, cfg), out);
        if (*cohomology) return finish(cwb::cohomology_report(w, cfg), out);
        if (*sbi) {
            if (!w.has_splitting()) throw cwb::PreconditionError("sbi needs splitting data");
            return finish(cwb::sbi_report(w, cfg), out);
        }
        if (*report) {
            if (!w.has_splitting()) throw cwb::PreconditionError("report needs splitting data");
            cwb::Report a = cwb::cohomology_report(w, cfg);
            cwb::Report b = cwb::sbi_report(w, cfg);
            cwb::Report r;
            r.doc = a.doc;
            r.doc["command"] = "report";
            for (const char* k : {"sbi_verdicts", "propositions", "shift_isomorphism"}) r.doc[k] = b.doc[k];
            r.ok = a.ok && b.ok;
            r.doc["ok"] = r.ok;
            r.summary = a.summary + b.summary;
            return finish(r, out);
        }
        if (*cobound) {
            std::vector<std::pair<cwb::io::json, cwb::Cochain>> inputs;
            if (random == !input.empty()) throw cwb::InputError("cobound needs exactly one of --random or --input");
            if (random) {
                if (degree < 1) throw cwb::InputError("--random needs --degree >= 1");
                if (degree > cfg.cap)
                    throw cwb::PreconditionError("degree " + std::to_string(degree) + " exceeds the degree cap " +
                                                 std::to_string(cfg.cap));
                cwb::Cobounder gen(w, cfg.cap, cfg.tolerance);
                for (int i = 0; i < count; ++i) {
                    std::uint64_t s = cfg.seed + static_cast<std::uint64_t>(i);
                    inputs.emplace_back(cwb::io::json{{"kind", "random"}, {"seed", s}, {"height", cfg.height}, {"degree", degree}},
                                        gen.random_cyclic_cocycle(degree, s, cfg.height));
                }
            } else {
                cwb::Cochain psi = cwb::io::load_cochain(input, alg);
                if (psi.algebra()->name() != alg->name())
                    throw cwb::InputError("cochain file is for algebra '" + psi.algebra()->name() + "', not '" +
                                          alg->name() + "'");
                inputs.emplace_back(cwb::io::json{{"kind", "file"}, {"cochain", cwb::io::cochain_to_json(psi, false)}},
                                    cwb::Cochain(alg, psi.degree(), psi.entries()));
            }
            return finish(cwb::cobound_report(w, cfg, inputs), out);
        }
        if (*tpower) {
            std::vector<cwb::Vec> traces;
            if (tp_input.empty()) {
                traces = trace_basis(w);
            } else {
                cwb::Cochain t = cwb::io::load_cochain(tp_input, alg);
                if (t.degree() != -1) throw cwb::InputError("trace file must hold a degree -1 cochain");
                traces.push_back(t.entries());
            }
            return finish(cwb::trace_power_report(w, traces, tp_degree), out);
        }
    } catch (const cwb::GuardExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kGuard;
    } catch (const cwb::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const cwb::PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return kFailed;
    }
    return kInput;
}
