// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Usage: acceptance <path-to-cwb> <scratch-dir>

#include "cwb/cwb.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

using namespace cwb;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(double v)
{
    std::ostringstream s;
    s << std::setprecision(4) << v;
    return s.str();
}

// 1. Every catalogued identity, exactly, degrees -1..6 (M3 capped at 4).
Outcome identity_suite()
{
    const std::vector<std::pair<std::string, int>> runs{{"scalar", 6},   {"matrix:2", 6},           {"matrix:3", 4},
                                                        {"group:z2", 6}, {"semilattice:chain2", 6}, {"sum:matrix:2+scalar", 6}};
    auto t0 = std::chrono::steady_clock::now();
    std::size_t total = 0, failed = 0, sampled = 0;
    std::string first;
    for (const auto& [name, cap] : runs) {
        Workbench w(builtin::by_name(name));
        auto results = check_identities(w, identity_catalogue(w, cap), worker_count());
        for (const auto& r : results) {
            ++total;
            if (r.mode != "exact") ++sampled;
            if (!r.holds || r.mode != "exact") {
                ++failed;
                if (first.empty()) first = name + " " + r.family + " n=" + std::to_string(r.n) + " " + r.detail;
            }
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Outcome o;
    o.pass = failed == 0 && secs < 180.0;
    o.detail = std::to_string(total - failed) + "/" + std::to_string(total) + " identities exact on 6 algebras, " +
               fmt(secs) + " s (limit 180 s)";
    if (sampled) o.detail += ", " + std::to_string(sampled) + " only sampled";
    if (!first.empty()) o.detail += "; first failure: " + first;
    return o;
}

// 2. H(E) = H(F) = 0 in degrees -1..4 on the whole zoo.
Outcome contractibility()
{
    auto t0 = std::chrono::steady_clock::now();
    std::size_t nodes = 0;
    std::string bad;
    for (const char* name : {"scalar", "matrix:2", "matrix:3", "group:z2", "semilattice:chain2", "sum:matrix:2+scalar"}) {
        Workbench w(builtin::by_name(name));
        CohomologyEngine eng(w);
        for (Complex c : {Complex::E, Complex::F})
            for (int n = -1; n <= 4; ++n) {
                ++nodes;
                if (eng.at({c, n}).dim_H != 0 && bad.empty())
                    bad = std::string(name) + " H^" + std::to_string(n) + "(" + complex_name(c) + ")";
            }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Outcome o;
    o.pass = bad.empty() && secs < 60.0;
    o.detail = std::to_string(nodes) + " nodes by exact rank, " + fmt(secs) + " s (limit 60 s)";
    if (!bad.empty()) o.detail += "; nonzero at " + bad;
    return o;
}

std::string join(const std::vector<std::size_t>& v)
{
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

// 3. dim H_lambda of M2 and of the scalar algebra.
Outcome cyclic_dimensions()
{
    Workbench m2(builtin::matrix(2)), sc(builtin::scalar());
    CohomologyEngine e2(m2), es(sc);
    std::vector<std::size_t> d2, ds, want_s;
    for (int n = 0; n <= 4; ++n) d2.push_back(e2.at({Complex::G, n}).dim_H);
    for (int n = 0; n <= 6; ++n) {
        ds.push_back(es.at({Complex::G, n}).dim_H);
        want_s.push_back(n % 2 == 0 ? 1 : 0);
    }
    Outcome o;
    o.pass = d2 == std::vector<std::size_t>{1, 0, 1, 0, 1} && ds == want_s;
    o.detail = "M2: " + join(d2) + " (want 1,0,1,0,1); scalar: " + join(ds) + " (want 1,0,1,0,1,0,1)";
    return o;
}

// 4. 50 seeded cocycles per algebra and degree 1..4, exact residuals, bounds
// 2(m+1)^3 K^{4m} and K^{2m+2} with the computed K.
Outcome cobounding()
{
    auto t0 = std::chrono::steady_clock::now();
    std::size_t total = 0, good = 0;
    std::string notes, bad;
    for (const char* name : {"matrix:2", "semilattice:chain2", "group:z2"}) {
        Workbench w(builtin::by_name(name));
        Cobounder cb(w, 4, 1e-9);
        double worst = 0.0;
        for (int q = 1; q <= 4; ++q)
            for (std::uint64_t s = 0; s < 50; ++s) {
                Cochain psi = cb.random_cyclic_cocycle(q, 1000 + s, 3);
                CoboundingCertificate c = cb.certify(psi);
                ++total;
                bool ok = c.residual_zero && c.chi_cyclic && c.tau_is_trace && c.within_K_strict;
                if (ok) ++good;
                else if (bad.empty())
                    bad = std::string(name) + " q=" + std::to_string(q) + " seed=" + std::to_string(1000 + s);
                if (c.input_norm > 0) worst = std::max(worst, c.chi_norm / (c.bound_K.chi_strict * c.input_norm));
            }
        notes += std::string(notes.empty() ? "" : "; ") + name + " K=" + fmt(cb.constants().K) +
                 " worst |chi|/bound=" + fmt(worst);
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Outcome o;
    o.pass = good == total && secs < 120.0;
    o.detail = std::to_string(good) + "/" + std::to_string(total) + " certificates, " + fmt(secs) + " s (limit 120 s); " + notes;
    if (!bad.empty()) o.detail += "; first failure: " + bad;
    return o;
}

// 5. S~ tau^(2n) = tau^(2n+2), n = 0, 1, 2.
Outcome shift_on_traces()
{
    std::size_t checks = 0, good = 0;
    for (const char* name : {"matrix:2", "scalar"}) {
        auto a = builtin::by_name(name);
        Workbench w(a);
        for (const Vec& tau : columns_of(w.space({Complex::E, -1}).basis))
            for (int n = 0; n <= 2; ++n) {
                ++checks;
                if (w.S(2 * n).apply(trace_power(a, tau, 2 * n)) == trace_power(a, tau, 2 * n + 2)) ++good;
            }
    }
    return {good == checks, std::to_string(good) + "/" + std::to_string(checks) + " exact equalities on M2 and scalar"};
}

// 6. Kernel = image at every node up to degree 4, and each proposition.
Outcome sbi_exactness()
{
    std::size_t nodes = 0, good = 0;
    std::map<std::string, bool> props{{"BI", true}, {"IS", true}, {"SB", true}};
    std::string bad;
    for (const char* name : {"matrix:2", "scalar", "group:z2"}) {
        Workbench w(builtin::by_name(name));
        CohomologyEngine eng(w);
        for (const auto& v : sbi_exactness_check(eng, 4)) {
            ++nodes;
            if (v.equal) ++good;
            else if (bad.empty()) bad = std::string(name) + " " + v.node;
            props[v.proposition] = props[v.proposition] && v.equal;
        }
    }
    Outcome o;
    o.pass = good == nodes && props["BI"] && props["IS"] && props["SB"];
    o.detail = std::to_string(good) + "/" + std::to_string(nodes) + " nodes exact; p:BI " + (props["BI"] ? "ok" : "FAIL") +
               ", p:SB " + (props["SB"] ? "ok" : "FAIL") + ", p:IS " + (props["IS"] ? "ok" : "FAIL");
    if (!bad.empty()) o.detail += "; first failure: " + bad;
    return o;
}

// 7. Operator-norm ceilings on M2, n <= 4.
Outcome norm_ceilings()
{
    Workbench w(builtin::matrix(2));
    HomotopyConstants h = homotopy_constants(w, 6);
    const double cc = h.c1 * h.c2, tol = 1e-9;
    std::size_t checks = 0, good = 0;
    std::string bad;
    auto check = [&](const std::string& what, double value, double ceiling) {
        ++checks;
        if (value <= ceiling * (1 + tol) + tol) ++good;
        else if (bad.empty()) bad = what + " = " + fmt(value) + " > " + fmt(ceiling);
    };
    double worst_T = 0.0;
    for (int n = 0; n <= 4; ++n) {
        const std::string k = std::to_string(n);
        check("|h_" + k + "|", operator_norm(w, w.h(n)), n);
        check("|N_" + k + "|", operator_norm(w, w.N(n)), 1.0);
        check("|M_" + k + "|", operator_norm(w, w.M(n)), 1.0);
        check("|R~_" + k + "|", operator_norm(w, w.R(n)), cc);
        double t = operator_norm(w, w.T_natural(n));
        worst_T = std::max(worst_T, t / ((n + 1.0) * (n + 1.0) * cc));
        check("|T_" + k + "|", t, (n + 1.0) * (n + 1.0) * cc);
    }
    Outcome o;
    o.pass = good == checks;
    o.detail = std::to_string(good) + "/" + std::to_string(checks) + " ceilings hold, c1=" + fmt(h.c1) + " c2=" + fmt(h.c2) +
               ", worst |T|/ceiling=" + fmt(worst_T);
    if (!bad.empty()) o.detail += "; " + bad;
    return o;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 8. Two identical CLI runs give byte-identical JSON.
Outcome determinism(const std::string& cli, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> cmds{
        {"verify", "verify --algebra group:z2 --cap 4"},
        {"cobound", "cobound --algebra matrix:2 --random --degree 3 --seed 7 --count 5"},
        {"cobound_even", "cobound --algebra semilattice:chain2 --random --degree 4 --seed 3"},
        {"cohomology", "cohomology --algebra matrix:2 --cap 4"},
        {"sbi", "sbi --algebra group:z2 --cap 3"},
        {"report", "report --algebra scalar --cap 4"},
        {"trace_power", "trace-power --algebra matrix:2 --degree 4"}};
    std::size_t good = 0;
    std::string bad;
    for (const auto& [tag, args] : cmds) {
        std::string files[2];
        bool ran = true;
        for (int run = 0; run < 2; ++run) {
            auto out = dir / (tag + "_" + std::to_string(run) + ".json");
            std::filesystem::remove(out);
            std::string cmd = "\"" + cli + "\" " + args + " --out \"" + out.string() + "\" > /dev/null 2>&1";
            ran = ran && std::system(cmd.c_str()) == 0;
            files[run] = slurp(out);
        }
        if (ran && !files[0].empty() && files[0] == files[1]) ++good;
        else if (bad.empty()) bad = tag + (ran ? " differs" : " did not exit 0");
    }
    Outcome o;
    o.pass = good == cmds.size();
    o.detail = std::to_string(good) + "/" + std::to_string(cmds.size()) + " commands byte-identical across two runs";
    if (!bad.empty()) o.detail += "; " + bad;
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc < 3) {
        std::cerr << "usage: acceptance <cwb-binary> <scratch-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::filesystem::path dir = argv[2];
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"identity suite", identity_suite},
        {"contractibility of E and F", contractibility},
        {"cyclic cohomology dimensions", cyclic_dimensions},
        {"cobounding certificates", cobounding},
        {"shift on traces", shift_on_traces},
        {"SBI exactness", sbi_exactness},
        {"operator-norm ceilings", norm_ceilings},
        {"CLI determinism", [&] { return determinism(cli, dir); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first
                  << "): " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
