#pragma once

// Whole-run reports shared by the command-line tool and the acceptance
// driver. Each returns the JSON document and the verdict that decides the
// exit status.

#include "io.hpp"

#include <chrono>
#include <functional>
#include <iostream>

namespace cwb {

struct RunConfig {
    std::string algebra = "scalar";
    int cap = 6;
    std::uint64_t seed = 1;
    long long height = 3;
    double tolerance = 1e-9;
    unsigned threads = 1;
    std::size_t guard = kMaterializationGuard;
    bool profile = false;
};

struct Report {
    io::json doc;
    bool ok = false;
    std::string summary;  // human-readable, one line per item
};

// Wall-clock per phase, printed to stderr when enabled.
class PhaseTimer {
public:
    explicit PhaseTimer(bool enabled) : enabled_(enabled) {}

    template <class F>
    auto run(const std::string& phase, F&& f)
    {
        auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            report(phase, t0);
        } else {
            auto r = f();
            report(phase, t0);
            return r;
        }
    }

private:
    bool enabled_;
    void report(const std::string& phase, std::chrono::steady_clock::time_point t0) const
    {
        if (!enabled_) return;
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << "[profile] " << phase << ": " << s << " s\n";
    }
};

inline io::json algebra_summary(const Workbench& w)
{
    io::json j;
    j["name"] = w.algebra().name();
    j["dim"] = w.dim();
    j["labels"] = w.algebra().labels();
    j["l1_max_row"] = w.algebra().checks().max_l1_row;
    if (w.has_splitting()) {
        j["K"] = w.splitting().K;
        j["K_exact"] = w.splitting().K_exact;
        j["splitting_source"] = w.splitting().source;
    } else {
        j["K"] = nullptr;
    }
    return j;
}

inline Report verify_report(const Workbench& w, const RunConfig& cfg)
{
    PhaseTimer timer(cfg.profile);
    Report r;
    auto insts = timer.run("catalogue", [&] { return identity_catalogue(w, cfg.cap); });
    auto results = timer.run("identities", [&] { return check_identities(w, insts, cfg.threads, cfg.guard); });
    io::json items = io::json::array();
    std::size_t failed = 0, sampled = 0;
    for (const auto& res : results) {
        items.push_back(io::identity_result_to_json(res));
        if (!res.holds) {
            ++failed;
            r.summary += "FAIL " + res.family + " n=" + std::to_string(res.n) + ": " + res.detail + "\n";
        }
        if (res.mode == "sampled") ++sampled;
    }
    r.doc["command"] = "verify";
    r.doc["algebra"] = algebra_summary(w);
    r.doc["cap"] = cfg.cap;
    r.doc["identities"] = items;
    r.doc["totals"] = {{"checked", results.size()}, {"failed", failed}, {"sampled", sampled}};
    r.ok = failed == 0;
    if (w.has_splitting()) {
        auto h = timer.run("homotopy constants", [&] { return homotopy_constants(w, cfg.cap, cfg.tolerance); });
        r.doc["homotopy_constants"] = io::homotopy_constants_to_json(h);
        auto dc = timer.run("derivations", [&] { return cyclic_derivation_check(w); });
        r.doc["derivations"] = {
            {"cocycle_dim", dc.cocycle_dim}, {"all_inner", dc.all_inner}, {"all_cyclic", dc.all_cyclic}};
        r.ok = r.ok && dc.all_inner && dc.all_cyclic;
    }
    r.doc["ok"] = r.ok;
    r.summary += w.algebra().name() + ": " + std::to_string(results.size() - failed) + "/" +
                 std::to_string(results.size()) + " identities hold (cap " + std::to_string(cfg.cap) + ")\n";
    return r;
}

inline Report cohomology_report(const Workbench& w, const RunConfig& cfg)
{
    PhaseTimer timer(cfg.profile);
    CohomologyEngine eng(w, cfg.guard);
    Report r;
    r.ok = true;
    r.doc["command"] = "cohomology";
    r.doc["algebra"] = algebra_summary(w);
    r.doc["cap"] = cfg.cap;
    io::json complexes;
    for (Complex c : {Complex::D, Complex::E, Complex::F, Complex::G}) {
        auto cc = timer.run(std::string("complex ") + complex_name(c), [&] { return compute_cohomology(eng, c, cfg.cap); });
        io::json degs = io::json::array();
        std::string dims;
        for (const auto& h : cc.degrees) {
            degs.push_back(io::degree_cohomology_to_json(w, h, true));
            dims += (dims.empty() ? "" : ",") + std::to_string(h.dim_H);
            if ((c == Complex::E || c == Complex::F) && w.has_splitting() && h.dim_H != 0) r.ok = false;
        }
        complexes[complex_name(c)] = degs;
        r.summary += std::string(complex_name(c)) + ": dim H^-1.." + std::to_string(cfg.cap) + " = " + dims + "\n";
    }
    r.doc["complexes"] = complexes;
    r.doc["contractible_E_F"] = w.has_splitting() ? io::json(r.ok) : io::json(nullptr);
    r.doc["ok"] = r.ok;
    return r;
}

inline Report sbi_report(const Workbench& w, const RunConfig& cfg)
{
    PhaseTimer timer(cfg.profile);
    CohomologyEngine eng(w, cfg.guard);
    Report r;
    r.ok = true;
    auto verdicts = timer.run("sbi", [&] { return sbi_exactness_check(eng, cfg.cap); });
    io::json vs = io::json::array();
    std::map<std::string, bool> props{{"BI", true}, {"IS", true}, {"SB", true}};
    for (const auto& v : verdicts) {
        vs.push_back(io::sbi_verdict_to_json(v));
        props[v.proposition] = props[v.proposition] && v.equal;
        if (!v.equal) {
            r.ok = false;
            r.summary += "NOT EXACT at " + v.node + " (" + v.proposition + "): ker " + std::to_string(v.kernel_dim) +
                         ", im " + std::to_string(v.image_dim) + "\n";
        }
    }
    io::json shifts = io::json::array();
    timer.run("shift isomorphism", [&] {
        for (int n = 0; n + 2 <= cfg.cap; ++n) {
            ShiftIsoVerdict s = shift_iso_check(eng, n);
            shifts.push_back(io::shift_iso_to_json(s));
            r.ok = r.ok && s.holds();
        }
    });
    r.doc["command"] = "sbi";
    r.doc["algebra"] = algebra_summary(w);
    r.doc["cap"] = cfg.cap;
    r.doc["sbi_verdicts"] = vs;
    r.doc["propositions"] = props;
    r.doc["shift_isomorphism"] = shifts;
    r.doc["ok"] = r.ok;
    r.summary += w.algebra().name() + ": " + std::to_string(verdicts.size()) + " nodes, " +
                 (r.ok ? "sequence exact" : "sequence NOT exact") + "\n";
    return r;
}

// One certificate per input; `inputs` pairs a provenance record with the cocycle.
inline Report cobound_report(const Workbench& w, const RunConfig& cfg,
                             const std::vector<std::pair<io::json, Cochain>>& inputs)
{
    PhaseTimer timer(cfg.profile);
    // Homotopy norms are only needed up to the highest input degree.
    int top = 1;
    for (const auto& in : inputs) top = std::max(top, in.second.degree());
    if (top > cfg.cap)
        throw PreconditionError("degree " + std::to_string(top) + " exceeds the degree cap " + std::to_string(cfg.cap));
    Cobounder cb(w, top, cfg.tolerance);
    Report r;
    r.ok = true;
    io::json certs = io::json::array();
    timer.run("constants", [&] { cb.constants(); });
    timer.run("certificates", [&] {
        for (const auto& [prov, psi] : inputs) {
            CoboundingCertificate c = cb.certify(psi);
            io::json j = io::certificate_to_json(c, w.algebra());
            j["input"] = prov;
            certs.push_back(j);
            r.ok = r.ok && c.ok();
            std::ostringstream line;
            line << "degree " << c.degree << ": |chi| = " << c.chi_norm << " <= " << c.bound_K.chi * c.input_norm;
            if (!c.odd) line << ", |tau| = " << c.tau_norm << " <= " << c.bound_K.tau * c.input_norm;
            line << (c.ok() ? "  ok" : "  FAILED") << "\n";
            r.summary += line.str();
        }
    });
    r.doc["command"] = "cobound";
    r.doc["algebra"] = algebra_summary(w);
    r.doc["homotopy_constants"] = io::homotopy_constants_to_json(cb.constants());
    r.doc["certificates"] = certs;
    r.doc["ok"] = r.ok;
    return r;
}

// tau^(n) for each given trace; for even n also checks S~ tau^(n) = tau^(n+2).
inline Report trace_power_report(const Workbench& w, const std::vector<Vec>& traces, int n)
{
    Report r;
    r.ok = true;
    io::json items = io::json::array();
    for (const Vec& tau : traces) {
        io::json j;
        Cochain t(w.algebra_ptr(), -1, tau);
        Cochain p = trace_power(w.algebra_ptr(), tau, n);
        j["trace"] = io::cochain_to_json(t, false);
        j["power"] = io::cochain_to_json(p, false);
        j["cyclic"] = is_cyclic(p);
        j["cocycle"] = w.delta(n).apply(p).is_zero();
        if (n % 2 == 0) {
            r.ok = r.ok && j["cyclic"].get<bool>() && j["cocycle"].get<bool>();
            if (w.has_splitting()) {
                bool shift = w.S(n).apply(p) == trace_power(w.algebra_ptr(), tau, n + 2);
                j["shift_to_next"] = shift;
                r.ok = r.ok && shift;
            }
        }
        r.summary += "tau^(" + std::to_string(n) + "): norm " + std::to_string(p.norm()) +
                     (j.contains("shift_to_next") ? (j["shift_to_next"].get<bool>() ? ", S~ shifts it" : ", SHIFT FAILS")
                                                  : std::string()) +
                     "\n";
        items.push_back(j);
    }
    r.doc["command"] = "trace-power";
    r.doc["algebra"] = algebra_summary(w);
    r.doc["degree"] = n;
    r.doc["items"] = items;
    r.doc["ok"] = r.ok;
    return r;
}

}  // namespace cwb
