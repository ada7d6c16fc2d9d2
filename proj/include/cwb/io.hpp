#pragma once

// JSON formats: algebra definitions, sparse cochain files, certificates and
// reports. Exact values travel as "p/q" strings; keys are emitted sorted.

#include "cobound.hpp"
#include "cohomology.hpp"
#include "homotopy.hpp"
#include "identities.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace cwb::io {

using json = nlohmann::json;

// Accepts "p/q", a JSON number that is an integer, or [re, im].
inline Scalar scalar_from_json(const json& j)
{
    auto part = [](const json& p) -> Rational {
        if (p.is_string()) return Rational::parse(p.get<std::string>());
        if (p.is_number_integer()) return Rational(p.get<long long>());
        throw InputError("expected a rational string or an integer, got " + p.dump());
    };
    if (j.is_array()) {
        if (j.size() != 2) throw InputError("complex coefficient must be [re, im], got " + j.dump());
        return Scalar(part(j[0]), part(j[1]));
    }
    return Scalar(part(j));
}

inline json scalar_to_json(const Scalar& s) { return json::array({s.re().str(), s.im().str()}); }

inline Vec vector_from_json(const json& j, std::size_t expected, const std::string& what)
{
    if (!j.is_array() || j.size() != expected)
        throw InputError(what + ": expected an array of " + std::to_string(expected) + " coefficients");
    Vec v(expected);
    for (std::size_t i = 0; i < expected; ++i) v[i] = scalar_from_json(j[i]);
    return v;
}

inline std::size_t index_from_json(const json& j, std::size_t bound, const std::string& what)
{
    if (!j.is_number_integer() || j.get<long long>() < 0 || static_cast<std::size_t>(j.get<long long>()) >= bound)
        throw InputError(what + ": index " + j.dump() + " out of range [0, " + std::to_string(bound) + ")");
    return static_cast<std::size_t>(j.get<long long>());
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline AlgebraPtr algebra_from_json(const json& j, const std::string& fallback_name = "file")
{
    try {
        if (!j.is_object()) throw InputError("algebra definition must be a JSON object");
        if (!j.contains("dim")) throw InputError("algebra definition lacks 'dim'");
        const auto d = index_from_json(j.at("dim"), 1u << 16, "dim");
        if (d == 0) throw InputError("dim must be positive");
        std::vector<std::string> labels;
        if (j.contains("labels")) {
            labels = j.at("labels").get<std::vector<std::string>>();
        } else {
            for (std::size_t i = 0; i < d; ++i) labels.push_back("e" + std::to_string(i));
        }
        Tensor c(3, d);
        for (const auto& t : j.at("structure_constants")) {
            if (!t.is_array() || t.size() < 4 || t.size() > 5)
                throw InputError("structure constant entry must be [i, j, k, re, im], got " + t.dump());
            std::size_t i = index_from_json(t[0], d, "structure constant i");
            std::size_t k1 = index_from_json(t[1], d, "structure constant j");
            std::size_t k2 = index_from_json(t[2], d, "structure constant k");
            Scalar v(t.size() == 5 ? Scalar(scalar_from_json(t[3]).re(), scalar_from_json(t[4]).re())
                                   : scalar_from_json(t[3]));
            c.at({i, k1, k2}) += v;
        }
        std::optional<SplittingElement> e;
        if (j.contains("splitting_element")) {
            e.emplace();
            for (const auto& pair : j.at("splitting_element")) {
                if (!pair.is_array() || pair.size() != 2) throw InputError("splitting element terms are [u, v] pairs");
                e->emplace_back(vector_from_json(pair[0], d, "splitting element u"),
                                vector_from_json(pair[1], d, "splitting element v"));
            }
        }
        std::optional<SparseMatrix> rho;
        if (j.contains("rho_matrix")) {
            const json& r = j.at("rho_matrix");
            if (!r.is_array() || r.size() != d) throw InputError("rho_matrix must have " + std::to_string(d) + " rows");
            SparseMatrix::Builder b(d, d * d);
            for (std::size_t i = 0; i < d; ++i) {
                Vec row = vector_from_json(r[i], d * d, "rho_matrix row");
                for (std::size_t k = 0; k < row.size(); ++k)
                    if (!row[k].is_zero()) b.add(k, row[k]);
                b.finish_row();
            }
            rho = b.finish();
        }
        std::string name = j.value("name", fallback_name);
        return std::make_shared<const FiniteAlgebra>(name, std::move(labels), std::move(c), std::move(e), std::move(rho));
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed algebra definition: ") + ex.what());
    }
}

// "file:path", a builtin name, or a path to an existing file.
inline AlgebraPtr load_algebra(const std::string& source, const std::filesystem::path& base = {})
{
    std::string path;
    if (source.rfind("file:", 0) == 0) {
        path = source.substr(5);
    } else {
        try {
            return builtin::by_name(source);
        } catch (const InputError&) {
            std::filesystem::path p = base.empty() ? std::filesystem::path(source) : base / source;
            if (!std::filesystem::exists(p)) throw;
            path = p.string();
        }
    }
    std::filesystem::path p = path;
    if (!base.empty() && p.is_relative()) p = base / p;
    return algebra_from_json(read_json_file(p.string()), p.stem().string());
}

inline json algebra_to_json(const FiniteAlgebra& a)
{
    json j;
    j["name"] = a.name();
    j["dim"] = a.dim();
    j["labels"] = a.labels();
    json sc = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k)
            for (const auto& e : a.product(i, k))
                sc.push_back({i, k, e.col, e.value.re().str(), e.value.im().str()});
    j["structure_constants"] = sc;
    if (a.splitting_element()) {
        json e = json::array();
        for (const auto& [u, v] : *a.splitting_element()) {
            json ju = json::array(), jv = json::array();
            for (const auto& s : u) ju.push_back(scalar_to_json(s));
            for (const auto& s : v) jv.push_back(scalar_to_json(s));
            e.push_back({ju, jv});
        }
        j["splitting_element"] = e;
    }
    return j;
}

// Sparse triplets [[i0, ..., in], re, im] in row-major order.
inline json entries_to_json(const Vec& v, std::size_t dim, std::size_t rank)
{
    json out = json::array();
    std::vector<std::size_t> idx(rank);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        decode_index(i, dim, idx);
        out.push_back({idx, v[i].re().str(), v[i].im().str()});
    }
    return out;
}

inline json cochain_to_json(const Cochain& c, bool inline_algebra_name = true)
{
    json j;
    if (inline_algebra_name) j["algebra"] = c.algebra()->name();
    j["degree"] = c.degree();
    j["entries"] = entries_to_json(c.entries(), c.algebra()->dim(), c.coeffs().rank());
    j["norm"] = c.norm();
    return j;
}

inline Cochain cochain_from_json(const json& j, const AlgebraPtr& alg)
{
    try {
        const int degree = j.at("degree").get<int>();
        if (degree < -1) throw InputError("cochain degree must be >= -1");
        const std::size_t d = alg->dim();
        const std::size_t rank = static_cast<std::size_t>(degree + 1 == 0 ? 1 : degree + 1);
        Vec v(int_pow(d, rank));
        for (const auto& t : j.at("entries")) {
            if (!t.is_array() || t.size() < 2 || t.size() > 3 || !t[0].is_array())
                throw InputError("cochain entry must be [[i0, ...], re, im], got " + t.dump());
            if (t[0].size() != rank)
                throw InputError("cochain entry " + t[0].dump() + " needs " + std::to_string(rank) + " indices");
            std::vector<std::size_t> idx;
            for (const auto& x : t[0]) idx.push_back(index_from_json(x, d, "cochain index"));
            Scalar s = t.size() == 3 ? Scalar(scalar_from_json(t[1]).re(), scalar_from_json(t[2]).re())
                                     : scalar_from_json(t[1]);
            v[encode_index(idx, d)] += s;
        }
        return Cochain(alg, degree, std::move(v));
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed cochain file: ") + ex.what());
    }
}

// The algebra field may be a builtin name, a path, or an inline definition.
inline Cochain load_cochain(const std::string& path, AlgebraPtr fallback)
{
    json j = read_json_file(path);
    AlgebraPtr alg = std::move(fallback);
    if (j.contains("algebra")) {
        const json& a = j.at("algebra");
        auto base = std::filesystem::path(path).parent_path();
        if (a.is_object())
            alg = algebra_from_json(a);
        else if (a.is_string() && (!alg || a.get<std::string>() != alg->name()))
            alg = load_algebra(a.get<std::string>(), base);
    }
    if (!alg) throw InputError("cochain file names no algebra and none was given");
    return cochain_from_json(j, alg);
}

inline json bounds_to_json(const Bounds& b, bool odd)
{
    json j;
    j["chi"] = b.chi;
    j["chi_strict"] = b.chi_strict;
    if (!odd) j["tau"] = b.tau;
    return j;
}

inline json certificate_to_json(const CoboundingCertificate& c, const FiniteAlgebra& a)
{
    json j;
    j["degree"] = c.degree;
    j["parity"] = c.odd ? "odd" : "even";
    j["m"] = c.m;
    j["input_norm"] = c.input_norm;
    j["chi"] = {{"degree", c.degree - 1}, {"entries", entries_to_json(c.chi, a.dim(), static_cast<std::size_t>(c.degree))}};
    if (!c.odd) j["tau"] = {{"degree", -1}, {"entries", entries_to_json(c.tau, a.dim(), 1)}};
    j["residual_zero"] = c.residual_zero;
    j["chi_cyclic"] = c.chi_cyclic;
    j["tau_is_trace"] = c.tau_is_trace;
    j["chi_norm"] = c.chi_norm;
    if (!c.odd) j["tau_norm"] = c.tau_norm;
    j["constants"] = {{"K", c.K}, {"c1", c.c1}, {"c2", c.c2}, {"cap", c.cap}};
    j["bound_K"] = bounds_to_json(c.bound_K, c.odd);
    j["bound_c1c2"] = bounds_to_json(c.bound_c, c.odd);
    j["within_K"] = c.within_K;
    j["within_K_strict"] = c.within_K_strict;
    j["within_c1c2"] = c.within_c;
    j["constants_used"] = c.constants_used;
    j["commutation_checks"] = c.commutation_checks;
    j["ok"] = c.ok();
    return j;
}

inline json identity_result_to_json(const IdentityResult& r)
{
    json j;
    j["family"] = r.family;
    j["n"] = r.n;
    j["source"] = r.source;
    j["statement"] = r.statement;
    j["max_degree"] = r.max_degree;
    j["columns"] = r.columns;
    j["holds"] = r.holds;
    j["mode"] = r.mode;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline json homotopy_constants_to_json(const HomotopyConstants& h)
{
    json j;
    j["cap"] = h.cap;
    j["sigma_norms"] = h.sigma_norms;
    j["sigma_prime_norms"] = h.sigma_prime_norms;
    j["c1"] = h.c1;
    j["c2"] = h.c2;
    j["K"] = h.K;
    j["c1_le_K"] = h.c1_le_K;
    j["c2_le_K"] = h.c2_le_K;
    return j;
}

inline json degree_cohomology_to_json(const Workbench& w, const DegreeCohomology& h, bool with_reps)
{
    json j;
    j["degree"] = h.node.degree;
    j["dim_space"] = h.dim_space;
    j["dim_Z"] = h.dim_Z;
    j["dim_B"] = h.dim_B;
    j["dim_H"] = h.dim_H;
    if (with_reps) {
        json reps = json::array();
        if (h.dim_H > 0) {
            const Space& s = w.space(h.node);
            const std::size_t rank = h.node.degree < 0 ? 1 : static_cast<std::size_t>(h.node.degree) + 1;
            for (const Vec& col : columns_of(multiply(s.basis, h.reps)))
                reps.push_back(entries_to_json(col, w.dim(), rank));
        }
        j["representatives"] = reps;
    }
    return j;
}

inline json sbi_verdict_to_json(const SbiVerdict& v)
{
    return {{"node", v.node},           {"proposition", v.proposition}, {"degree", v.degree},
            {"kernel_dim", v.kernel_dim}, {"image_dim", v.image_dim},   {"composite_zero", v.composite_zero},
            {"equal", v.equal}};
}

inline json shift_iso_to_json(const ShiftIsoVerdict& v)
{
    return {{"n", v.n},
            {"dim_source", v.dim_source},
            {"dim_target", v.dim_target},
            {"RS_identity", v.RS_identity},
            {"SR_identity", v.SR_identity},
            {"holds", v.holds()}};
}

inline void write_json(const json& j, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

}  // namespace cwb::io
