#pragma once

// The catalogue of operator identities between the complexes, and an exact
// checker that compares both sides on a basis of the source space.

#include "operators.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace cwb {

struct IdentityInstance {
    std::string family;
    int n = 0;
    ChainOperator lhs;
    ChainOperator rhs;
    // When set, the check is instead that lhs maps into the target space.
    bool membership = false;
};

struct IdentityResult {
    std::string family;
    int n = 0;
    std::string source;
    std::string statement;
    int max_degree = 0;
    std::size_t columns = 0;
    bool holds = false;
    std::string mode;  // "exact" or "sampled"
    std::string detail;
};

struct IdentityFamily {
    std::string name;
    bool needs_splitting = false;
    std::function<std::vector<IdentityInstance>(const Workbench&, int)> make;
};

namespace detail {

inline std::vector<IdentityInstance> chain_of(const std::string& family, int n, std::vector<ChainOperator> ops)
{
    std::vector<IdentityInstance> out;
    for (std::size_t i = 0; i + 1 < ops.size(); ++i)
        out.push_back({family + (ops.size() > 2 ? "#" + std::to_string(i + 1) : ""), n, ops[i], ops[i + 1], false});
    return out;
}

inline std::vector<IdentityInstance> eq(const std::string& family, int n, ChainOperator a, ChainOperator b)
{
    return {{family, n, std::move(a), std::move(b), false}};
}

inline std::vector<IdentityInstance> lands_in(const std::string& family, int n, ChainOperator a)
{
    ChainOperator b = a;
    return {{family, n, std::move(a), std::move(b), true}};
}

}  // namespace detail

inline std::vector<IdentityFamily> identity_families()
{
    using C = Complex;
    using detail::chain_of;
    using detail::eq;
    using detail::lands_in;
    using W = const Workbench&;
    std::vector<IdentityFamily> f;

    auto zero_from = [](W w, Node s, Node t) { return w.zero("0", s, t); };
    auto id = [](W w, Node s) { return w.identity(s); };

    // Complex axioms.
    for (C c : {C::D, C::E, C::F, C::G})
        f.push_back({std::string("d_squared[") + complex_name(c) + "]", false, [=](W w, int n) {
                         return eq("", n, w.d(c, n + 1) * w.d(c, n), zero_from(w, {c, n}, {c, n + 2}));
                     }});
    f.push_back({"t_periodic", false, [](W w, int n) -> std::vector<IdentityInstance> {
                     if (n < 0) return {};
                     ChainOperator p = w.t(n);
                     for (int k = 1; k <= n; ++k) p = w.t(n) * p;
                     return eq("", n, p, w.identity({C::E, n}));
                 }});

    // Chain maps between the complexes.
    f.push_back({"intertwining_N", false, [](W w, int n) {
                     return eq("", n, w.N(n + 1) * w.d(C::F, n), w.d(C::G, n) * w.N(n));
                 }});
    f.push_back({"chain_map_M", false, [](W w, int n) {
                     return eq("", n, w.d(C::F, n) * w.M(n), w.M(n + 1) * w.d(C::E, n));
                 }});
    f.push_back({"chain_map_iota", false, [](W w, int n) {
                     return eq("", n, w.d(C::E, n) * w.iota(n), w.iota(n + 1) * w.d(C::D, n));
                 }});

    // Splitting identities, including the degree -1 conventions.
    f.push_back({"split_Nj", false, [=](W w, int n) { return eq("", n, w.N(n) * w.j(n), id(w, {C::G, n})); }});
    f.push_back({"split_Mh_jN", false, [=](W w, int n) {
                     return eq("", n, w.M(n) * w.h(n) + w.j(n) * w.N(n), id(w, {C::F, n}));
                 }});
    f.push_back({"split_hM_iotaP", false, [=](W w, int n) {
                     return eq("", n, w.h(n) * w.M(n) + w.iota(n) * w.P(n), id(w, {C::E, n}));
                 }});
    f.push_back({"split_Piota", false, [=](W w, int n) { return eq("", n, w.P(n) * w.iota(n), id(w, {C::D, n})); }});
    f.push_back({"image_N_cyclic", false, [](W w, int n) { return lands_in("", n, w.N(n)); }});
    f.push_back({"image_P_cyclic", false, [](W w, int n) { return lands_in("", n, w.P(n)); }});

    // Lemma on delta h delta' M and delta' j delta'' N.
    f.push_back({"lemma_dh", false, [](W w, int n) {
                     ChainOperator a = w.delta(n + 1) * w.h(n + 1) * w.delta_prime(n) * w.M(n);
                     ChainOperator b = w.delta(n + 1) * w.h(n + 1) * w.M(n + 1) * w.delta(n);
                     ChainOperator c = -(w.delta(n + 1) * w.iota(n + 1) * w.P(n + 1) * w.delta(n));
                     ChainOperator d = -(w.iota(n + 2) * w.d(C::D, n + 1) * w.P(n + 1) * w.delta(n));
                     return chain_of("", n, {a, b, c, d});
                 }});
    f.push_back({"lemma_dj", false, [](W w, int n) {
                     ChainOperator a = w.delta_prime(n + 1) * w.j(n + 1) * w.d(C::G, n) * w.N(n);
                     ChainOperator b = w.delta_prime(n + 1) * w.j(n + 1) * w.N(n + 1) * w.delta_prime(n);
                     ChainOperator c = -(w.delta_prime(n + 1) * w.M(n + 1) * w.h(n + 1) * w.delta_prime(n));
                     ChainOperator d = -(w.M(n + 2) * w.delta(n + 1) * w.h(n + 1) * w.delta_prime(n));
                     return chain_of("", n, {a, b, c, d});
                 }});

    // Homotopies.
    f.push_back({"homotopy_sigma", true, [=](W w, int n) {
                     return eq("", n, w.delta(n - 1) * w.sigma(n - 1) + w.sigma(n) * w.delta(n), id(w, {C::E, n}));
                 }});
    f.push_back({"homotopy_sigma_prime", true, [=](W w, int n) -> std::vector<IdentityInstance> {
                     if (n < 0) return {};
                     return eq("", n, w.delta_prime(n - 1) * w.sigma_prime(n - 1) + w.sigma_prime(n) * w.delta_prime(n),
                               id(w, {C::F, n}));
                 }});
    f.push_back({"sigma_minus1_traces", true, [](W w, int n) -> std::vector<IdentityInstance> {
                     if (n != 0) return {};
                     return lands_in("", n, w.sigma(-1));
                 }});

    // Lemma on sigma-composites.
    f.push_back({"lemma_sigma", true, [](W w, int n) {
                     ChainOperator a = w.delta_prime(n - 1) * w.M(n - 1) * w.sigma(n - 1) * w.iota(n);
                     ChainOperator b = w.M(n) * w.delta(n - 1) * w.sigma(n - 1) * w.iota(n);
                     ChainOperator c = -(w.M(n) * w.sigma(n) * w.delta(n) * w.iota(n));
                     ChainOperator d = -(w.M(n) * w.sigma(n) * w.iota(n + 1) * w.d(C::D, n));
                     return chain_of("", n, {a, b, c, d});
                 }});
    f.push_back({"lemma_sigma_prime", true, [](W w, int n) {
                     ChainOperator a = w.d(C::G, n - 1) * w.N(n - 1) * w.sigma_prime(n - 1) * w.M(n);
                     ChainOperator b = w.N(n) * w.delta_prime(n - 1) * w.sigma_prime(n - 1) * w.M(n);
                     ChainOperator c = -(w.N(n) * w.sigma_prime(n) * w.delta_prime(n) * w.M(n));
                     ChainOperator d = -(w.N(n) * w.sigma_prime(n) * w.M(n + 1) * w.delta(n));
                     return chain_of("", n, {a, b, c, d});
                 }});

    // Shift map, its homotopy inverse, connecting map.
    f.push_back({"chain_map_S", false, [](W w, int n) -> std::vector<IdentityInstance> {
                     if (n < 0) return {};
                     return eq("", n, w.S(n + 1) * w.d(C::G, n), w.d(C::D, n + 2) * w.S(n));
                 }});
    f.push_back({"image_S_cyclic", false, [](W w, int n) -> std::vector<IdentityInstance> {
                     if (n < 0) return {};
                     return lands_in("", n, w.S(n));
                 }});
    f.push_back({"chain_map_R", true, [](W w, int n) -> std::vector<IdentityInstance> {
                     if (n < 0) return {};
                     return eq("", n, w.R(n + 1) * w.d(C::D, n + 2), w.d(C::G, n) * w.R(n));
                 }});
    f.push_back({"squeersy", true, [](W w, int n) -> std::vector<IdentityInstance> {
                     if (n < 0) return {};
                     ChainOperator lhs = w.S_natural(n) * w.R(n);
                     ChainOperator rhs = w.iota(n + 2) + w.T_natural(n + 1) * w.d(C::D, n + 2) +
                                         w.iota(n + 2) * w.d(C::D, n + 1) * w.P(n + 1) * w.T_natural(n);
                     return eq("", n, lhs, rhs);
                 }});
    f.push_back({"squeersy_cyclic", true, [=](W w, int n) -> std::vector<IdentityInstance> {
                     if (n < 0) return {};
                     ChainOperator lhs = w.S(n) * w.R(n);
                     ChainOperator rhs = id(w, {C::D, n + 2}) + w.T(n + 1) * w.d(C::D, n + 2) + w.d(C::D, n + 1) * w.T(n);
                     return eq("", n, lhs, rhs);
                 }});
    f.push_back({"anticommutation_B", true, [=](W w, int n) {
                     return eq("", n, w.d(C::G, n) * w.B(n) + w.B(n + 1) * w.delta(n + 1),
                               zero_from(w, {C::E, n + 1}, {C::G, n + 1}));
                 }});
    f.push_back({"B_iota_zero", true, [=](W w, int n) {
                     return eq("", n, w.B(n) * w.iota(n + 1), zero_from(w, {C::D, n + 1}, {C::G, n}));
                 }});
    f.push_back({"dazzler", true, [=](W w, int n) -> std::vector<IdentityInstance> {
                     if (n < 0) return {};
                     ChainOperator rhs = id(w, {C::G, n}) - w.d(C::G, n - 1) * w.N(n - 1) * w.sigma_prime(n - 1) * w.j(n) -
                                         w.N(n) * w.sigma_prime(n) * w.j(n + 1) * w.d(C::G, n);
                     return eq("", n, w.B(n) * w.Y(n), rhs);
                 }});
    f.push_back({"S_equals_PdY", false, [](W w, int n) -> std::vector<IdentityInstance> {
                     if (n < 0) return {};
                     return eq("", n, w.S(n), w.P(n + 2) * w.delta(n + 1) * w.Y(n));
                 }});
    f.push_back({"ghastly", true, [](W w, int n) -> std::vector<IdentityInstance> {
                     if (n < 0) return {};
                     ChainOperator rhs = w.P(n + 2) * w.delta(n + 1) - w.d(C::D, n + 1) * w.P(n + 1) -
                                         w.P(n + 2) * w.delta(n + 1) * w.h(n + 1) * w.sigma_prime(n + 1) * w.M(n + 2) *
                                             w.delta(n + 1) +
                                         w.d(C::D, n + 1) * w.P(n + 1) * w.delta(n) * w.h(n) * w.sigma_prime(n) *
                                             w.M(n + 1);
                     return eq("", n, w.S(n) * w.B(n), rhs);
                 }});
    return f;
}

// All instances with every node in degree <= cap and a nonzero source space.
inline std::vector<IdentityInstance> identity_catalogue(const Workbench& w, int cap)
{
    std::vector<IdentityInstance> out;
    for (const auto& fam : identity_families()) {
        if (fam.needs_splitting && !w.has_splitting()) continue;
        for (int n = -1; n <= cap; ++n)
            for (auto& inst : fam.make(w, n)) {
                if (inst.lhs.max_degree() > cap || inst.rhs.max_degree() > cap) continue;
                if (w.ambient(inst.lhs.source()) == 0) continue;
                inst.family = fam.name + inst.family;
                out.push_back(std::move(inst));
            }
    }
    return out;
}

namespace detail {

inline std::string describe_entry(const Workbench& w, Node node, std::size_t row)
{
    if (node.degree < 0) return w.algebra().labels()[row];
    std::vector<std::size_t> digits(static_cast<std::size_t>(node.degree) + 1);
    decode_index(row, w.dim(), digits);
    std::string s = "(";
    for (std::size_t i = 0; i < digits.size(); ++i) s += (i ? "," : "") + w.algebra().labels()[digits[i]];
    return s + ")";
}

}  // namespace detail

// Exact on a basis of the source space; if materialisation would exceed the
// guard, exact on `samples` seeded random vectors of the source space.
inline IdentityResult check_identity(const Workbench& w, const IdentityInstance& inst,
                                     std::size_t guard = kMaterializationGuard, int samples = 4)
{
    IdentityResult r;
    r.family = inst.family;
    r.n = inst.n;
    r.source = inst.lhs.source().str();
    r.statement = inst.membership ? inst.lhs.name() + " lands in " + inst.lhs.target().str()
                                  : inst.lhs.name() + " == " + inst.rhs.name();
    r.max_degree = std::max(inst.lhs.max_degree(), inst.rhs.max_degree());
    const Space& src = w.space(inst.lhs.source());
    const Space& tgt = w.space(inst.lhs.target());
    r.columns = src.dim();
    try {
        SparseMatrix a = inst.lhs.apply_to(src.basis, guard);
        if (inst.membership) {
            r.holds = tgt.contains(a);
            if (!r.holds) r.detail = "image leaves " + inst.lhs.target().str();
        } else {
            SparseMatrix b = inst.rhs.apply_to(src.basis, guard);
            r.holds = a == b;
            if (!r.holds) {
                SparseMatrix diff = linear_combination({{Scalar(1), &a}, {Scalar(-1), &b}}, a.rows(), a.cols());
                auto [row, col] = diff.first_nonzero();
                r.detail = "differs at output " + detail::describe_entry(w, inst.lhs.target(), row) +
                           " on basis vector " + std::to_string(col);
            }
        }
        r.mode = "exact";
    } catch (const GuardExceeded&) {
        r.mode = "sampled";
        r.holds = true;
        std::uint64_t seed = 1469598103934665603ULL;  // FNV-1a over the family name
        for (unsigned char ch : inst.family) seed = (seed ^ ch) * 1099511628211ULL;
        std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(inst.n + 7));
        for (int s = 0; s < samples && r.holds; ++s) {
            Vec coords(src.dim());
            for (auto& c : coords) c = Scalar(bounded_integer(rng, 5));
            Vec x = src.basis.apply(coords);
            Vec a = inst.lhs.apply(x);
            if (inst.membership) {
                r.holds = tgt.contains(a);
            } else {
                r.holds = a == inst.rhs.apply(x);
            }
            if (!r.holds) r.detail = "fails on sample " + std::to_string(s);
        }
    }
    return r;
}

// Runs every instance, in parallel over `threads` workers; results keep
// catalogue order.
inline std::vector<IdentityResult> check_identities(const Workbench& w, const std::vector<IdentityInstance>& insts,
                                                    unsigned threads = 1, std::size_t guard = kMaterializationGuard)
{
    std::vector<IdentityResult> out(insts.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        try {
            for (std::size_t i = next++; i < insts.size(); i = next++) out[i] = check_identity(w, insts[i], guard);
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next = insts.size();
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace cwb
