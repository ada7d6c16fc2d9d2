#pragma once

// Explicit cobounding of cyclic cocycles: the reduction step psi = S~ phi +
// delta chi and the recursion down to degree 1 or 2, with norm certificates.

#include "homotopy.hpp"
#include "identities.hpp"

#include <cmath>
#include <set>

namespace cwb {

struct ReductionStep {
    Cochain phi;  // cyclic cocycle of degree n
    Cochain chi;  // cyclic cochain of degree n+1
};

namespace detail {

inline std::string first_nonzero_entry(const Workbench& w, const Cochain& c)
{
    const Vec& v = c.entries();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            return detail::describe_entry(w, {Complex::E, c.degree()}, i) + " = " + v[i].str();
    return "none";
}

inline void require_cyclic_cocycle(const Workbench& w, const Cochain& psi)
{
    if (psi.algebra() != w.algebra_ptr()) throw PreconditionError("cochain belongs to a different algebra");
    if (psi.degree() < 1) throw PreconditionError("cobounding needs degree >= 1");
    if (!is_cyclic(psi)) throw PreconditionError("input is not cyclic (t psi != psi)");
    Cochain d = w.delta(psi.degree()).apply(psi);
    if (!d.is_zero())
        throw PreconditionError("input is not a cocycle: (delta psi)" + first_nonzero_entry(w, d));
}

}  // namespace detail

// phi = R~ psi, chi = -T psi, with psi = S~ phi + delta chi verified exactly.
inline ReductionStep reduction_step(const Workbench& w, const Cochain& psi)
{
    detail::require_cyclic_cocycle(w, psi);
    const int n = psi.degree() - 2;
    if (n < 0) throw PreconditionError("reduction step needs degree >= 2");
    ReductionStep r{w.R(n).apply(psi), Scalar(-1) * w.T(n).apply(psi)};
    if (!(w.S(n).apply(r.phi) + w.d(Complex::D, n + 1).apply(r.chi) == psi))
        throw std::logic_error("reduction step: psi != S~ phi + delta chi");
    if (!w.delta(n).apply(r.phi).is_zero()) throw std::logic_error("reduction step: phi is not a cocycle");
    return r;
}

struct Bounds {
    double chi = 0.0;
    double chi_strict = 0.0;  // even degree: the 4m exponent instead of 4m+2
    double tau = 0.0;
};

struct CoboundingCertificate {
    int degree = 0;
    int m = 0;
    bool odd = true;
    double input_norm = 0.0;
    Vec chi;  // cyclic cochain of degree 2m (odd) or 2m+1 (even)
    Vec tau;  // trace, even degree only
    bool residual_zero = false;
    bool chi_cyclic = false;
    bool tau_is_trace = true;
    double chi_norm = 0.0;
    double tau_norm = 0.0;
    double K = 0.0, c1 = 0.0, c2 = 0.0;
    int cap = 0;
    Bounds bound_K;   // Theorem bounds with K
    Bounds bound_c;   // the same with c1 c2 from the capped homotopies
    bool within_K = false;
    bool within_K_strict = false;
    bool within_c = false;
    std::string constants_used = "K_from_splitting";
    std::size_t commutation_checks = 0;

    bool ok() const { return residual_zero && chi_cyclic && tau_is_trace && within_K; }
};

// Runs the recursion for one workbench; caches the constants, the verified
// commutation laws and the cocycle bases it needs.
class Cobounder {
public:
    Cobounder(const Workbench& w, int cap, double tolerance = 1e-9) : w_(w), cap_(cap), tol_(tolerance) {}

    const HomotopyConstants& constants()
    {
        if (!constants_) constants_ = homotopy_constants(w_, cap_, tol_);
        return *constants_;
    }

    CoboundingCertificate certify(const Cochain& psi)
    {
        detail::require_cyclic_cocycle(w_, psi);
        const int q = psi.degree();
        if (q > cap_)
            throw PreconditionError("degree " + std::to_string(q) + " exceeds the degree cap " + std::to_string(cap_));
        const auto& k = constants();
        CoboundingCertificate c;
        c.degree = q;
        c.odd = q % 2 == 1;
        c.m = c.odd ? (q - 1) / 2 : (q - 2) / 2;
        c.cap = cap_;
        c.K = k.K;
        c.c1 = k.c1;
        c.c2 = k.c2;
        c.input_norm = psi.norm();
        checks_ = 0;
        Partial p = solve(psi);
        c.commutation_checks = checks_;
        c.chi = p.chi.entries();
        c.chi_norm = p.chi.norm();
        c.chi_cyclic = is_cyclic(p.chi);
        Cochain rhs = w_.d(Complex::D, q - 1).apply(p.chi);
        if (!c.odd) {
            c.tau = p.tau;
            c.tau_norm = sup_entry_norm(p.tau).value;
            c.tau_is_trace = w_.space({Complex::E, -1}).contains(p.tau);
            rhs += trace_power(w_.algebra_ptr(), p.tau, q);
        }
        c.residual_zero = rhs == psi;
        fill_bounds(c);
        return c;
    }

    // Random integer combination of the canonical basis of cyclic cocycles.
    Cochain random_cyclic_cocycle(int degree, std::uint64_t seed, long long height)
    {
        const SparseMatrix& z = cocycle_basis(degree);
        std::mt19937_64 rng(seed);
        Vec coef(z.cols());
        for (auto& v : coef) v = Scalar(bounded_integer(rng, height));
        const Space& s = w_.space({Complex::D, degree});
        return Cochain(w_.algebra_ptr(), degree, s.basis.apply(z.apply(coef)));
    }

    // Coordinates (in the cyclic basis) of a basis of Z^n_lambda.
    const SparseMatrix& cocycle_basis(int degree)
    {
        auto it = cocycles_.find(degree);
        if (it == cocycles_.end())
            it = cocycles_.emplace(degree, nullspace(coordinate_matrix(w_, w_.d(Complex::D, degree))).basis).first;
        return it->second;
    }

private:
    struct Partial {
        Cochain chi;
        Vec tau;
    };

    const Workbench& w_;
    int cap_;
    double tol_;
    std::optional<HomotopyConstants> constants_;
    std::set<int> commuting_;
    std::map<int, SparseMatrix> cocycles_;
    std::size_t checks_ = 0;

    // S~ delta'' = delta S~ on G^k, exactly; needed to move S~ past delta.
    void assert_commutation(int k)
    {
        ++checks_;
        if (commuting_.count(k)) return;
        IdentityInstance inst{"chain_map_S", k, w_.S(k + 1) * w_.d(Complex::G, k),
                              w_.d(Complex::D, k + 2) * w_.S(k), false};
        IdentityResult r = check_identity(w_, inst);
        if (!r.holds) throw std::logic_error("S~ does not commute with the differentials at degree " + std::to_string(k));
        commuting_.insert(k);
    }

    Partial solve(const Cochain& psi)
    {
        const int q = psi.degree();
        if (q == 1) {
            // Every 1-cocycle is delta sigma_0 of itself; averaging keeps it
            // cyclic and delta commutes with P on cyclic input.
            Cochain chi = w_.P(0).apply(w_.sigma(0).apply(psi));
            if (!(w_.d(Complex::D, 0).apply(chi) == psi)) throw std::logic_error("odd base case: psi != delta chi");
            return {chi, {}};
        }
        ReductionStep step = reduction_step(w_, psi);
        if (q == 2) return {step.chi, step.phi.entries()};
        Partial sub = solve(step.phi);
        // phi = delta chi2 (+ tau^(q-2)) and S~ delta = ((k+2)/(k+1)) delta S~
        // on G^k, because delta'' = ((k+1)/(k+2)) delta there.
        const int k = q - 3;
        assert_commutation(k);
        Cochain lifted = w_.S(k).apply(sub.chi);
        lifted *= Scalar(Rational(k + 2LL, k + 1LL));
        return {step.chi + lifted, sub.tau};
    }

    void fill_bounds(CoboundingCertificate& c) const
    {
        const double m = c.m;
        const double cube = 2.0 * (m + 1) * (m + 1) * (m + 1);
        const double cc = c.c1 * c.c2;
        if (c.odd) {
            c.bound_K.chi = c.bound_K.chi_strict = cube * std::pow(c.K, 4 * m);
            c.bound_c.chi = c.bound_c.chi_strict = cube * std::pow(cc, 2 * m);
        } else {
            c.bound_K.chi = cube * std::pow(c.K, 4 * m + 2);
            c.bound_K.chi_strict = cube * std::pow(c.K, 4 * m);
            c.bound_K.tau = std::pow(c.K, 2 * m + 2);
            c.bound_c.chi = c.bound_c.chi_strict = cube * std::pow(cc, 2 * m + 1);
            c.bound_c.tau = std::pow(cc, m + 1);
        }
        auto le = [&](double v, double bound) { return v <= bound * c.input_norm * (1 + tol_) + tol_; };
        c.within_K = le(c.chi_norm, c.bound_K.chi) && (c.odd || le(c.tau_norm, c.bound_K.tau));
        c.within_K_strict = le(c.chi_norm, c.bound_K.chi_strict) && (c.odd || le(c.tau_norm, c.bound_K.tau));
        c.within_c = le(c.chi_norm, c.bound_c.chi) && (c.odd || le(c.tau_norm, c.bound_c.tau));
    }
};

}  // namespace cwb
