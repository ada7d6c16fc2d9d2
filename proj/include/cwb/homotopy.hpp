#pragma once

// Norm constants of the contracting homotopies and the check that
// derivations are inner.

#include "operators.hpp"

namespace cwb {

struct HomotopyConstants {
    int cap = 0;
    std::vector<double> sigma_norms;        // ||sigma_n||, n = 0 .. cap-1
    std::vector<double> sigma_prime_norms;  // ||sigma'_n||, n = 0 .. cap-1
    double c1 = 0.0;  // max of sigma_norms, no max(1, .) guard
    double c2 = 1.0;  // max(1, max of sigma_prime_norms)
    double K = 0.0;
    bool c1_le_K = true;
    bool c2_le_K = true;
};

// Materialises sigma_n and sigma'_n on all of C^{n+1} for n + 1 <= cap.
inline HomotopyConstants homotopy_constants(const Workbench& w, int cap, double tolerance = 1e-9)
{
    HomotopyConstants out;
    out.cap = cap;
    out.K = w.splitting().K;
    for (int n = 0; n + 1 <= cap; ++n) {
        out.sigma_norms.push_back(operator_norm(w, w.sigma(n)));
        out.sigma_prime_norms.push_back(operator_norm(w, w.sigma_prime(n)));
    }
    for (double v : out.sigma_norms) out.c1 = std::max(out.c1, v);
    for (double v : out.sigma_prime_norms) out.c2 = std::max(out.c2, v);
    out.c1_le_K = out.c1 <= out.K * (1 + tolerance);
    out.c2_le_K = out.c2 <= std::max(1.0, out.K) * (1 + tolerance);
    return out;
}

struct DerivationCheck {
    std::size_t cocycle_dim = 0;  // dim ker(delta : C^1 -> C^2)
    bool all_inner = true;        // psi = delta sigma_0 psi for each basis cocycle
    bool all_cyclic = true;
};

// Every Hochschild 1-cocycle is delta sigma_0 of itself, hence inner and so
// cyclic. Checked on an exact basis of the 1-cocycles.
inline DerivationCheck cyclic_derivation_check(const Workbench& w)
{
    DerivationCheck out;
    Nullspace z = nullspace(coordinate_matrix(w, w.delta(1)));
    out.cocycle_dim = z.basis.cols();
    ChainOperator inner = w.delta(0) * w.sigma(0);
    out.all_inner = inner.apply_to(z.basis) == z.basis;
    for (const Vec& col : columns_of(z.basis)) out.all_cyclic = out.all_cyclic && is_cyclic(Cochain(w.algebra_ptr(), 1, col));
    return out;
}

}  // namespace cwb
