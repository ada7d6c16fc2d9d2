#pragma once

// Cochain spaces C^n(A), C^n_lambda(A) and Z(A*) realised as coefficient
// tensors over basis tuples, with their canonical bases.

#include "algebra.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <string>

namespace cwb {

enum class Complex { D, E, F, G };

inline const char* complex_name(Complex c)
{
    switch (c) {
    case Complex::D: return "D";
    case Complex::E: return "E";
    case Complex::F: return "F";
    case Complex::G: return "G";
    }
    return "?";
}

// A position in one of the four complexes.
struct Node {
    Complex complex = Complex::E;
    int degree = 0;
    friend bool operator==(const Node&, const Node&) = default;
    std::string str() const { return std::string(complex_name(complex)) + "^" + std::to_string(degree); }
};

inline bool is_cyclic_complex(Complex c) { return c == Complex::D || c == Complex::G; }
inline bool has_traces(Complex c) { return c == Complex::D || c == Complex::E; }

// Length of the coefficient vector carrying the node: d^(n+1) in degree
// n >= 0, d for the trace slot, 0 otherwise.
inline std::size_t ambient_size(std::size_t d, Node node)
{
    if (node.degree >= 0) return int_pow(d, static_cast<std::size_t>(node.degree) + 1);
    if (node.degree == -1 && has_traces(node.complex)) return d;
    return 0;
}

// Index of (a_n, a_0, ..., a_{n-1}) given the index of (a_0, ..., a_n).
inline std::size_t rotate_index(std::size_t i, std::size_t d, std::size_t top)
{
    return (i % d) * top + i / d;
}

// A subspace of an ambient coefficient space, given by a basis whose
// restriction to the pivot positions is the identity. Coordinates of a member
// are its entries at the pivots.
struct Space {
    std::size_t ambient = 0;
    SparseMatrix basis;  // ambient x dim
    std::vector<std::size_t> pivots;

    std::size_t dim() const noexcept { return pivots.size(); }

    Vec coordinates(const Vec& v) const
    {
        Vec c(dim());
        for (std::size_t k = 0; k < dim(); ++k) c[k] = v[pivots[k]];
        return c;
    }

    // Rows of an ambient-row matrix restricted to the pivots.
    SparseMatrix coordinates(const SparseMatrix& m) const
    {
        SparseMatrix::Builder b(dim(), m.cols());
        for (auto p : pivots) {
            m.for_row(p, [&](std::size_t c, const Scalar& v) { b.add(c, v); });
            b.finish_row();
        }
        return b.finish();
    }

    bool contains(const Vec& v) const { return basis.apply(coordinates(v)) == v; }
    bool contains(const SparseMatrix& m) const { return multiply(basis, coordinates(m)) == m; }
};

inline Space full_space(std::size_t n)
{
    Space s{n, SparseMatrix::identity(n), {}};
    s.pivots.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.pivots[i] = i;
    return s;
}

inline Space zero_space() { return full_space(0); }

// Basis of C^n_lambda: one vector per rotation orbit, equal to s^k at the k-th
// rotate of the orbit's least tuple (s = (-1)^n). Orbits on which that rule is
// inconsistent carry no cyclic cochain and are skipped.
inline Space cyclic_space(std::size_t d, int degree)
{
    const std::size_t n = static_cast<std::size_t>(degree);
    const std::size_t size = int_pow(d, n + 1);
    const std::size_t top = int_pow(d, n);
    const int s = (n % 2 == 0) ? 1 : -1;
    std::vector<char> seen(size, 0);
    std::vector<std::vector<std::pair<std::size_t, int>>> columns;
    std::vector<std::size_t> pivots;
    std::vector<std::pair<std::size_t, int>> orbit;
    for (std::size_t i = 0; i < size; ++i) {
        if (seen[i]) continue;
        orbit.clear();
        std::size_t j = i;
        int sign = 1;
        bool consistent = true;
        do {
            seen[j] = 1;
            orbit.emplace_back(j, sign);
            sign *= s;
            j = rotate_index(j, d, top);
        } while (j != i);
        consistent = sign == 1;
        if (!consistent) continue;
        pivots.push_back(i);
        columns.push_back(orbit);
    }
    // Each ambient position lies in at most one orbit.
    std::vector<std::pair<std::size_t, int>> where(size, {0, 0});
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (auto [pos, sg] : columns[c]) where[pos] = {c, sg};
    SparseMatrix::Builder b(size, columns.size());
    for (std::size_t r = 0; r < size; ++r) {
        if (where[r].second != 0) b.add(where[r].first, Scalar(where[r].second));
        b.finish_row();
    }
    return {size, b.finish(), std::move(pivots)};
}

inline Space trace_space(const FiniteAlgebra& a)
{
    Nullspace ns = traces(a);
    return {a.dim(), std::move(ns.basis), std::move(ns.free_cols)};
}

// ---------------------------------------------------------------------------

class Cochain {
public:
    // Zero cochain of the given degree (>= -1).
    Cochain(AlgebraPtr alg, int degree) : alg_(std::move(alg)), degree_(degree), coeffs_(rank_for(degree), alg_->dim())
    {
        if (degree < -1) throw std::invalid_argument("Cochain: degree must be >= -1");
    }

    Cochain(AlgebraPtr alg, int degree, Vec entries)
        : alg_(std::move(alg)), degree_(degree), coeffs_(rank_for(degree), alg_->dim(), std::move(entries))
    {
        if (degree < -1) throw std::invalid_argument("Cochain: degree must be >= -1");
        if (degree == -1) check_trace();
    }

    const AlgebraPtr& algebra() const noexcept { return alg_; }
    int degree() const noexcept { return degree_; }
    const Tensor& coeffs() const noexcept { return coeffs_; }
    const Vec& entries() const noexcept { return coeffs_.entries(); }
    Vec& entries() noexcept { return coeffs_.entries(); }
    std::size_t size() const noexcept { return coeffs_.size(); }

    const Scalar& at(std::initializer_list<std::size_t> idx) const { return coeffs_.at(idx); }
    Scalar& at(std::initializer_list<std::size_t> idx) { return coeffs_.at(idx); }

    bool is_zero() const { return coeffs_.is_zero(); }

    // Max |psi(e_i0, ..., e_in)| over basis tuples; for a trace, max |tau(e_i)|.
    double norm() const { return coeffs_.sup_norm().value; }
    SupNorm sup_norm() const { return coeffs_.sup_norm(); }

    Cochain& operator+=(const Cochain& o)
    {
        check_compatible(o);
        coeffs_ += o.coeffs_;
        return *this;
    }
    Cochain& operator-=(const Cochain& o)
    {
        check_compatible(o);
        coeffs_ -= o.coeffs_;
        return *this;
    }
    Cochain& operator*=(const Scalar& s)
    {
        coeffs_ *= s;
        return *this;
    }
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(const Scalar& s, Cochain a) { return a *= s; }
    friend bool operator==(const Cochain& a, const Cochain& b)
    {
        return a.alg_ == b.alg_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

private:
    AlgebraPtr alg_;
    int degree_;
    Tensor coeffs_;

    static std::size_t rank_for(int degree) { return degree >= 0 ? static_cast<std::size_t>(degree) + 1 : 1; }

    void check_compatible(const Cochain& o) const
    {
        if (alg_ != o.alg_ || degree_ != o.degree_) throw std::invalid_argument("Cochain: incompatible operands");
    }

    void check_trace() const
    {
        const auto& a = *alg_;
        const Vec& t = entries();
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) {
                Scalar v;
                for (const auto& e : a.product(i, j)) v.add_product(e.value, t[e.col]);
                for (const auto& e : a.product(j, i)) v.add_product(-e.value, t[e.col]);
                if (!v.is_zero())
                    throw InputError("degree -1 cochain is not a trace: tau(ab) != tau(ba) at (" + a.labels()[i] + ", " +
                                     a.labels()[j] + ")");
            }
    }
};

inline double cochain_norm(const Cochain& c) { return c.norm(); }

// t psi = psi, checked entrywise.
inline bool is_cyclic(const Cochain& c)
{
    if (c.degree() < 0) throw std::invalid_argument("is_cyclic: degree must be >= 0");
    const std::size_t d = c.algebra()->dim();
    const std::size_t n = static_cast<std::size_t>(c.degree());
    const std::size_t top = int_pow(d, n);
    const Vec& v = c.entries();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Scalar& r = v[rotate_index(i, d, top)];
        if (n % 2 == 0 ? r != v[i] : r != -v[i]) return false;
    }
    return true;
}

// psi^(n)(a_0, ..., a_n) = tau(a_0 a_1 ... a_n), products taken left to right.
inline Cochain trace_power(const AlgebraPtr& alg, const Vec& tau, int n)
{
    if (n < 0) throw std::invalid_argument("trace_power: n must be >= 0");
    const auto& a = *alg;
    const std::size_t d = a.dim();
    if (tau.size() != d) throw std::invalid_argument("trace_power: functional has wrong length");
    Cochain out(alg, n);
    Vec& v = out.entries();
    const std::size_t depth = static_cast<std::size_t>(n) + 1;
    // Depth-first over tuples carrying the running product as a sparse vector.
    std::vector<SparseRow> partial(depth);
    std::vector<Vec> acc(depth, Vec(d));
    auto step = [&](auto&& self, std::size_t level, std::size_t prefix) -> void {
        for (std::size_t i = 0; i < d; ++i) {
            SparseRow& cur = partial[level];
            cur.clear();
            if (level == 0) {
                cur.push_back({i, Scalar(1)});
            } else {
                Vec& tmp = acc[level];
                std::vector<std::size_t> touched;
                for (const auto& p : partial[level - 1])
                    for (const auto& e : a.product(p.col, i)) {
                        if (tmp[e.col].is_zero()) touched.push_back(e.col);
                        tmp[e.col].add_product(p.value, e.value);
                    }
                std::sort(touched.begin(), touched.end());
                touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
                for (auto k : touched) {
                    if (!tmp[k].is_zero()) cur.push_back({k, tmp[k]});
                    tmp[k] = Scalar();
                }
            }
            std::size_t idx = prefix * d + i;
            if (level + 1 == depth) {
                Scalar s;
                for (const auto& e : cur) s.add_product(e.value, tau[e.col]);
                v[idx] = std::move(s);
            } else if (!cur.empty()) {
                self(self, level + 1, idx);
            }
        }
    };
    step(step, 0, 0);
    return out;
}

inline Cochain trace_power(const Cochain& tau, int n)
{
    if (tau.degree() != -1 && tau.degree() != 0)
        throw std::invalid_argument("trace_power: expects a functional (degree -1 or 0)");
    return trace_power(tau.algebra(), tau.entries(), n);
}

// Uniform integer in [-height, height] by rejection on raw 64-bit draws, so
// the sequence depends only on the mt19937_64 output stream.
inline long long bounded_integer(std::mt19937_64& rng, long long height)
{
    if (height <= 0) return 0;
    const std::uint64_t range = static_cast<std::uint64_t>(2 * height + 1);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do x = rng(); while (x >= limit);
    return static_cast<long long>(x % range) - height;
}

inline Cochain random_cochain(const AlgebraPtr& alg, int degree, std::uint64_t seed, long long height)
{
    if (degree < 0) throw std::invalid_argument("random_cochain: degree must be >= 0");
    Cochain c(alg, degree);
    std::mt19937_64 rng(seed);
    for (auto& v : c.entries()) v = Scalar(bounded_integer(rng, height));
    return c;
}

}  // namespace cwb
