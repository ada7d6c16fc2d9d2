#pragma once

// Chain-level operators between the complexes D, E, F, G as composable
// expression trees over row-generating kernels.

#include "cochain.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace cwb {

// A linear map between ambient coefficient spaces that can produce any row of
// its matrix on demand. Rows may list a column more than once.
class Kernel {
public:
    virtual ~Kernel() = default;
    virtual std::size_t rows() const = 0;
    virtual std::size_t cols() const = 0;
    virtual void row(std::size_t r, SparseRow& out) const = 0;
};

namespace kernels {

class Zero final : public Kernel {
public:
    Zero(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
    std::size_t rows() const override { return rows_; }
    std::size_t cols() const override { return cols_; }
    void row(std::size_t, SparseRow& out) const override { out.clear(); }

private:
    std::size_t rows_, cols_;
};

class Identity final : public Kernel {
public:
    explicit Identity(std::size_t n) : n_(n) {}
    std::size_t rows() const override { return n_; }
    std::size_t cols() const override { return n_; }
    void row(std::size_t r, SparseRow& out) const override
    {
        out.clear();
        out.push_back({r, Scalar(1)});
    }

private:
    std::size_t n_;
};

class Matrix final : public Kernel {
public:
    explicit Matrix(SparseMatrix m) : m_(std::move(m)) {}
    std::size_t rows() const override { return m_.rows(); }
    std::size_t cols() const override { return m_.cols(); }
    void row(std::size_t r, SparseRow& out) const override { m_.row(r, out); }

private:
    SparseMatrix m_;
};

// delta (wrap = true) or delta' (wrap = false) from C^n to C^{n+1}.
class Coboundary final : public Kernel {
public:
    Coboundary(AlgebraPtr alg, int n, bool wrap)
        : alg_(std::move(alg)), d_(alg_->dim()), n_(static_cast<std::size_t>(n)), wrap_(wrap),
          rows_(int_pow(d_, n_ + 2)), cols_(int_pow(d_, n_ + 1))
    {
    }
    std::size_t rows() const override { return rows_; }
    std::size_t cols() const override { return cols_; }

    void row(std::size_t r, SparseRow& out) const override
    {
        out.clear();
        thread_local std::vector<std::size_t> a;
        a.resize(n_ + 2);
        decode_index(r, d_, a);
        // Contracting positions j, j+1: digits before j stay, then the product
        // letter, then the tail.
        for (std::size_t j = 0; j <= n_; ++j) {
            const auto& prod = alg_->product(a[j], a[j + 1]);
            if (prod.empty()) continue;
            std::size_t head = 0;
            for (std::size_t q = 0; q < j; ++q) head = head * d_ + a[q];
            std::size_t tail = 0, scale = 1;
            for (std::size_t q = n_ + 1; q > j + 1; --q) {
                tail += a[q] * scale;
                scale *= d_;
            }
            const bool negative = j % 2 == 1;
            for (const auto& e : prod)
                out.push_back({(head * d_ + e.col) * scale + tail, negative ? -e.value : e.value});
        }
        if (wrap_) {
            const auto& prod = alg_->product(a[n_ + 1], a[0]);
            std::size_t tail = 0;
            for (std::size_t q = 1; q <= n_; ++q) tail = tail * d_ + a[q];
            const std::size_t scale = int_pow(d_, n_);
            const bool negative = (n_ + 1) % 2 == 1;
            for (const auto& e : prod) out.push_back({e.col * scale + tail, negative ? -e.value : e.value});
        }
    }

private:
    AlgebraPtr alg_;
    std::size_t d_, n_;
    bool wrap_;
    std::size_t rows_, cols_;
};

// sum_k c_k t^k on C^n, using t^k psi(a) = s^k psi(rot^k a) with s = (-1)^n.
class CyclicPolynomial final : public Kernel {
public:
    CyclicPolynomial(std::size_t d, int n, Vec coeffs)
        : d_(d), n_(static_cast<std::size_t>(n)), size_(int_pow(d, n_ + 1)), top_(int_pow(d, n_)),
          coeffs_(std::move(coeffs))
    {
        const bool odd = n_ % 2 == 1;
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (odd && k % 2 == 1) coeffs_[k] = -coeffs_[k];
    }
    std::size_t rows() const override { return size_; }
    std::size_t cols() const override { return size_; }
    void row(std::size_t r, SparseRow& out) const override
    {
        out.clear();
        std::size_t idx = r;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (!coeffs_[k].is_zero()) out.push_back({idx, coeffs_[k]});
            idx = rotate_index(idx, d_, top_);
        }
    }

private:
    std::size_t d_, n_, size_, top_;
    Vec coeffs_;
};

// sigma_n : C^{n+1} -> C^n, sigma psi(a_0, ..., a_n) =
// sum_{x,y} rho[a_0, (x,y)] psi(x, y, a_1, ..., a_n).
class Homotopy final : public Kernel {
public:
    Homotopy(std::size_t d, const SparseMatrix& rho, int n)
        : d_(d), rho_(rho), rows_(int_pow(d, static_cast<std::size_t>(n) + 1)),
          cols_(int_pow(d, static_cast<std::size_t>(n) + 2)), tail_(int_pow(d, static_cast<std::size_t>(n)))
    {
    }
    std::size_t rows() const override { return rows_; }
    std::size_t cols() const override { return cols_; }
    void row(std::size_t r, SparseRow& out) const override
    {
        out.clear();
        const std::size_t a0 = r / tail_;
        const std::size_t rest = r % tail_;
        rho_.for_row(a0, [&](std::size_t xy, const Scalar& v) { out.push_back({xy * tail_ + rest, v}); });
    }

private:
    std::size_t d_;
    const SparseMatrix& rho_;
    std::size_t rows_, cols_, tail_;
};

}  // namespace kernels

// ---------------------------------------------------------------------------

class ChainOperator {
public:
    ChainOperator(std::string name, Node source, Node target, std::shared_ptr<const Kernel> kernel)
        : name_(std::move(name)), source_(source), target_(target), impl_(std::make_shared<Impl>())
    {
        impl_->kind = Kind::Leaf;
        impl_->kernel = std::move(kernel);
    }

    const std::string& name() const noexcept { return name_; }
    Node source() const noexcept { return source_; }
    Node target() const noexcept { return target_; }

    ChainOperator named(std::string n) const
    {
        ChainOperator c = *this;
        c.name_ = std::move(n);
        return c;
    }

    // Highest degree of any node the expression passes through.
    int max_degree() const
    {
        int m = std::max(source_.degree, target_.degree);
        for (const auto& [coef, op] : impl_->terms) m = std::max(m, op.max_degree());
        return m;
    }

    Vec apply(const Vec& x) const
    {
        switch (impl_->kind) {
        case Kind::Leaf: {
            const Kernel& k = *impl_->kernel;
            if (x.size() != k.cols())
                throw std::invalid_argument(name_ + ": input length " + std::to_string(x.size()) + ", expected " +
                                            std::to_string(k.cols()));
            Vec y(k.rows());
            SparseRow buf;
            for (std::size_t r = 0; r < k.rows(); ++r) {
                k.row(r, buf);
                for (const auto& e : buf)
                    if (!x[e.col].is_zero()) y[r].add_product(e.value, x[e.col]);
            }
            return y;
        }
        case Kind::Compose: {
            Vec v = x;
            for (auto it = impl_->terms.rbegin(); it != impl_->terms.rend(); ++it) v = it->second.apply(v);
            return v;
        }
        case Kind::Sum: {
            Vec y;
            for (const auto& [coef, op] : impl_->terms) {
                Vec t = op.apply(x);
                if (y.empty()) y.resize(t.size());
                for (std::size_t i = 0; i < t.size(); ++i)
                    if (!t[i].is_zero()) y[i].add_product(coef, t[i]);
            }
            return y;
        }
        }
        return {};
    }

    Cochain apply(const Cochain& c) const
    {
        if (c.degree() != source_.degree)
            throw std::invalid_argument(name_ + ": cochain of degree " + std::to_string(c.degree()) +
                                        " given, source is " + source_.str());
        if (target_.degree < -1 || (target_.degree == -1 && !has_traces(target_.complex)))
            throw std::invalid_argument(name_ + ": target " + target_.str() + " is the zero space");
        Vec y = apply(c.entries());
        if (target_.degree == -1) return Cochain(c.algebra(), -1, std::move(y));
        return Cochain(c.algebra(), target_.degree, std::move(y));
    }

    // this * X, for X with one row per source ambient coordinate.
    SparseMatrix apply_to(const SparseMatrix& x, std::size_t guard = kMaterializationGuard) const
    {
        switch (impl_->kind) {
        case Kind::Leaf: return multiply(*impl_->kernel, x, guard);
        case Kind::Compose: {
            SparseMatrix v = impl_->terms.back().second.apply_to(x, guard);
            for (auto it = impl_->terms.rbegin() + 1; it != impl_->terms.rend(); ++it) v = it->second.apply_to(v, guard);
            return v;
        }
        case Kind::Sum: {
            std::vector<SparseMatrix> parts;
            parts.reserve(impl_->terms.size());
            for (const auto& [coef, op] : impl_->terms) parts.push_back(op.apply_to(x, guard));
            std::vector<std::pair<Scalar, const SparseMatrix*>> lc;
            for (std::size_t i = 0; i < parts.size(); ++i) lc.emplace_back(impl_->terms[i].first, &parts[i]);
            return linear_combination(lc, parts.front().rows(), x.cols(), guard);
        }
        }
        return {};
    }

    // a * b is the composite "a after b".
    friend ChainOperator operator*(const ChainOperator& a, const ChainOperator& b)
    {
        if (!(a.source_ == b.target_))
            throw std::logic_error("cannot compose " + a.name_ + " (" + a.source_.str() + " -> " + a.target_.str() +
                                   ") after " + b.name_ + " (" + b.source_.str() + " -> " + b.target_.str() + ")");
        ChainOperator c(a.name_ + " " + b.name_, b.source_, a.target_, Kind::Compose);
        c.append_factors(a);
        c.append_factors(b);
        return c;
    }

    friend ChainOperator operator*(const Scalar& s, const ChainOperator& a)
    {
        ChainOperator c(a.name_, a.source_, a.target_, Kind::Sum);
        c.impl_->terms.emplace_back(s, a);
        return c;
    }

    friend ChainOperator operator+(const ChainOperator& a, const ChainOperator& b) { return combine(a, b, Scalar(1)); }
    friend ChainOperator operator-(const ChainOperator& a, const ChainOperator& b) { return combine(a, b, Scalar(-1)); }
    ChainOperator operator-() const { return (Scalar(-1) * *this).named("-" + name_); }

private:
    enum class Kind { Leaf, Compose, Sum };
    struct Impl {
        Kind kind = Kind::Leaf;
        std::shared_ptr<const Kernel> kernel;
        // Compose: factors left to right (coefficients unused); Sum: terms.
        std::vector<std::pair<Scalar, ChainOperator>> terms;
    };

    std::string name_;
    Node source_, target_;
    std::shared_ptr<Impl> impl_;

    ChainOperator(std::string name, Node source, Node target, Kind kind)
        : name_(std::move(name)), source_(source), target_(target), impl_(std::make_shared<Impl>())
    {
        impl_->kind = kind;
    }

    void append_factors(const ChainOperator& f)
    {
        if (f.impl_->kind == Kind::Compose) {
            impl_->terms.insert(impl_->terms.end(), f.impl_->terms.begin(), f.impl_->terms.end());
        } else {
            impl_->terms.emplace_back(Scalar(1), f);
        }
    }

    static ChainOperator combine(const ChainOperator& a, const ChainOperator& b, const Scalar& sb)
    {
        if (!(a.source_ == b.source_) || !(a.target_ == b.target_))
            throw std::logic_error("cannot add " + a.name_ + " (" + a.source_.str() + " -> " + a.target_.str() +
                                   ") and " + b.name_ + " (" + b.source_.str() + " -> " + b.target_.str() + ")");
        ChainOperator c(a.name_ + (sb == Scalar(1) ? " + " : " - ") + b.name_, a.source_, a.target_, Kind::Sum);
        auto add = [&](const ChainOperator& op, const Scalar& s) {
            if (op.impl_->kind == Kind::Sum) {
                for (const auto& [coef, t] : op.impl_->terms) c.impl_->terms.emplace_back(s * coef, t);
            } else {
                c.impl_->terms.emplace_back(s, op);
            }
        };
        add(a, Scalar(1));
        add(b, sb);
        return c;
    }
};

// ---------------------------------------------------------------------------

// An algebra together with its (optional) splitting data and the cached bases
// of every complex node. All operator factories live here.
class Workbench {
public:
    explicit Workbench(AlgebraPtr alg) : alg_(std::move(alg)), split_(splitting_data(*alg_)) {}
    Workbench(AlgebraPtr alg, std::optional<SplittingData> split) : alg_(std::move(alg)), split_(std::move(split)) {}

    Workbench(const Workbench&) = delete;
    Workbench& operator=(const Workbench&) = delete;

    const AlgebraPtr& algebra_ptr() const noexcept { return alg_; }
    const FiniteAlgebra& algebra() const noexcept { return *alg_; }
    std::size_t dim() const noexcept { return alg_->dim(); }

    bool has_splitting() const noexcept { return split_.has_value(); }
    const SplittingData& splitting() const
    {
        if (!split_) throw PreconditionError("algebra '" + alg_->name() + "' has no splitting data");
        return *split_;
    }

    std::size_t ambient(Node n) const { return ambient_size(dim(), n); }

    // Canonical basis of the node's space, built once.
    const Space& space(Node n) const
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(static_cast<int>(n.complex), n.degree);
        auto it = spaces_.find(key);
        if (it != spaces_.end()) return *it->second;
        auto s = std::make_unique<Space>(build_space(n));
        const Space& ref = *s;
        spaces_.emplace(key, std::move(s));
        return ref;
    }

    // --- primitives -------------------------------------------------------

    // The differential of complex c leaving degree n: delta on D and E,
    // delta' on F, and on G the rescaled delta'' = ((n+1)/(n+2)) delta, which
    // is what makes the averaging map N : F -> G a chain map. From degree -1
    // it is the inclusion of the traces on D and E.
    ChainOperator d(Complex c, int n) const
    {
        Node s{c, n}, t{c, n + 1};
        const char* nm = c == Complex::F ? "delta'" : (c == Complex::G ? "delta''" : "delta");
        std::string name = std::string(nm) + "_" + std::to_string(n) + "[" + complex_name(c) + "]";
        if (n >= 0) {
            ChainOperator k(name, s, t, std::make_shared<kernels::Coboundary>(alg_, n, c != Complex::F));
            if (c != Complex::G) return k;
            return (Scalar(Rational(n + 1LL, n + 2LL)) * k).named(name);
        }
        if (n == -1 && has_traces(c)) return {name, s, t, std::make_shared<kernels::Identity>(dim())};
        return zero(name, s, t);
    }
    ChainOperator delta(int n) const { return d(Complex::E, n); }
    ChainOperator delta_prime(int n) const { return d(Complex::F, n); }

    // Signed cyclic shift on C^n, viewed in complex c.
    ChainOperator t(int n, Complex c = Complex::E) const
    {
        Node s{c, n};
        if (n < 0) return zero("t_" + std::to_string(n), s, s);
        Vec coef(static_cast<std::size_t>(n) + 1);
        coef[1 % coef.size()] += Scalar(1);
        return {"t_" + std::to_string(n), s, s, std::make_shared<kernels::CyclicPolynomial>(dim(), n, coef)};
    }

    // N = (n+1)^{-1} sum_k t^k : F^n -> G^n.
    ChainOperator N(int n) const { return average("N", {Complex::F, n}, {Complex::G, n}); }

    // P = N : E^n -> D^n, the identity on the traces in degree -1.
    ChainOperator P(int n) const
    {
        if (n == -1) return {"P_-1", {Complex::E, -1}, {Complex::D, -1}, std::make_shared<kernels::Identity>(dim())};
        return average("P", {Complex::E, n}, {Complex::D, n});
    }

    // M = (id - t)/2 : E^n -> F^n.
    ChainOperator M(int n) const
    {
        Node s{Complex::E, n}, t{Complex::F, n};
        std::string name = "M_" + std::to_string(n);
        if (n < 0) return zero(name, s, t);
        Vec coef(static_cast<std::size_t>(n) + 1);
        coef[0] += Scalar(Rational(1, 2));
        coef[1 % coef.size()] += Scalar(Rational(-1, 2));
        return {name, s, t, std::make_shared<kernels::CyclicPolynomial>(dim(), n, coef)};
    }

    // h = -(2/(n+1)) sum_{k=1}^n k t^k : F^n -> E^n.
    ChainOperator h(int n) const
    {
        Node s{Complex::F, n}, t{Complex::E, n};
        std::string name = "h_" + std::to_string(n);
        if (n < 0) return zero(name, s, t);
        Vec coef(static_cast<std::size_t>(n) + 1);
        for (int k = 1; k <= n; ++k) coef[static_cast<std::size_t>(k)] = Scalar(Rational(-2LL * k, n + 1LL));
        return {name, s, t, std::make_shared<kernels::CyclicPolynomial>(dim(), n, coef)};
    }

    ChainOperator j(int n) const { return inclusion("j", {Complex::G, n}, {Complex::F, n}); }
    ChainOperator iota(int n) const { return inclusion("iota", {Complex::D, n}, {Complex::E, n}); }
    ChainOperator I(int n) const { return iota(n).named("I_" + std::to_string(n)); }

    // sigma_n : E^{n+1} -> E^n; sigma_{-1} = id - sigma_0 delta_0 : C^0 -> Z(A*).
    ChainOperator sigma(int n) const
    {
        Node s{Complex::E, n + 1}, t{Complex::E, n};
        std::string name = "sigma_" + std::to_string(n);
        if (n >= 0) return {name, s, t, std::make_shared<kernels::Homotopy>(dim(), splitting().rho, n)};
        if (n == -1) {
            std::lock_guard<std::mutex> lock(mu_);
            if (!sigma_minus1_) {
                ChainOperator s0 = sigma(0);
                ChainOperator d0 = delta(0);
                SparseMatrix id = SparseMatrix::identity(dim());
                SparseMatrix sd = s0.apply_to(d0.apply_to(id));
                SparseMatrix m = linear_combination({{Scalar(1), &id}, {Scalar(-1), &sd}}, dim(), dim());
                sigma_minus1_ = std::make_shared<kernels::Matrix>(std::move(m));
            }
            return {name, s, t, sigma_minus1_};
        }
        return zero(name, s, t);
    }

    // sigma'_n : F^{n+1} -> F^n, same formula as sigma in degrees >= 0 and
    // zero below.
    ChainOperator sigma_prime(int n) const
    {
        Node s{Complex::F, n + 1}, t{Complex::F, n};
        std::string name = "sigma'_" + std::to_string(n);
        if (n >= 0) return {name, s, t, std::make_shared<kernels::Homotopy>(dim(), splitting().rho, n)};
        return zero(name, s, t);
    }

    // --- derived maps -------------------------------------------------------

    // S^nat = delta h delta' j : G^n -> E^{n+2}.
    ChainOperator S_natural(int n) const
    {
        return (delta(n + 1) * h(n + 1) * delta_prime(n) * j(n)).named("S^nat_" + std::to_string(n));
    }
    // S~ = P S^nat : G^n -> D^{n+2}.
    ChainOperator S(int n) const { return (P(n + 2) * S_natural(n)).named("S~_" + std::to_string(n)); }

    // R~ = N sigma' M sigma iota : D^{n+2} -> G^n.
    ChainOperator R(int n) const
    {
        return (N(n) * sigma_prime(n) * M(n + 1) * sigma(n + 1) * iota(n + 2)).named("R~_" + std::to_string(n));
    }

    // T^nat = delta h sigma' M sigma iota - sigma iota : D^{n+2} -> E^{n+1}.
    ChainOperator T_natural(int n) const
    {
        ChainOperator a = delta(n) * h(n) * sigma_prime(n) * M(n + 1) * sigma(n + 1) * iota(n + 2);
        ChainOperator b = sigma(n + 1) * iota(n + 2);
        return (a - b).named("T^nat_" + std::to_string(n));
    }
    // T = P T^nat : D^{n+2} -> D^{n+1}.
    ChainOperator T(int n) const { return (P(n + 1) * T_natural(n)).named("T_" + std::to_string(n)); }

    // B~ = N sigma' M : E^{n+1} -> G^n.
    ChainOperator B(int n) const { return (N(n) * sigma_prime(n) * M(n + 1)).named("B~_" + std::to_string(n)); }

    // Y = h delta' j : G^n -> E^{n+1}.
    ChainOperator Y(int n) const { return (h(n + 1) * delta_prime(n) * j(n)).named("Y_" + std::to_string(n)); }

    ChainOperator identity(Node n) const
    {
        return {"id[" + n.str() + "]", n, n, std::make_shared<kernels::Identity>(ambient(n))};
    }

    ChainOperator zero(std::string name, Node s, Node t) const
    {
        return {std::move(name), s, t, std::make_shared<kernels::Zero>(ambient(t), ambient(s))};
    }

private:
    AlgebraPtr alg_;
    std::optional<SplittingData> split_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<Space>> spaces_;
    mutable std::shared_ptr<const Kernel> sigma_minus1_;

    Space build_space(Node n) const
    {
        if (n.degree >= 0) {
            if (is_cyclic_complex(n.complex)) return cyclic_space(dim(), n.degree);
            return full_space(ambient(n));
        }
        if (n.degree == -1 && has_traces(n.complex)) return trace_space(*alg_);
        return zero_space();
    }

    ChainOperator average(const char* nm, Node s, Node t) const
    {
        std::string name = std::string(nm) + "_" + std::to_string(s.degree);
        if (s.degree < 0) return zero(name, s, t);
        const int n = s.degree;
        Vec coef(static_cast<std::size_t>(n) + 1, Scalar(Rational(1, n + 1LL)));
        return {name, s, t, std::make_shared<kernels::CyclicPolynomial>(dim(), n, coef)};
    }

    ChainOperator inclusion(const char* nm, Node s, Node t) const
    {
        return {std::string(nm) + "_" + std::to_string(s.degree), s, t,
                std::make_shared<kernels::Identity>(ambient(s))};
    }
};

// Matrix of op in the canonical bases of its source and target spaces.
inline SparseMatrix coordinate_matrix(const Workbench& w, const ChainOperator& op,
                                      std::size_t guard = kMaterializationGuard)
{
    return w.space(op.target()).coordinates(op.apply_to(w.space(op.source()).basis, guard));
}

// Operator norm for the sup norms on source and target spaces. On full and
// cyclic spaces a member's sup norm equals that of its coordinates, so this is
// the largest absolute row sum of op applied to the source basis.
inline double operator_norm(const Workbench& w, const ChainOperator& op, std::size_t guard = kMaterializationGuard)
{
    return op.apply_to(w.space(op.source()).basis, guard).max_abs_row_sum();
}

}  // namespace cwb
