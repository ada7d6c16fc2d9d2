#pragma once

// Finite-dimensional algebras with a distinguished basis, carrying the l1
// norm of that basis, plus the splitting data that makes them biflat.

#include "echelon.hpp"
#include "errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cwb {

// e = sum_i u_i (x) v_i in A (x) A.
using SplittingElement = std::vector<std::pair<Vec, Vec>>;

struct AlgebraChecks {
    bool l1_exact = true;    // false when some constant is non-real (float row sums)
    double max_l1_row = 0.0; // max_{i,j} sum_k |c[i,j,k]|
};

class FiniteAlgebra {
public:
    // Validates associativity, the l1 certificate and, when present, the
    // splitting element. Throws InputError naming the first failing tuple.
    FiniteAlgebra(std::string name, std::vector<std::string> labels, Tensor structure,
                  std::optional<SplittingElement> splitting = std::nullopt,
                  std::optional<SparseMatrix> rho_matrix = std::nullopt, double tolerance = 1e-9)
        : name_(std::move(name)), labels_(std::move(labels)), c_(std::move(structure)),
          splitting_(std::move(splitting)), rho_(std::move(rho_matrix))
    {
        const std::size_t d = c_.dim();
        if (c_.rank() != 3) throw InputError("structure constants must be a rank-3 tensor");
        if (labels_.size() != d)
            throw InputError("expected " + std::to_string(d) + " basis labels, got " + std::to_string(labels_.size()));
        build_products();
        check_associative();
        check_l1(tolerance);
        if (splitting_) check_splitting_element();
        if (rho_ && (rho_->rows() != d || rho_->cols() != d * d))
            throw InputError("rho_matrix must be " + std::to_string(d) + " x " + std::to_string(d * d));
    }

    const std::string& name() const noexcept { return name_; }
    std::size_t dim() const noexcept { return c_.dim(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const Tensor& structure_constants() const noexcept { return c_; }
    const std::optional<SplittingElement>& splitting_element() const noexcept { return splitting_; }
    const std::optional<SparseMatrix>& rho_matrix() const noexcept { return rho_; }
    const AlgebraChecks& checks() const noexcept { return checks_; }

    // Nonzero coefficients of e_i * e_j.
    const std::vector<Entry>& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

    Vec multiply(const Vec& x, const Vec& y) const
    {
        if (x.size() != dim() || y.size() != dim())
            throw std::invalid_argument("multiply: expected vectors of length " + std::to_string(dim()));
        Vec out(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (y[j].is_zero()) continue;
                Scalar xy = x[i] * y[j];
                for (const auto& e : product(i, j)) out[e.col].add_product(xy, e.value);
            }
        }
        return out;
    }

    Vec basis_vector(std::size_t i) const
    {
        Vec v(dim());
        v.at(i) = Scalar(1);
        return v;
    }

private:
    std::string name_;
    std::vector<std::string> labels_;
    Tensor c_;
    std::optional<SplittingElement> splitting_;
    std::optional<SparseMatrix> rho_;
    std::vector<std::vector<Entry>> table_;
    AlgebraChecks checks_;

    void build_products()
    {
        const std::size_t d = dim();
        table_.assign(d * d, {});
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k) {
                    const Scalar& v = c_.entries()[(i * d + j) * d + k];
                    if (!v.is_zero()) table_[i * d + j].push_back({k, v});
                }
    }

    void check_associative() const
    {
        const std::size_t d = dim();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k) {
                    // (e_i e_j) e_k and e_i (e_j e_k) as coefficient vectors over l.
                    Vec left(d), right(d);
                    for (const auto& m : product(i, j))
                        for (const auto& l : product(m.col, k)) left[l.col].add_product(m.value, l.value);
                    for (const auto& m : product(j, k))
                        for (const auto& l : product(i, m.col)) right[l.col].add_product(m.value, l.value);
                    for (std::size_t l = 0; l < d; ++l)
                        if (left[l] != right[l]) {
                            std::ostringstream os;
                            os << "structure constants are not associative at (i,j,k,l) = (" << i << "," << j << ","
                               << k << "," << l << "): " << left[l] << " != " << right[l];
                            throw InputError(os.str());
                        }
                }
    }

    void check_l1(double tolerance)
    {
        const std::size_t d = dim();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                bool real = std::all_of(product(i, j).begin(), product(i, j).end(),
                                        [](const Entry& e) { return e.value.is_real(); });
                double row = 0.0;
                bool fails = false;
                if (real) {
                    Rational s;
                    for (const auto& e : product(i, j)) s += e.value.re().abs();
                    row = s.to_double();
                    fails = s > Rational(1);
                } else {
                    checks_.l1_exact = false;
                    for (const auto& e : product(i, j)) row += e.value.modulus();
                    fails = row > 1.0 + tolerance;
                }
                checks_.max_l1_row = std::max(checks_.max_l1_row, row);
                if (fails)
                    throw InputError("l1 certificate fails: sum_k |c[" + std::to_string(i) + "," + std::to_string(j) +
                                     ",k]| = " + std::to_string(row) + " > 1");
            }
    }

    // coefficient vector (length d^2) of sum_i x_i (x) y_i
    Vec tensor_sum(const std::vector<std::pair<Vec, Vec>>& terms) const
    {
        const std::size_t d = dim();
        Vec out(d * d);
        for (const auto& [x, y] : terms)
            for (std::size_t p = 0; p < d; ++p) {
                if (x[p].is_zero()) continue;
                for (std::size_t q = 0; q < d; ++q)
                    if (!y[q].is_zero()) out[p * d + q].add_product(x[p], y[q]);
            }
        return out;
    }

    void check_splitting_element() const
    {
        const std::size_t d = dim();
        for (const auto& [u, v] : *splitting_)
            if (u.size() != d || v.size() != d)
                throw InputError("splitting element vectors must have length " + std::to_string(d));
        for (std::size_t a = 0; a < d; ++a) {
            Vec ea = basis_vector(a);
            std::vector<std::pair<Vec, Vec>> left, right;
            Vec pi(d);
            for (const auto& [u, v] : *splitting_) {
                left.emplace_back(multiply(ea, u), v);
                right.emplace_back(u, multiply(v, ea));
                Vec uv = multiply(ea, multiply(u, v));
                for (std::size_t k = 0; k < d; ++k) pi[k] += uv[k];
            }
            if (tensor_sum(left) != tensor_sum(right))
                throw InputError("splitting element is not central: a.e != e.a for basis element " + labels_[a]);
            if (pi != ea) throw InputError("splitting element: a.pi(e) != a for basis element " + labels_[a]);
        }
    }
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

// The dual-side data of a biflat algebra: rho : (A (x) A)* -> A* as a d x d^2
// matrix in the dual bases, and its norm K.
struct SplittingData {
    SparseMatrix rho;
    double K = 0.0;
    bool K_exact = true;
    std::string source;  // "splitting_element" or "rho_matrix"
};

namespace detail {

// Matrix of pi* : A* -> (A (x) A)*, rows indexed by (x, y).
inline SparseMatrix pi_star(const FiniteAlgebra& a)
{
    const std::size_t d = a.dim();
    SparseMatrix::Builder b(d * d, d);
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) {
            for (const auto& e : a.product(x, y)) b.add(e.col, e.value);
            b.finish_row();
        }
    return b.finish();
}

// F -> a.F with (a.F)(x (x) y) = F(x (x) y a), and F -> F.a with
// (F.a)(x (x) y) = F(a x (x) y).
inline SparseMatrix left_action_dual2(const FiniteAlgebra& alg, std::size_t a)
{
    const std::size_t d = alg.dim();
    SparseMatrix::Builder b(d * d, d * d);
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) {
            for (const auto& e : alg.product(y, a)) b.add(x * d + e.col, e.value);
            b.finish_row();
        }
    return b.finish();
}

inline SparseMatrix right_action_dual2(const FiniteAlgebra& alg, std::size_t a)
{
    const std::size_t d = alg.dim();
    SparseMatrix::Builder b(d * d, d * d);
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) {
            for (const auto& e : alg.product(a, x)) b.add(e.col * d + y, e.value);
            b.finish_row();
        }
    return b.finish();
}

// f -> a.f with (a.f)(x) = f(x a); f -> f.a with (f.a)(x) = f(a x).
inline SparseMatrix left_action_dual(const FiniteAlgebra& alg, std::size_t a)
{
    const std::size_t d = alg.dim();
    SparseMatrix::Builder b(d, d);
    for (std::size_t x = 0; x < d; ++x) {
        for (const auto& e : alg.product(x, a)) b.add(e.col, e.value);
        b.finish_row();
    }
    return b.finish();
}

inline SparseMatrix right_action_dual(const FiniteAlgebra& alg, std::size_t a)
{
    const std::size_t d = alg.dim();
    SparseMatrix::Builder b(d, d);
    for (std::size_t x = 0; x < d; ++x) {
        for (const auto& e : alg.product(a, x)) b.add(e.col, e.value);
        b.finish_row();
    }
    return b.finish();
}

inline void norm_of(SplittingData& s)
{
    s.K = s.rho.max_abs_row_sum();
    s.K_exact = true;
    for (std::size_t r = 0; r < s.rho.rows(); ++r)
        s.rho.for_row(r, [&](std::size_t, const Scalar& v) { s.K_exact = s.K_exact && v.is_real(); });
}

}  // namespace detail

// rho pi* = id and the two bimodule identities, checked exactly. Throws
// InputError naming the failing basis element.
inline void validate_rho(const FiniteAlgebra& a, const SparseMatrix& rho)
{
    const std::size_t d = a.dim();
    SparseMatrix left = multiply(rho, detail::pi_star(a));
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t k = 0; k < d; ++k) {
            Scalar want = p == k ? Scalar(1) : Scalar(0);
            if (left.at(p, k) != want)
                throw InputError("rho pi* != id at (" + a.labels()[p] + ", " + a.labels()[k] + ")");
        }
    for (std::size_t x = 0; x < d; ++x) {
        SparseMatrix l1 = multiply(rho, detail::left_action_dual2(a, x));
        SparseMatrix l2 = multiply(detail::left_action_dual(a, x), rho);
        if (!(l1 == l2)) throw InputError("rho is not a left module map at basis element " + a.labels()[x]);
        SparseMatrix r1 = multiply(rho, detail::right_action_dual2(a, x));
        SparseMatrix r2 = multiply(detail::right_action_dual(a, x), rho);
        if (!(r1 == r2)) throw InputError("rho is not a right module map at basis element " + a.labels()[x]);
    }
}

// rho(F)(e_p) = sum_i F(e_p u_i (x) v_i).
inline SplittingData rho_from_splitting_element(const FiniteAlgebra& a)
{
    if (!a.splitting_element()) throw PreconditionError("algebra '" + a.name() + "' has no splitting element");
    const std::size_t d = a.dim();
    SparseMatrix::Builder b(d, d * d);
    for (std::size_t p = 0; p < d; ++p) {
        Vec ep = a.basis_vector(p);
        for (const auto& [u, v] : *a.splitting_element()) {
            Vec pu = a.multiply(ep, u);
            for (std::size_t x = 0; x < d; ++x) {
                if (pu[x].is_zero()) continue;
                for (std::size_t y = 0; y < d; ++y)
                    if (!v[y].is_zero()) b.add_product(x * d + y, pu[x], v[y]);
            }
        }
        b.finish_row();
    }
    SplittingData s{b.finish(), 0.0, true, "splitting_element"};
    validate_rho(a, s.rho);
    detail::norm_of(s);
    return s;
}

// Splitting data from whichever source the algebra carries; the splitting
// element is preferred.
inline std::optional<SplittingData> splitting_data(const FiniteAlgebra& a)
{
    if (a.splitting_element()) return rho_from_splitting_element(a);
    if (a.rho_matrix()) {
        SplittingData s{*a.rho_matrix(), 0.0, true, "rho_matrix"};
        validate_rho(a, s.rho);
        detail::norm_of(s);
        return s;
    }
    return std::nullopt;
}

// Basis of the traces Z(A*) = {t : t(ab) = t(ba)}, RREF-canonical.
inline Nullspace traces(const FiniteAlgebra& a)
{
    const std::size_t d = a.dim();
    SparseMatrix::Builder b(d * d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            for (const auto& e : a.product(i, j)) b.add(e.col, e.value);
            for (const auto& e : a.product(j, i)) b.add(e.col, -e.value);
            b.finish_row();
        }
    return nullspace(b.finish());
}

// ---------------------------------------------------------------------------
// The builtin zoo.

namespace builtin {

inline Tensor constants(std::size_t d, const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>>& c)
{
    Tensor t(3, d);
    for (const auto& [i, j, k, v] : c) t.at({i, j, k}) += v;
    return t;
}

inline AlgebraPtr scalar()
{
    SplittingElement e{{Vec{Scalar(1)}, Vec{Scalar(1)}}};
    return std::make_shared<const FiniteAlgebra>("scalar", std::vector<std::string>{"1"}, constants(1, {{0, 0, 0, 1}}),
                                                 e);
}

// Matrix units e_pq at index p*k + q; splitting element sum_i e_i1 (x) e_1i.
inline AlgebraPtr matrix(std::size_t k)
{
    if (k == 0) throw InputError("matrix algebra size must be >= 1");
    const std::size_t d = k * k;
    std::vector<std::string> labels;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> c;
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q) {
            labels.push_back(k < 10 ? "e" + std::to_string(p + 1) + std::to_string(q + 1)
                                    : "e" + std::to_string(p + 1) + "," + std::to_string(q + 1));
            for (std::size_t s = 0; s < k; ++s) c.emplace_back(p * k + q, q * k + s, p * k + s, Scalar(1));
        }
    SplittingElement e;
    for (std::size_t i = 0; i < k; ++i) {
        Vec u(d), v(d);
        u[i * k] = Scalar(1);
        v[i] = Scalar(1);
        e.emplace_back(u, v);
    }
    return std::make_shared<const FiniteAlgebra>("matrix:" + std::to_string(k), labels, constants(d, c), e);
}

// Group algebra of Z/n with point masses d_g; splitting element
// (1/n) sum_g d_g (x) d_{-g}.
inline AlgebraPtr cyclic_group(std::size_t n)
{
    if (n == 0) throw InputError("group order must be >= 1");
    std::vector<std::string> labels;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> c;
    for (std::size_t g = 0; g < n; ++g) {
        labels.push_back("d" + std::to_string(g));
        for (std::size_t h = 0; h < n; ++h) c.emplace_back(g, h, (g + h) % n, Scalar(1));
    }
    SplittingElement e;
    Rational w(1, static_cast<long long>(n));
    for (std::size_t g = 0; g < n; ++g) {
        Vec u(n), v(n);
        u[g] = Scalar(w);
        v[(n - g) % n] = Scalar(1);
        e.emplace_back(u, v);
    }
    return std::make_shared<const FiniteAlgebra>("group:z" + std::to_string(n), labels, constants(n, c), e);
}

// l1 algebra of a finite meet-semilattice given by its table meet[x][y].
// Splitting element sum_x p_x (x) p_x over the minimal idempotents
// p_x = sum_{y <= x} mu(y, x) e_y.
inline AlgebraPtr semilattice(const std::vector<std::vector<std::size_t>>& meet, std::string name = "")
{
    const std::size_t n = meet.size();
    if (n == 0) throw InputError("semilattice must be nonempty");
    for (const auto& row : meet)
        if (row.size() != n) throw InputError("semilattice table must be square");
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (meet[x][y] >= n) throw InputError("semilattice table entry out of range");
            if (meet[x][y] != meet[y][x])
                throw InputError("semilattice table not commutative at (" + std::to_string(x) + "," +
                                 std::to_string(y) + ")");
        }
        if (meet[x][x] != x) throw InputError("semilattice table not idempotent at " + std::to_string(x));
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (meet[meet[x][y]][z] != meet[x][meet[y][z]])
                    throw InputError("semilattice table not associative at (" + std::to_string(x) + "," +
                                     std::to_string(y) + "," + std::to_string(z) + ")");
    auto leq = [&](std::size_t y, std::size_t x) { return meet[y][x] == y; };
    // Moebius function by recursion on interval length.
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    auto below = [&](std::size_t x) {
        std::size_t c = 0;
        for (std::size_t y = 0; y < n; ++y) c += leq(y, x);
        return c;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below(a) < below(b); });
    for (std::size_t y = 0; y < n; ++y) {
        for (auto x : order) {
            if (!leq(y, x)) continue;
            if (x == y) {
                mu[y][x] = Rational(1);
                continue;
            }
            Rational s;
            for (std::size_t z = 0; z < n; ++z)
                if (z != x && leq(y, z) && leq(z, x)) s += mu[y][z];
            mu[y][x] = -s;
        }
    }
    std::vector<std::string> labels;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> c;
    for (std::size_t x = 0; x < n; ++x) {
        labels.push_back("s" + std::to_string(x));
        for (std::size_t y = 0; y < n; ++y) c.emplace_back(x, y, meet[x][y], Scalar(1));
    }
    SplittingElement e;
    for (std::size_t x = 0; x < n; ++x) {
        Vec p(n);
        for (std::size_t y = 0; y < n; ++y)
            if (leq(y, x)) p[y] = Scalar(mu[y][x]);
        e.emplace_back(p, p);
    }
    if (name.empty()) name = "semilattice:" + std::to_string(n);
    return std::make_shared<const FiniteAlgebra>(name, labels, constants(n, c), e);
}

// Chain s0 < s1 < ... < s_{n-1}: meet is min.
inline AlgebraPtr chain(std::size_t n)
{
    std::vector<std::vector<std::size_t>> meet(n, std::vector<std::size_t>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) meet[x][y] = std::min(x, y);
    return semilattice(meet, "semilattice:chain" + std::to_string(n));
}

// Blockwise direct sum; the splitting element is the sum of the blocks'.
inline AlgebraPtr direct_sum(const std::vector<AlgebraPtr>& parts)
{
    if (parts.empty()) throw InputError("direct sum needs at least one summand");
    std::size_t d = 0;
    std::vector<std::size_t> offset;
    std::string name = "sum:";
    for (std::size_t b = 0; b < parts.size(); ++b) {
        offset.push_back(d);
        d += parts[b]->dim();
        name += (b ? "+" : "") + parts[b]->name();
    }
    std::vector<std::string> labels;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> c;
    SplittingElement e;
    bool split = true;
    for (std::size_t b = 0; b < parts.size(); ++b) {
        const auto& a = *parts[b];
        for (const auto& l : a.labels()) labels.push_back(std::to_string(b) + ":" + l);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j)
                for (const auto& ent : a.product(i, j))
                    c.emplace_back(offset[b] + i, offset[b] + j, offset[b] + ent.col, ent.value);
        if (!a.splitting_element()) {
            split = false;
            continue;
        }
        for (const auto& [u, v] : *a.splitting_element()) {
            Vec uu(d), vv(d);
            std::copy(u.begin(), u.end(), uu.begin() + static_cast<std::ptrdiff_t>(offset[b]));
            std::copy(v.begin(), v.end(), vv.begin() + static_cast<std::ptrdiff_t>(offset[b]));
            e.emplace_back(uu, vv);
        }
    }
    std::optional<SplittingElement> se;
    if (split) se = e;
    return std::make_shared<const FiniteAlgebra>(name, labels, constants(d, c), se);
}

namespace detail {

inline std::size_t parse_size(const std::string& s, const std::string& what)
{
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw InputError("expected a positive integer for " + what + ", got '" + s + "'");
    return static_cast<std::size_t>(std::stoull(s));
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

// scalar | matrix:K | group:zN | semilattice:chainN | semilattice:TABLE |
// sum:A+B+...   TABLE lists rows separated by ';' and entries by ','.
inline AlgebraPtr by_name(const std::string& spec)
{
    if (spec == "scalar") return scalar();
    if (spec.rfind("sum:", 0) == 0) {
        std::vector<AlgebraPtr> parts;
        for (const auto& p : detail::split(spec.substr(4), '+')) parts.push_back(by_name(p));
        return direct_sum(parts);
    }
    if (spec.rfind("matrix:", 0) == 0) return matrix(detail::parse_size(spec.substr(7), "matrix size"));
    if (spec.rfind("group:z", 0) == 0) return cyclic_group(detail::parse_size(spec.substr(7), "group order"));
    if (spec.rfind("semilattice:", 0) == 0) {
        std::string rest = spec.substr(12);
        if (rest.rfind("chain", 0) == 0) return chain(detail::parse_size(rest.substr(5), "chain length"));
        std::vector<std::vector<std::size_t>> meet;
        for (const auto& row : detail::split(rest, ';')) {
            meet.emplace_back();
            for (const auto& cell : detail::split(row, ',')) meet.back().push_back(detail::parse_size(cell, "table entry"));
        }
        return semilattice(meet, spec);
    }
    throw InputError("unknown builtin algebra '" + spec + "'");
}

}  // namespace builtin

// The same algebra with basis relabelled: new basis element i is old
// element perm[i].
inline AlgebraPtr permute_basis(const FiniteAlgebra& a, const std::vector<std::size_t>& perm)
{
    const std::size_t d = a.dim();
    if (perm.size() != d) throw std::invalid_argument("permute_basis: permutation length mismatch");
    std::vector<std::size_t> inv(d);
    for (std::size_t i = 0; i < d; ++i) inv[perm[i]] = i;
    Tensor c(3, d);
    std::vector<std::string> labels(d);
    for (std::size_t i = 0; i < d; ++i) {
        labels[i] = a.labels()[perm[i]];
        for (std::size_t j = 0; j < d; ++j)
            for (const auto& e : a.product(perm[i], perm[j])) c.at({i, j, inv[e.col]}) = e.value;
    }
    auto remap = [&](const Vec& v) {
        Vec out(d);
        for (std::size_t i = 0; i < d; ++i) out[i] = v[perm[i]];
        return out;
    };
    std::optional<SplittingElement> e;
    if (a.splitting_element()) {
        e.emplace();
        for (const auto& [u, v] : *a.splitting_element()) e->emplace_back(remap(u), remap(v));
    }
    return std::make_shared<const FiniteAlgebra>(a.name() + ":permuted", labels, std::move(c), e);
}

}  // namespace cwb
