#pragma once

// Exact sparse Gaussian elimination: ranks, RREF-canonical nullspace bases,
// column-space bases and linear solves.

#include "sparse.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace cwb {

// a - f * b for sorted sparse rows.
inline SparseRow row_axpy(const SparseRow& a, const Scalar& f, const SparseRow& b)
{
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].col < a[i].col) {
            out.push_back({b[j].col, -(f * b[j].value)});
            ++j;
        } else {
            Scalar v = a[i].value - f * b[j].value;
            if (!v.is_zero()) out.push_back({a[i].col, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

// Incremental row echelon form. Only columns below `pivot_limit` may hold
// pivots; rows whose surviving entries all lie at or beyond the limit are kept
// as residuals (used for consistency checks in augmented systems).
class RowEchelon {
public:
    explicit RowEchelon(std::size_t ncols) : RowEchelon(ncols, ncols) {}
    RowEchelon(std::size_t ncols, std::size_t pivot_limit)
        : ncols_(ncols), limit_(pivot_limit), where_(pivot_limit, -1)
    {
    }

    // Returns true when the row raised the rank.
    bool insert(SparseRow row)
    {
        reduce_leading(row);
        if (row.empty()) return false;
        std::size_t lead = row.front().col;
        if (lead >= limit_) {
            residuals_.push_back(std::move(row));
            return false;
        }
        normalize(row);
        where_[lead] = static_cast<long>(pivots_.size());
        pivots_.push_back(std::move(row));
        reduced_ = false;
        return true;
    }

    // True when the row lies in the span of the pivot rows.
    bool in_span(SparseRow row) const
    {
        reduce_leading(row);
        return row.empty();
    }

    std::size_t rank() const noexcept { return pivots_.size(); }
    std::size_t cols() const noexcept { return ncols_; }
    const std::vector<SparseRow>& residuals() const noexcept { return residuals_; }

    std::vector<std::size_t> pivot_columns() const
    {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < limit_; ++c)
            if (where_[c] >= 0) out.push_back(c);
        return out;
    }

    // Brings the pivot rows to reduced form: each pivot column is zero in
    // every other pivot row.
    void make_reduced()
    {
        if (reduced_) return;
        auto cols = pivot_columns();
        for (auto it = cols.rbegin(); it != cols.rend(); ++it) {
            SparseRow& row = pivots_[static_cast<std::size_t>(where_[*it])];
            for (;;) {
                const Entry* hit = nullptr;
                for (std::size_t k = 1; k < row.size(); ++k) {
                    auto c = row[k].col;
                    if (c < limit_ && where_[c] >= 0) {
                        hit = &row[k];
                        break;
                    }
                }
                if (!hit) break;
                Scalar f = hit->value;
                std::size_t c = hit->col;
                row = row_axpy(row, f, pivots_[static_cast<std::size_t>(where_[c])]);
            }
        }
        reduced_ = true;
    }

    const SparseRow& pivot_row(std::size_t col) const { return pivots_[static_cast<std::size_t>(where_[col])]; }
    bool is_pivot(std::size_t col) const { return col < limit_ && where_[col] >= 0; }

private:
    std::size_t ncols_;
    std::size_t limit_;
    std::vector<long> where_;
    std::vector<SparseRow> pivots_;
    std::vector<SparseRow> residuals_;
    bool reduced_ = true;

    void reduce_leading(SparseRow& row) const
    {
        while (!row.empty()) {
            std::size_t c = row.front().col;
            if (c >= limit_ || where_[c] < 0) break;
            Scalar f = row.front().value;
            row = row_axpy(row, f, pivots_[static_cast<std::size_t>(where_[c])]);
        }
    }

    static void normalize(SparseRow& row)
    {
        if (row.front().value == Scalar(1)) return;
        Scalar inv = row.front().value.inverse();
        for (auto& e : row) e.value *= inv;
    }
};

namespace detail {

inline std::vector<std::size_t> rows_by_sparsity(const SparseMatrix& m)
{
    std::vector<std::size_t> order(m.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return m.row_nnz(a) < m.row_nnz(b); });
    return order;
}

inline RowEchelon echelon_of(const SparseMatrix& m)
{
    RowEchelon e(m.cols());
    SparseRow buf;
    for (auto r : rows_by_sparsity(m)) {
        m.row(r, buf);
        if (!buf.empty()) e.insert(buf);
    }
    return e;
}

}  // namespace detail

inline std::size_t rank(const SparseMatrix& m)
{
    // Eliminating along the shorter side keeps the echelon small.
    if (m.cols() > m.rows()) return detail::echelon_of(m.transpose()).rank();
    return detail::echelon_of(m).rank();
}

// Basis of {x : m x = 0} in RREF-canonical form: one vector per free column f,
// with a 1 at f and zeros at the other free columns.
struct Nullspace {
    SparseMatrix basis;                   // cols(m) x nullity
    std::vector<std::size_t> free_cols;   // coordinate positions of the basis
};

inline Nullspace nullspace(const SparseMatrix& m)
{
    RowEchelon e = detail::echelon_of(m);
    e.make_reduced();
    std::vector<std::size_t> free_cols;
    std::vector<long> free_index(m.cols(), -1);
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!e.is_pivot(c)) {
            free_index[c] = static_cast<long>(free_cols.size());
            free_cols.push_back(c);
        }
    SparseMatrix::Builder b(m.cols(), free_cols.size());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (free_index[c] >= 0) {
            b.add(static_cast<std::size_t>(free_index[c]), Scalar(1));
        } else {
            for (std::size_t k = 1; k < e.pivot_row(c).size(); ++k) {
                const auto& ent = e.pivot_row(c)[k];
                b.add(static_cast<std::size_t>(free_index[ent.col]), -ent.value);
            }
        }
        b.finish_row();
    }
    return {b.finish(), std::move(free_cols)};
}

// Indices of columns of m forming a basis of its column space (the pivot
// columns of its RREF).
inline std::vector<std::size_t> independent_columns(const SparseMatrix& m)
{
    RowEchelon e = detail::echelon_of(m);
    return e.pivot_columns();
}

// Solves m X = rhs column by column. Returns nullopt if any column is
// inconsistent; free variables are set to zero.
inline std::optional<SparseMatrix> solve(const SparseMatrix& m, const SparseMatrix& rhs)
{
    if (m.rows() != rhs.rows()) throw std::invalid_argument("solve: row mismatch");
    const std::size_t k = m.cols();
    RowEchelon e(k + rhs.cols(), k);
    SparseRow a, b;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        m.row(r, a);
        rhs.row(r, b);
        for (auto& ent : b) ent.col += k;
        a.insert(a.end(), b.begin(), b.end());
        if (!a.empty()) e.insert(a);
    }
    if (!e.residuals().empty()) return std::nullopt;
    e.make_reduced();
    SparseMatrix::Builder out(k, rhs.cols());
    for (std::size_t c = 0; c < k; ++c) {
        if (e.is_pivot(c))
            for (const auto& ent : e.pivot_row(c))
                if (ent.col >= k) out.add(ent.col - k, ent.value);
        out.finish_row();
    }
    return out.finish();
}

}  // namespace cwb
