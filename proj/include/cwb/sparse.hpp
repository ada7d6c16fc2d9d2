#pragma once

// Exact sparse matrices in compressed-row form, plus the row-source
// multiplication used to materialise composite operators.

#include "tensor.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cwb {

// Largest number of stored entries any materialisation may produce.
inline constexpr std::size_t kMaterializationGuard = 10'000'000;

class GuardExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Entry {
    std::size_t col;
    Scalar value;
};
using SparseRow = std::vector<Entry>;

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

    static SparseMatrix identity(std::size_t n)
    {
        SparseMatrix m;
        m.rows_ = m.cols_ = n;
        m.row_ptr_.resize(n + 1);
        m.col_.resize(n);
        m.val_.assign(n, Scalar(1));
        for (std::size_t i = 0; i < n; ++i) {
            m.row_ptr_[i] = i;
            m.col_[i] = static_cast<std::uint32_t>(i);
        }
        m.row_ptr_[n] = n;
        return m;
    }

    // Builds from per-row entry lists that may contain repeated columns; sums
    // duplicates and drops zeros.
    class Builder;

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return val_.size(); }

    // Row r as (column, value) pairs with strictly increasing columns.
    template <class F>
    void for_row(std::size_t r, F&& f) const
    {
        for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) f(static_cast<std::size_t>(col_[p]), val_[p]);
    }

    void row(std::size_t r, SparseRow& out) const
    {
        out.clear();
        for_row(r, [&](std::size_t c, const Scalar& v) { out.push_back({c, v}); });
    }

    std::size_t row_nnz(std::size_t r) const { return row_ptr_[r + 1] - row_ptr_[r]; }

    Scalar at(std::size_t r, std::size_t c) const
    {
        auto b = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
        auto e = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
        auto it = std::lower_bound(b, e, static_cast<std::uint32_t>(c));
        if (it == e || *it != c) return Scalar();
        return val_[static_cast<std::size_t>(it - col_.begin())];
    }

    bool is_zero() const noexcept { return val_.empty(); }

    Vec apply(const Vec& x) const
    {
        if (x.size() != cols_)
            throw std::invalid_argument("SparseMatrix::apply: vector length " + std::to_string(x.size()) +
                                        ", expected " + std::to_string(cols_));
        Vec y(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for_row(r, [&](std::size_t c, const Scalar& v) {
                if (!x[c].is_zero()) y[r].add_product(v, x[c]);
            });
        return y;
    }

    // Column c as a dense vector.
    Vec column(std::size_t c) const
    {
        Vec out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
        return out;
    }

    SparseMatrix transpose() const
    {
        std::vector<std::size_t> counts(cols_ + 1, 0);
        for (auto c : col_) ++counts[c + 1];
        for (std::size_t c = 0; c < cols_; ++c) counts[c + 1] += counts[c];
        SparseMatrix t;
        t.rows_ = cols_;
        t.cols_ = rows_;
        t.row_ptr_ = counts;
        t.col_.resize(nnz());
        t.val_.resize(nnz());
        std::vector<std::size_t> next(counts.begin(), counts.end() - 1);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
                std::size_t q = next[col_[p]]++;
                t.col_[q] = static_cast<std::uint32_t>(r);
                t.val_[q] = val_[p];
            }
        return t;
    }

    // Operator norm for the sup norm on both sides: the largest row sum of
    // entry moduli. Exact until the final conversion when the row is real.
    double max_abs_row_sum() const
    {
        double best = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            bool real = true;
            for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) real = real && val_[p].is_real();
            double s = 0.0;
            if (real) {
                Rational acc;
                for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += val_[p].re().abs();
                s = acc.to_double();
            } else {
                for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) s += val_[p].modulus();
            }
            best = std::max(best, s);
        }
        return best;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_ptr_ == b.row_ptr_ && a.col_ == b.col_ &&
               a.val_ == b.val_;
    }

    // First stored entry of a nonzero matrix, used in diagnostics.
    std::pair<std::size_t, std::size_t> first_nonzero() const
    {
        for (std::size_t r = 0; r < rows_; ++r)
            if (row_ptr_[r + 1] > row_ptr_[r]) return {r, col_[row_ptr_[r]]};
        return {rows_, cols_};
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> col_;
    Vec val_;
};

class SparseMatrix::Builder {
public:
    Builder(std::size_t rows, std::size_t cols) : m_(rows, cols), acc_(cols), mark_(cols, 0)
    {
        m_.row_ptr_.clear();
        m_.row_ptr_.push_back(0);
    }

    void add(std::size_t col, const Scalar& v)
    {
        if (!mark_[col]) {
            mark_[col] = 1;
            touched_.push_back(col);
            acc_[col] = v;
        } else {
            acc_[col] += v;
        }
    }

    void add_product(std::size_t col, const Scalar& a, const Scalar& b)
    {
        if (!mark_[col]) {
            mark_[col] = 1;
            touched_.push_back(col);
            acc_[col] = a * b;
        } else {
            acc_[col].add_product(a, b);
        }
    }

    void finish_row(std::size_t guard = kMaterializationGuard)
    {
        std::sort(touched_.begin(), touched_.end());
        for (auto c : touched_) {
            if (!acc_[c].is_zero()) {
                m_.col_.push_back(static_cast<std::uint32_t>(c));
                m_.val_.push_back(std::move(acc_[c]));
            }
            acc_[c] = Scalar();
            mark_[c] = 0;
        }
        touched_.clear();
        if (m_.val_.size() > guard)
            throw GuardExceeded("materialization guard: more than " + std::to_string(guard) + " stored entries");
        m_.row_ptr_.push_back(m_.val_.size());
    }

    SparseMatrix finish()
    {
        if (m_.row_ptr_.size() != m_.rows_ + 1) throw std::logic_error("SparseMatrix::Builder: row count mismatch");
        return std::move(m_);
    }

private:
    SparseMatrix m_;
    Vec acc_;
    std::vector<char> mark_;
    std::vector<std::size_t> touched_;
};

// A * B + ... as a linear combination of same-shape matrices.
inline SparseMatrix linear_combination(const std::vector<std::pair<Scalar, const SparseMatrix*>>& terms,
                                       std::size_t rows, std::size_t cols,
                                       std::size_t guard = kMaterializationGuard)
{
    SparseMatrix::Builder b(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (const auto& [coef, m] : terms) {
            if (m->rows() != rows || m->cols() != cols) throw std::invalid_argument("linear_combination: shape mismatch");
            m->for_row(r, [&](std::size_t c, const Scalar& v) { b.add_product(c, coef, v); });
        }
        b.finish_row(guard);
    }
    return b.finish();
}

// Product A * X where A is any row source: an object with rows(), cols() and
// row(r, SparseRow&) that may report repeated columns.
template <class RowSource>
SparseMatrix multiply(const RowSource& a, const SparseMatrix& x, std::size_t guard = kMaterializationGuard)
{
    if (a.cols() != x.rows())
        throw std::invalid_argument("multiply: inner dimensions " + std::to_string(a.cols()) + " and " +
                                    std::to_string(x.rows()));
    SparseMatrix::Builder b(a.rows(), x.cols());
    SparseRow buf;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        a.row(r, buf);
        for (const auto& e : buf) {
            if (e.value.is_zero()) continue;
            x.for_row(e.col, [&](std::size_t c, const Scalar& v) { b.add_product(c, e.value, v); });
        }
        b.finish_row(guard);
    }
    return b.finish();
}

// Dense vector -> sparse column matrix and back.
inline SparseMatrix column_matrix(const std::vector<Vec>& columns, std::size_t rows)
{
    SparseMatrix::Builder b(rows, columns.size());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (!columns[c][r].is_zero()) b.add(c, columns[c][r]);
        b.finish_row();
    }
    return b.finish();
}

inline std::vector<Vec> columns_of(const SparseMatrix& m)
{
    std::vector<Vec> cols(m.cols(), Vec(m.rows()));
    for (std::size_t r = 0; r < m.rows(); ++r) m.for_row(r, [&](std::size_t c, const Scalar& v) { cols[c][r] = v; });
    return cols;
}

}  // namespace cwb
