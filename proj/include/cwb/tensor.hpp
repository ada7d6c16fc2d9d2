#pragma once

// Dense multi-index tensors over a d-letter index alphabet, stored row-major
// with the first index most significant.

#include "scalar.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwb {

using Vec = std::vector<Scalar>;

// d^k, throwing if it does not fit in size_t.
inline std::size_t int_pow(std::size_t base, std::size_t exp)
{
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > static_cast<std::size_t>(-1) / base) throw std::overflow_error("int_pow overflow");
        r *= base;
    }
    return r;
}

// Digits of a flat row-major index, most significant first.
inline void decode_index(std::size_t flat, std::size_t dim, std::span<std::size_t> digits)
{
    for (std::size_t k = digits.size(); k-- > 0;) {
        digits[k] = flat % dim;
        flat /= dim;
    }
}

inline std::size_t encode_index(std::span<const std::size_t> digits, std::size_t dim)
{
    std::size_t flat = 0;
    for (auto v : digits) flat = flat * dim + v;
    return flat;
}

// Max |entry| over a coefficient array. The maximiser is chosen by exact
// comparison of squared moduli (lowest flat index wins ties); only the final
// square root is floating point.
struct SupNorm {
    double value = 0.0;
    Rational squared;
    std::size_t argmax = 0;
};

inline SupNorm sup_entry_norm(std::span<const Scalar> entries)
{
    SupNorm out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].is_zero()) continue;
        Rational s = entries[i].abs2();
        if (s > out.squared) {
            out.squared = std::move(s);
            out.argmax = i;
        }
    }
    out.value = std::sqrt(out.squared.to_double());
    return out;
}

class Tensor {
public:
    Tensor() : rank_(0), dim_(1), data_(1) {}

    Tensor(std::size_t rank, std::size_t dim) : rank_(rank), dim_(dim)
    {
        if (dim == 0) throw std::invalid_argument("Tensor: dim must be positive");
        data_.resize(int_pow(dim, rank));
    }

    Tensor(std::size_t rank, std::size_t dim, Vec entries) : rank_(rank), dim_(dim), data_(std::move(entries))
    {
        if (dim == 0) throw std::invalid_argument("Tensor: dim must be positive");
        if (data_.size() != int_pow(dim, rank))
            throw std::invalid_argument("Tensor: expected " + std::to_string(int_pow(dim, rank)) + " entries, got " +
                                        std::to_string(data_.size()));
    }

    std::size_t rank() const noexcept { return rank_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return data_.size(); }

    const Vec& entries() const noexcept { return data_; }
    Vec& entries() noexcept { return data_; }

    std::size_t flat_index(std::span<const std::size_t> idx) const
    {
        if (idx.size() != rank_)
            throw std::out_of_range("Tensor: index has " + std::to_string(idx.size()) + " components, rank is " +
                                    std::to_string(rank_));
        for (std::size_t k = 0; k < idx.size(); ++k)
            if (idx[k] >= dim_)
                throw std::out_of_range("Tensor: index component " + std::to_string(k) + " = " +
                                        std::to_string(idx[k]) + " out of range [0, " + std::to_string(dim_) + ")");
        return encode_index(idx, dim_);
    }

    const Scalar& at(std::span<const std::size_t> idx) const { return data_[flat_index(idx)]; }
    Scalar& at(std::span<const std::size_t> idx) { return data_[flat_index(idx)]; }
    const Scalar& at(std::initializer_list<std::size_t> idx) const
    {
        return at(std::span<const std::size_t>(idx.begin(), idx.size()));
    }
    Scalar& at(std::initializer_list<std::size_t> idx) { return at(std::span<const std::size_t>(idx.begin(), idx.size())); }

    std::vector<std::size_t> index_of(std::size_t flat) const
    {
        std::vector<std::size_t> d(rank_);
        decode_index(flat, dim_, d);
        return d;
    }

    bool is_zero() const
    {
        for (const auto& s : data_)
            if (!s.is_zero()) return false;
        return true;
    }

    SupNorm sup_norm() const { return sup_entry_norm(data_); }

    Tensor& operator+=(const Tensor& o)
    {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Tensor& operator-=(const Tensor& o)
    {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Tensor& operator*=(const Scalar& s)
    {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator*(const Scalar& s, Tensor a) { return a *= s; }

    friend bool operator==(const Tensor& a, const Tensor& b)
    {
        return a.rank_ == b.rank_ && a.dim_ == b.dim_ && a.data_ == b.data_;
    }

private:
    std::size_t rank_;
    std::size_t dim_;
    Vec data_;

    void check_same_shape(const Tensor& o) const
    {
        if (rank_ != o.rank_ || dim_ != o.dim_) throw std::invalid_argument("Tensor: shape mismatch");
    }
};

}  // namespace cwb
