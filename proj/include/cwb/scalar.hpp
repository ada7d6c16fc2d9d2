#pragma once

// Gaussian rationals Q(i): the exact scalar field used for every cochain,
// structure constant and operator matrix.

#include "rational.hpp"

#include <cmath>
#include <ostream>
#include <string>
#include <utility>

namespace cwb {

class Scalar {
public:
    Scalar() = default;
    Scalar(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    Scalar(long long re) : re_(re) {}            // NOLINT(google-explicit-constructor)
    Scalar(int re) : re_(re) {}                  // NOLINT(google-explicit-constructor)
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar parse(std::string_view re, std::string_view im = "0")
    {
        return Scalar(Rational::parse(re), Rational::parse(im));
    }

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const noexcept { return im_.is_zero(); }

    // |z|^2, exact.
    Rational abs2() const
    {
        if (im_.is_zero()) return re_ * re_;
        return re_ * re_ + im_ * im_;
    }

    // |z| as a double; exact when the value is real.
    double modulus() const
    {
        if (im_.is_zero()) return std::fabs(re_.to_double());
        return std::sqrt(abs2().to_double());
    }

    Scalar conj() const { return Scalar(re_, -im_); }

    Scalar inverse() const
    {
        if (im_.is_zero()) return Scalar(re_.inverse());
        Rational n = abs2();
        return Scalar(re_ / n, -im_ / n);
    }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    friend Scalar operator+(const Scalar& a, const Scalar& b)
    {
        if (a.im_.is_zero() && b.im_.is_zero()) return Scalar(a.re_ + b.re_);
        return Scalar(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b)
    {
        if (a.im_.is_zero() && b.im_.is_zero()) return Scalar(a.re_ - b.re_);
        return Scalar(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b)
    {
        if (a.im_.is_zero() && b.im_.is_zero()) return Scalar(a.re_ * b.re_);
        return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar& operator+=(const Scalar& o)
    {
        re_ += o.re_;
        if (!o.im_.is_zero()) im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o)
    {
        re_ -= o.re_;
        if (!o.im_.is_zero()) im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    // this += a * b, the inner-loop operation of every kernel.
    void add_product(const Scalar& a, const Scalar& b)
    {
        if (a.im_.is_zero() && b.im_.is_zero()) {
            if (a.re_.is_one()) {
                re_ += b.re_;
            } else {
                re_ += a.re_ * b.re_;
            }
            return;
        }
        *this += a * b;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) noexcept { return a.re_ == b.re_ && a.im_ == b.im_; }

    std::string str() const
    {
        if (im_.is_zero()) return re_.str();
        return re_.str() + (im_.sign() < 0 ? "-" : "+") + im_.abs().str() + "i";
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    Rational re_;
    Rational im_;
};

}  // namespace cwb
