#pragma once

// Exact rational numbers. Values whose numerator and denominator fit in a
// signed 64-bit word are stored inline; anything larger lives in a GMP mpq.
// The representation is canonical: a value is stored in GMP form only when it
// does not fit inline, so equality can compare representations directly.

#include <gmp.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace cwb {

class Rational {
public:
    Rational() noexcept : num_(0), den_(1) {}
    Rational(long long n) noexcept : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) noexcept : num_(n), den_(1) {}        // NOLINT(google-explicit-constructor)

    Rational(long long n, long long d) : num_(0), den_(1)
    {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        assign_i128(static_cast<i128>(n) * (d < 0 ? -1 : 1), d < 0 ? -static_cast<i128>(d) : d);
    }

    Rational(const Rational& o) : num_(o.num_), den_(o.den_)
    {
        if (o.is_big()) {
            big_ = new_mpq();
            mpq_set(big_, o.big_);
        }
    }

    Rational(Rational&& o) noexcept : num_(o.num_), den_(o.den_)
    {
        o.den_ = 1;
        o.num_ = 0;
    }

    Rational& operator=(const Rational& o)
    {
        if (this == &o) return *this;
        if (o.is_big()) {
            if (!is_big()) {
                big_ = new_mpq();
                den_ = 0;
            }
            mpq_set(big_, o.big_);
        } else {
            release();
            num_ = o.num_;
            den_ = o.den_;
        }
        return *this;
    }

    Rational& operator=(Rational&& o) noexcept
    {
        if (this == &o) return *this;
        release();
        num_ = o.num_;
        den_ = o.den_;
        o.den_ = 1;
        o.num_ = 0;
        return *this;
    }

    ~Rational() { release(); }

    // Accepts "p", "-p", "p/q" with arbitrarily long decimal integers.
    static Rational parse(std::string_view text)
    {
        std::string s(text);
        auto trim = [](std::string& x) {
            while (!x.empty() && (x.back() == ' ' || x.back() == '\t')) x.pop_back();
            std::size_t i = 0;
            while (i < x.size() && (x[i] == ' ' || x[i] == '\t')) ++i;
            x.erase(0, i);
        };
        trim(s);
        if (s.empty()) throw std::invalid_argument("Rational: empty string");
        auto slash = s.find('/');
        auto check_int = [&](const std::string& part) {
            std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
            if (i >= part.size()) throw std::invalid_argument("Rational: malformed '" + s + "'");
            for (; i < part.size(); ++i)
                if (part[i] < '0' || part[i] > '9') throw std::invalid_argument("Rational: malformed '" + s + "'");
        };
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        check_int(num);
        check_int(den);
        if (num[0] == '+') num.erase(0, 1);
        if (den[0] == '+') den.erase(0, 1);
        mpq_t q;
        mpq_init(q);
        mpz_set_str(mpq_numref(q), num.c_str(), 10);
        mpz_set_str(mpq_denref(q), den.c_str(), 10);
        if (mpz_sgn(mpq_denref(q)) == 0) {
            mpq_clear(q);
            throw std::domain_error("Rational: zero denominator in '" + s + "'");
        }
        mpq_canonicalize(q);
        Rational r = from_mpq(q);
        mpq_clear(q);
        return r;
    }

    bool is_zero() const noexcept { return !is_big() && num_ == 0; }
    bool is_one() const noexcept { return !is_big() && num_ == 1 && den_ == 1; }
    bool is_integer() const noexcept { return is_big() ? mpz_cmp_ui(mpq_denref(big_), 1) == 0 : den_ == 1; }
    bool is_small() const noexcept { return !is_big(); }

    int sign() const noexcept
    {
        if (is_big()) return mpq_sgn(big_);
        return (num_ > 0) - (num_ < 0);
    }

    double to_double() const noexcept
    {
        if (is_big()) return mpq_get_d(big_);
        return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
    }

    std::string str() const
    {
        if (is_big()) {
            char* raw = mpq_get_str(nullptr, 10, big_);
            std::string out(raw);
            void (*freefunc)(void*, std::size_t);
            mp_get_memory_functions(nullptr, nullptr, &freefunc);
            freefunc(raw, std::char_traits<char>::length(raw) + 1);
            return out;
        }
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational operator-() const
    {
        if (!is_big() && num_ != std::numeric_limits<long long>::min()) {
            Rational r;
            r.num_ = -num_;
            r.den_ = den_;
            return r;
        }
        mpq_t a, out;
        init_from(a, *this);
        mpq_init(out);
        mpq_neg(out, a);
        Rational r = from_mpq(out);
        mpq_clear(a);
        mpq_clear(out);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        if (!a.is_big() && !b.is_big()) {
            if (a.den_ == 1 && b.den_ == 1) {
                long long s;
                if (!__builtin_add_overflow(a.num_, b.num_, &s)) return Rational(s);
            }
            if (a.den_ == b.den_) return make(static_cast<i128>(a.num_) + b.num_, a.den_);
            return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                        static_cast<i128>(a.den_) * b.den_);
        }
        return big_op(a, b, mpq_add);
    }

    friend Rational operator-(const Rational& a, const Rational& b)
    {
        if (!a.is_big() && !b.is_big()) {
            if (a.den_ == 1 && b.den_ == 1) {
                long long s;
                if (!__builtin_sub_overflow(a.num_, b.num_, &s)) return Rational(s);
            }
            if (a.den_ == b.den_) return make(static_cast<i128>(a.num_) - b.num_, a.den_);
            return make(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                        static_cast<i128>(a.den_) * b.den_);
        }
        return big_op(a, b, mpq_sub);
    }

    friend Rational operator*(const Rational& a, const Rational& b)
    {
        if (!a.is_big() && !b.is_big()) {
            if (a.num_ == 0 || b.num_ == 0) return Rational();
            if (a.den_ == 1 && b.den_ == 1) {
                long long p;
                if (!__builtin_mul_overflow(a.num_, b.num_, &p)) return Rational(p);
            }
            u128 g1 = gcd_u(uabs(a.num_), static_cast<u128>(b.den_));
            u128 g2 = gcd_u(uabs(b.num_), static_cast<u128>(a.den_));
            i128 n = (static_cast<i128>(a.num_) / static_cast<i128>(g1)) *
                     (static_cast<i128>(b.num_) / static_cast<i128>(g2));
            i128 d = (static_cast<i128>(a.den_) / static_cast<i128>(g2)) *
                     (static_cast<i128>(b.den_) / static_cast<i128>(g1));
            return from_reduced(n, d);
        }
        return big_op(a, b, mpq_mul);
    }

    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return a * b.inverse();
    }

    Rational inverse() const
    {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        if (!is_big() && num_ != std::numeric_limits<long long>::min()) {
            Rational r;
            r.num_ = num_ < 0 ? -den_ : den_;
            r.den_ = num_ < 0 ? -num_ : num_;
            return r;
        }
        mpq_t a, out;
        init_from(a, *this);
        mpq_init(out);
        mpq_inv(out, a);
        Rational r = from_mpq(out);
        mpq_clear(a);
        mpq_clear(out);
        return r;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept
    {
        if (a.is_big() != b.is_big()) return false;
        if (a.is_big()) return mpq_equal(a.big_, b.big_) != 0;
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        if (!a.is_big() && !b.is_big()) {
            i128 l = static_cast<i128>(a.num_) * b.den_;
            i128 r = static_cast<i128>(b.num_) * a.den_;
            return l <=> r;
        }
        mpq_t x, y;
        init_from(x, a);
        init_from(y, b);
        int c = mpq_cmp(x, y);
        mpq_clear(x);
        mpq_clear(y);
        return c <=> 0;
    }

private:
    using i128 = __int128;
    using u128 = unsigned __int128;

    union {
        long long num_;
        mpq_ptr big_;
    };
    long long den_;  // 0 marks the GMP representation

    bool is_big() const noexcept { return den_ == 0; }

    static mpq_ptr new_mpq()
    {
        auto* q = new __mpq_struct;
        mpq_init(q);
        return q;
    }

    void release() noexcept
    {
        if (is_big()) {
            mpq_clear(big_);
            delete big_;
            den_ = 1;
            num_ = 0;
        }
    }

    static u128 uabs(long long v) noexcept
    {
        return v < 0 ? static_cast<u128>(-(static_cast<i128>(v))) : static_cast<u128>(v);
    }

    static u128 gcd_u(u128 a, u128 b) noexcept
    {
        if (a == 0) return b;
        if (b == 0) return a;
        if ((a >> 64) == 0 && (b >> 64) == 0) {
            std::uint64_t x = static_cast<std::uint64_t>(a), y = static_cast<std::uint64_t>(b);
            while (y != 0) {
                std::uint64_t t = x % y;
                x = y;
                y = t;
            }
            return x;
        }
        while (b != 0) {
            u128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static void set_mpz_i128(mpz_ptr z, i128 v)
    {
        bool neg = v < 0;
        u128 m = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
        std::uint64_t words[2] = {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(m >> 64)};
        mpz_import(z, 2, -1, sizeof(std::uint64_t), 0, 0, words);
        if (neg) mpz_neg(z, z);
    }

    static void init_from(mpq_ptr q, const Rational& r)
    {
        mpq_init(q);
        if (r.is_big()) {
            mpq_set(q, r.big_);
        } else {
            mpz_set_si(mpq_numref(q), r.num_);
            mpz_set_si(mpq_denref(q), r.den_);
        }
    }

    static bool fits(i128 v) noexcept
    {
        return v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max();
    }

    // n/d with d > 0 and gcd(n, d) = 1.
    static Rational from_reduced(i128 n, i128 d)
    {
        Rational r;
        if (fits(n) && fits(d)) {
            r.num_ = static_cast<long long>(n);
            r.den_ = static_cast<long long>(d);
            return r;
        }
        r.big_ = new_mpq();
        r.den_ = 0;
        set_mpz_i128(mpq_numref(r.big_), n);
        set_mpz_i128(mpq_denref(r.big_), d);
        return r;
    }

    // n/d with d > 0, not necessarily reduced.
    static Rational make(i128 n, i128 d)
    {
        if (n == 0) return Rational();
        u128 g = gcd_u(n < 0 ? static_cast<u128>(-n) : static_cast<u128>(n), static_cast<u128>(d));
        if (g != 1) {
            n /= static_cast<i128>(g);
            d /= static_cast<i128>(g);
        }
        return from_reduced(n, d);
    }

    void assign_i128(i128 n, i128 d) { *this = make(n, d); }

    static Rational from_mpq(mpq_srcptr q)
    {
        Rational r;
        if (mpz_fits_slong_p(mpq_numref(q)) && mpz_fits_slong_p(mpq_denref(q))) {
            r.num_ = mpz_get_si(mpq_numref(q));
            r.den_ = mpz_get_si(mpq_denref(q));
            return r;
        }
        r.big_ = new_mpq();
        r.den_ = 0;
        mpq_set(r.big_, q);
        return r;
    }

    static Rational big_op(const Rational& a, const Rational& b, void (*op)(mpq_ptr, mpq_srcptr, mpq_srcptr))
    {
        mpq_t x, y, out;
        init_from(x, a);
        init_from(y, b);
        mpq_init(out);
        op(out, x, y);
        Rational r = from_mpq(out);
        mpq_clear(x);
        mpq_clear(y);
        mpq_clear(out);
        return r;
    }
};

}  // namespace cwb
