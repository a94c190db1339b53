#pragma once

// Exact rational arithmetic, used to evaluate the closed-form geometry
// templates without rounding (e.g. to confirm that b = 7/10 gives 9/17).

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace pi2lab {

namespace detail {
__extension__ typedef __int128 wide_t; // GCC/Clang extension
}

class Rational {
    using wide_t = detail::wide_t;

public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {} // NOLINT: implicit from integers
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    constexpr std::int64_t num() const { return num_; }
    constexpr std::int64_t den() const { return den_; }
    constexpr double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(Rational a, Rational b) {
        return make(static_cast<wide_t>(a.num_) * b.den_ + static_cast<wide_t>(b.num_) * a.den_,
                    static_cast<wide_t>(a.den_) * b.den_);
    }
    friend Rational operator-(Rational a, Rational b) {
        return make(static_cast<wide_t>(a.num_) * b.den_ - static_cast<wide_t>(b.num_) * a.den_,
                    static_cast<wide_t>(a.den_) * b.den_);
    }
    friend Rational operator*(Rational a, Rational b) {
        return make(static_cast<wide_t>(a.num_) * b.num_, static_cast<wide_t>(a.den_) * b.den_);
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make(static_cast<wide_t>(a.num_) * b.den_, static_cast<wide_t>(a.den_) * b.num_);
    }
    Rational operator-() const { return make(-static_cast<wide_t>(num_), den_); }

    Rational& operator+=(Rational o) { return *this = *this + o; }
    Rational& operator-=(Rational o) { return *this = *this - o; }
    Rational& operator*=(Rational o) { return *this = *this * o; }
    Rational& operator/=(Rational o) { return *this = *this / o; }

    friend bool operator==(Rational a, Rational b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(Rational a, Rational b) {
        const wide_t l = static_cast<wide_t>(a.num_) * b.den_;
        const wide_t r = static_cast<wide_t>(b.num_) * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, Rational r) {
        os << r.num_;
        if (r.den_ != 1) os << '/' << r.den_;
        return os;
    }

private:
    static wide_t gcd128(wide_t a, wide_t b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const wide_t t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational make(wide_t n, wide_t d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const wide_t g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr wide_t lim = INT64_MAX;
        if (n > lim || n < -lim || d > lim) throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    void assign(std::int64_t n, std::int64_t d) { *this = make(n, d); }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.to_double(); }

} // namespace pi2lab
