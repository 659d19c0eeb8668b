#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <stdexcept>

namespace socrt {

/// Absolute or relative time in integer picoseconds. All timing math in the
/// toolkit is exact integer arithmetic; there is no rounding anywhere in the
/// additive paths, so multi-clock alignment stays bit-reproducible.
struct Duration {
    std::int64_t ps = 0;

    constexpr Duration() = default;
    constexpr explicit Duration(std::int64_t picoseconds) : ps(picoseconds) {}

    static constexpr Duration zero() { return Duration{0}; }

    constexpr auto operator<=>(const Duration&) const = default;

    constexpr Duration operator+(Duration o) const { return Duration{ps + o.ps}; }
    constexpr Duration operator-(Duration o) const { return Duration{ps - o.ps}; }
    constexpr Duration operator*(std::int64_t k) const { return Duration{ps * k}; }
    constexpr Duration& operator+=(Duration o) { ps += o.ps; return *this; }
    constexpr Duration& operator-=(Duration o) { ps -= o.ps; return *this; }
};

constexpr Duration operator*(std::int64_t k, Duration d) { return d * k; }

constexpr Duration picoseconds(std::int64_t v) { return Duration{v}; }
constexpr Duration nanoseconds(std::int64_t v) { return Duration{v * 1000}; }

/// Exact rational with 64-bit terms, used for per-word data times that carry
/// a (LW/beta)*ceil(beta/LW) factor. Kept normalized with positive denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        normalize();
    }

    constexpr void normalize() {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    constexpr Rational operator+(Rational o) const {
        return Rational{num * o.den + o.num * den, den * o.den};
    }
    constexpr Rational operator*(std::int64_t k) const { return Rational{num * k, den}; }
    constexpr Rational operator*(Rational o) const { return Rational{num * o.num, den * o.den}; }

    constexpr bool operator==(const Rational&) const = default;
    constexpr bool operator<(Rational o) const {
        return num * o.den < o.num * den;
    }
    constexpr bool operator<=(Rational o) const {
        return num * o.den <= o.num * den;
    }

    constexpr bool is_integral() const { return den == 1; }

    /// Exact integer value; throws if the rational is not integral.
    constexpr std::int64_t exact() const {
        if (den != 1) throw std::logic_error("rational is not integral");
        return num;
    }

    /// Ceiling to the next integer (safe direction for upper bounds).
    constexpr std::int64_t ceil() const {
        if (num >= 0) return (num + den - 1) / den;
        return -((-num) / den);
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// ceil(a / b) for positive b.
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    return (a >= 0) ? (a + b - 1) / b : -((-a) / b);
}

} // namespace socrt
