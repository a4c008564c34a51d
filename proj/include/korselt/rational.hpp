#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace korselt {

using Int = std::int64_t;
using Wide = __int128;

/// Narrow a 128-bit intermediate back to Int, throwing std::overflow_error if it does not fit.
Int narrow(Wide v);

/// Exact rational num/den in canonical form: den >= 1, gcd(|num|, den) = 1.
///
/// The only way to build a Rational is through reduce() (or the integer
/// constructor), so two equal values always have identical fields.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(Int integer) : num_(integer), den_(1) {}  // NOLINT(implicit)

    friend Rational reduce(Wide num, Wide den);

    [[nodiscard]] constexpr Int num() const { return num_; }
    [[nodiscard]] constexpr Int den() const { return den_; }
    [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
    [[nodiscard]] constexpr int sign() const { return (num_ > 0) - (num_ < 0); }

    friend constexpr bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return Wide{a.num_} * b.den_ <=> Wide{b.num_} * a.den_;
    }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a);

    /// "num/den", or just "num" when den == 1.
    [[nodiscard]] std::string str() const;
    /// Accepts "a", "a/b", "-a/b" with optional surrounding whitespace; b may be negative.
    static std::optional<Rational> parse(std::string_view text);

    [[nodiscard]] double approx() const { return static_cast<double>(num_) / static_cast<double>(den_); }

private:
    Int num_ = 0;
    Int den_ = 1;
};

/// Canonical reduced form of num/den. Throws std::domain_error when den == 0
/// and std::overflow_error when the reduced value does not fit in Int.
Rational reduce(Wide num, Wide den);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace korselt
