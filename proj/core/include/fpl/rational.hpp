#pragma once

#include "fpl/checked.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

namespace fpl {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Every operation is overflow-checked on 128-bit numerators and
/// denominators and throws OverflowError instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    template <class I>
        requires(std::is_integral_v<I> || std::is_same_v<I, Int>)
    constexpr Rational(I value) : num_(static_cast<Int>(value)) {} // NOLINT(google-explicit-constructor)
    Rational(Int num, Int den);

    [[nodiscard]] constexpr Int num() const { return num_; }
    [[nodiscard]] constexpr Int den() const { return den_; }
    [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
    [[nodiscard]] constexpr int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a);

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "p/q" in lowest terms, always with an explicit denominator.
    [[nodiscard]] std::string str() const;

private:
    Int num_ = 0;
    Int den_ = 1;
};

[[nodiscard]] inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
[[nodiscard]] inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Accepts "p", "p/q", "-p/q"; rejects zero denominators, whitespace and
/// anything else that is not a plain decimal fraction.
[[nodiscard]] std::optional<Rational> parse_rational(std::string_view text);

} // namespace fpl
