#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fpl {

// Exact signed integer used for points, distances and weighted sums.
__extension__ typedef __int128 Int;

inline constexpr Int kIntMax = static_cast<Int>(~static_cast<unsigned __int128>(0) >> 1);
inline constexpr Int kIntMin = -kIntMax - 1;

/// Raised whenever an exact computation would leave the 128-bit range.
/// Evaluations never wrap; the caller has to shrink the range instead.
class OverflowError : public std::overflow_error {
public:
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

namespace checked {

[[noreturn]] void throw_overflow(const char* op);

[[nodiscard]] inline Int add(Int a, Int b)
{
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw_overflow("add");
    return r;
}

[[nodiscard]] inline Int sub(Int a, Int b)
{
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw_overflow("sub");
    return r;
}

[[nodiscard]] inline Int mul(Int a, Int b)
{
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw_overflow("mul");
    return r;
}

[[nodiscard]] inline Int neg(Int a)
{
    if (a == kIntMin) throw_overflow("neg");
    return -a;
}

[[nodiscard]] inline Int abs(Int a) { return a < 0 ? neg(a) : a; }

[[nodiscard]] inline Int square(Int a) { return mul(a, a); }

} // namespace checked

[[nodiscard]] Int gcd(Int a, Int b);

[[nodiscard]] std::string to_string(Int v);

/// Parses an optionally signed decimal integer; the whole view must be consumed.
[[nodiscard]] std::optional<Int> parse_int(std::string_view text);

/// True when v is exactly representable as an IEEE double (|v| <= 2^53).
[[nodiscard]] inline bool fits_double_exactly(Int v)
{
    constexpr Int limit = static_cast<Int>(1) << 53;
    return v >= -limit && v <= limit;
}

} // namespace fpl
