#pragma once

#include "fpl/checked.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

namespace fpl {

/// Nine-way split of a pair (x, y) by whether each coordinate is 1, even,
/// or odd and at least 3. Declaration order is the canonical table order.
enum class ParityCase : std::uint8_t {
    one_one,
    one_even,
    one_odd,
    even_one,
    even_even,
    even_odd,
    odd_one,
    odd_even,
    odd_odd,
};

inline constexpr std::size_t kParityCaseCount = 9;

inline constexpr std::array<ParityCase, kParityCaseCount> kAllParityCases = {
    ParityCase::one_one,  ParityCase::one_even,  ParityCase::one_odd,
    ParityCase::even_one, ParityCase::even_even, ParityCase::even_odd,
    ParityCase::odd_one,  ParityCase::odd_even,  ParityCase::odd_odd,
};

enum class PointKind : std::uint8_t { one, even, odd };

[[nodiscard]] constexpr PointKind point_kind(Int v)
{
    if (v == 1) return PointKind::one;
    return (v & 1) == 0 ? PointKind::even : PointKind::odd;
}

[[nodiscard]] constexpr ParityCase parity_case(Int x, Int y)
{
    return static_cast<ParityCase>(static_cast<int>(point_kind(x)) * 3 + static_cast<int>(point_kind(y)));
}

/// Case of the swapped pair (y, x).
[[nodiscard]] constexpr ParityCase mirrored(ParityCase c)
{
    int i = static_cast<int>(c);
    return static_cast<ParityCase>((i % 3) * 3 + i / 3);
}

[[nodiscard]] constexpr std::size_t index_of(ParityCase c) { return static_cast<std::size_t>(c); }

/// Short names used on the command line and in reports ("even-odd", ...).
[[nodiscard]] std::string_view name_of(ParityCase c);
[[nodiscard]] std::optional<ParityCase> parse_parity_case(std::string_view name);

} // namespace fpl
