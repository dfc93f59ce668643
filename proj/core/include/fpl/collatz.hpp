#pragma once

#include "fpl/checked.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace fpl::collatz {

enum class MapKind : std::uint8_t { C, T };

[[nodiscard]] std::string_view name_of(MapKind m);

/// x / 2 for even x, 3x + 1 for odd x.
[[nodiscard]] Int collatz_step(Int x);

/// The accelerated map: 1 is fixed, even x goes to x / 2 and odd x >= 3 to
/// (3x + 1) / 2, i.e. two steps of collatz_step fused.
[[nodiscard]] Int accelerated_step(Int x);

[[nodiscard]] inline Int apply(MapKind m, Int x) { return m == MapKind::C ? collatz_step(x) : accelerated_step(x); }

inline constexpr std::uint64_t kDefaultCap = 100'000;

struct TrajectoryRecord {
    Int seed = 1;
    MapKind map = MapKind::T;
    std::optional<std::uint64_t> steps; // stopping time, absent when the cap was hit
    Int peak = 1;
    std::optional<std::vector<Int>> path;

    [[nodiscard]] bool reached_one() const { return steps.has_value(); }

    friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

/// Minimal n >= 1 with map^n(seed) = 1, searched over at most `cap`
/// applications. c(1) = 3 and t(1) = 1.
[[nodiscard]] TrajectoryRecord stopping_time(MapKind map, Int seed, std::uint64_t cap = kDefaultCap,
                                             bool keep_path = false);

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// True iff the T-trajectory of seed equals the C-trajectory with the even
/// value after every odd step skipped (and 1 -> 4 -> 2 -> 1 collapsed to
/// 1 -> 1). Throws CapExceeded if either trajectory misses 1 within cap.
[[nodiscard]] bool consistency_CT(Int seed, std::uint64_t cap = kDefaultCap);

} // namespace fpl::collatz
