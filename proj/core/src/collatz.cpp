#include "fpl/collatz.hpp"

#include "fpl/framework.hpp"

namespace fpl::collatz {

std::string_view name_of(MapKind m) { return m == MapKind::C ? "C" : "T"; }

Int collatz_step(Int x)
{
    require_point(x, "x");
    if ((x & 1) == 0) return x / 2;
    return checked::add(checked::mul(3, x), 1);
}

Int accelerated_step(Int x)
{
    require_point(x, "x");
    if (x == 1) return 1;
    if ((x & 1) == 0) return x / 2;
    // (3x + 1) / 2 == x + (x + 1) / 2 for odd x, which avoids the 3x intermediate
    return checked::add(x, x / 2 + 1);
}

TrajectoryRecord stopping_time(MapKind map, Int seed, std::uint64_t cap, bool keep_path)
{
    require_point(seed, "seed");
    if (cap < 1) throw std::invalid_argument("cap must be at least 1");
    TrajectoryRecord rec;
    rec.seed = seed;
    rec.map = map;
    rec.peak = seed;
    if (keep_path) rec.path.emplace().push_back(seed);
    Int current = seed;
    for (std::uint64_t n = 1; n <= cap; ++n) {
        current = apply(map, current);
        if (current > rec.peak) rec.peak = current;
        if (keep_path) rec.path->push_back(current);
        if (current == 1) {
            rec.steps = n;
            break;
        }
    }
    return rec;
}

bool consistency_CT(Int seed, std::uint64_t cap)
{
    auto c = stopping_time(MapKind::C, seed, cap, true);
    auto t = stopping_time(MapKind::T, seed, cap, true);
    if (!c.reached_one() || !t.reached_one()) {
        throw CapExceeded("seed " + to_string(seed) + " did not reach 1 within the cap");
    }
    const auto& cp = *c.path;
    const auto& tp = *t.path;

    // Compress the C path: odd x >= 3 advances two C steps, 1 advances three.
    std::vector<Int> compressed{cp.front()};
    std::size_t i = 0;
    while (i + 1 < cp.size()) {
        Int v = cp[i];
        std::size_t stride = 1;
        if (v == 1) {
            stride = 3;
        } else if ((v & 1) == 1) {
            stride = 2;
        }
        if (i + stride >= cp.size()) return false;
        i += stride;
        compressed.push_back(cp[i]);
    }
    return compressed == tp;
}

} // namespace fpl::collatz
