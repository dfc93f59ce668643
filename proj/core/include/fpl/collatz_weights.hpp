#pragma once

// Explicit weight system under which the accelerated Collatz map is a
// weighted generalized pseudocontraction on (N, |x - y|).
//
// Pairs are split into nine parity cases. Reduced coordinates are k, l with
// x = 2k (even x) or x = 2k + 1 (odd x >= 3), and likewise for y. All closed
// forms below are polynomials in k and l.

#include "fpl/checked.hpp"
#include "fpl/framework.hpp"
#include "fpl/parity.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

namespace fpl::weights {

struct PairClass {
    ParityCase kind = ParityCase::one_one;
    std::optional<Int> k; // absent when x = 1
    std::optional<Int> l; // absent when y = 1

    friend bool operator==(const PairClass&, const PairClass&) = default;
};

[[nodiscard]] inline Int reduced(Int v) { return v >> 1; } // 2k -> k and 2k + 1 -> k

[[nodiscard]] inline PairClass classify(Int x, Int y)
{
    require_point(x, "x");
    require_point(y, "y");
    PairClass pc;
    pc.kind = parity_case(x, y);
    if (x != 1) pc.k = reduced(x);
    if (y != 1) pc.l = reduced(y);
    return pc;
}

/// Inverse of classify; throws std::invalid_argument on inconsistent input.
[[nodiscard]] std::pair<Int, Int> reconstruct(const PairClass& pc);

/// Partition of the odd-odd case by the sign pattern of k - l and the gates
/// 11k - 10l + 1 and -10k + 11l + 1.
enum class OddOddSubcase : std::uint8_t {
    below_gated,  // k - l <= -2 and 11k - 10l + 1 <= 0
    below_open,   // k - l <= -2 and 11k - 10l + 1 >= 1
    above_gated,  // k - l >= 2 and -10k + 11l + 1 <= 0
    above_open,   // k - l >= 2 and -10k + 11l + 1 >= 1
    near_diagonal // |k - l| <= 1
};

[[nodiscard]] std::string_view name_of(OddOddSubcase s);

/// 11k - 10l + 1
[[nodiscard]] inline Int gate_below(Int k, Int l)
{
    return checked::add(checked::sub(checked::mul(11, k), checked::mul(10, l)), 1);
}

/// -10k + 11l + 1
[[nodiscard]] inline Int gate_above(Int k, Int l) { return gate_below(l, k); }

[[nodiscard]] inline OddOddSubcase odd_odd_subcase(Int k, Int l)
{
    const Int diff = checked::sub(k, l);
    if (diff <= -2) return gate_below(k, l) <= 0 ? OddOddSubcase::below_gated : OddOddSubcase::below_open;
    if (diff >= 2) return gate_above(k, l) <= 0 ? OddOddSubcase::above_gated : OddOddSubcase::above_open;
    return OddOddSubcase::near_diagonal;
}

// Auxiliary odd-odd weights, as functions of the reduced coordinates.
[[nodiscard]] inline Int beta0(Int k, Int l)
{
    const Int diff = checked::sub(k, l);
    if (diff <= -2) return -2;
    if (diff >= 2) return 2;
    return diff;
}

[[nodiscard]] inline Int delta0(Int k, Int l)
{
    auto s = odd_odd_subcase(k, l);
    return (s == OddOddSubcase::below_gated || s == OddOddSubcase::above_gated) ? -2 : -1;
}

[[nodiscard]] inline Int eps0(Int k, Int l) { return odd_odd_subcase(k, l) == OddOddSubcase::below_gated ? 2 : 0; }

[[nodiscard]] inline Int zeta0(Int k, Int l) { return odd_odd_subcase(k, l) == OddOddSubcase::above_gated ? 2 : 0; }

namespace detail {

// Rows in ParityCase order; the odd-odd row is filled in from beta0 etc.
inline constexpr WeightVector kTable[kParityCaseCount] = {
    {1, 0, 0, 0, -1, 1},   // 1-1
    {1, 0, 0, -1, 0, 1},   // 1-even
    {0, 0, 0, -2, 1, 2},   // 1-odd
    {1, 0, 1, -1, 0, 1},   // even-1
    {1, 0, -1, 0, -1, 1},  // even-even
    {0, 0, -2, 1, -2, 2},  // even-odd
    {1, 0, -1, -1, 0, 1},  // odd-1
    {0, -2, 0, 1, 2, -2},  // odd-even
    {2, 0, 0, 0, 0, 0},    // odd-odd (alpha only)
};

} // namespace detail

/// The six weights at (x, y).
[[nodiscard]] inline WeightVector weight_vector(Int x, Int y)
{
    require_point(x, "x");
    require_point(y, "y");
    const ParityCase c = parity_case(x, y);
    if (c != ParityCase::odd_odd) return detail::kTable[index_of(c)];
    const Int k = reduced(x);
    const Int l = reduced(y);
    const Int diff = checked::sub(k, l);
    WeightVector w{2, 0, 0, -1, 0, 0};
    if (diff <= -2) {
        w.beta = -2;
        if (gate_below(k, l) <= 0) {
            w.delta = -2;
            w.epsilon = 2;
        }
    } else if (diff >= 2) {
        w.beta = 2;
        if (gate_above(k, l) <= 0) {
            w.delta = -2;
            w.zeta = 2;
        }
    } else {
        w.beta = diff;
    }
    w.gamma = -w.beta;
    return w;
}

/// Function-object form for the generic framework templates.
struct WeightTable {
    WeightVector operator()(Int x, Int y) const { return weight_vector(x, y); }
};

/// Cells on which the sharpened upper bounds are stated: the eight
/// non-odd-odd cases plus the five odd-odd subcases.
enum class BoundCell : std::uint8_t {
    one_one,
    one_even,
    one_odd,
    even_one,
    even_even,
    even_odd,
    odd_one,
    odd_even,
    odd_odd_below_gated,
    odd_odd_below_open,
    odd_odd_above_gated,
    odd_odd_above_open,
    odd_odd_near_diagonal,
};

inline constexpr std::size_t kBoundCellCount = 13;

[[nodiscard]] std::string_view name_of(BoundCell c);

[[nodiscard]] inline BoundCell bound_cell(const PairClass& pc)
{
    if (pc.kind != ParityCase::odd_odd) return static_cast<BoundCell>(index_of(pc.kind));
    return static_cast<BoundCell>(static_cast<int>(BoundCell::odd_odd_below_gated) +
                                  static_cast<int>(odd_odd_subcase(*pc.k, *pc.l)));
}

/// Upper bound on the left-hand side established for the cell.
[[nodiscard]] Int bound_of(BoundCell c);

[[nodiscard]] inline Int case_bound(const PairClass& pc) { return bound_of(bound_cell(pc)); }

/// Value of the case's closed form together with the formula it came from.
struct ClosedForm {
    BoundCell cell;
    Int value;
    std::string_view formula;
};

[[nodiscard]] ClosedForm closed_form(Int x, Int y);

/// Closed-form left-hand side; identical to lhs(weight_vector, T, x, y).
[[nodiscard]] inline Int simplified_lhs(Int x, Int y) { return closed_form(x, y).value; }

/// Unfactored odd-odd expression
/// (18 + 4 delta0)(k - l)^2 - 5 beta0 (k - l)(k + l + 2) + eps0 (k + 1)^2 + zeta0 (l + 1)^2.
[[nodiscard]] Int odd_odd_master(Int k, Int l);

} // namespace fpl::weights
