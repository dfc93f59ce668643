#include "fpl/collatz_weights.hpp"

#include <array>
#include <stdexcept>

namespace fpl::weights {

using checked::add;
using checked::mul;
using checked::square;
using checked::sub;

std::pair<Int, Int> reconstruct(const PairClass& pc)
{
    auto coord = [](PointKind kind, const std::optional<Int>& r, const char* name) -> Int {
        if (kind == PointKind::one) {
            if (r) throw std::invalid_argument(std::string(name) + ": coordinate 1 carries no reduced value");
            return 1;
        }
        if (!r || *r < 1) throw std::invalid_argument(std::string(name) + ": reduced coordinate must be >= 1");
        return kind == PointKind::even ? mul(2, *r) : add(mul(2, *r), 1);
    };
    const int i = static_cast<int>(pc.kind);
    return {coord(static_cast<PointKind>(i / 3), pc.k, "k"), coord(static_cast<PointKind>(i % 3), pc.l, "l")};
}

std::string_view name_of(OddOddSubcase s)
{
    switch (s) {
    case OddOddSubcase::below_gated: return "k-l<=-2,11k-10l+1<=0";
    case OddOddSubcase::below_open: return "k-l<=-2,11k-10l+1>=1";
    case OddOddSubcase::above_gated: return "k-l>=2,-10k+11l+1<=0";
    case OddOddSubcase::above_open: return "k-l>=2,-10k+11l+1>=1";
    case OddOddSubcase::near_diagonal: break;
    }
    return "|k-l|<=1";
}

namespace {

constexpr std::array<std::string_view, kBoundCellCount> kCellNames = {
    "1-1",
    "1-even",
    "1-odd",
    "even-1",
    "even-even",
    "even-odd",
    "odd-1",
    "odd-even",
    "odd-odd k-l<=-2,11k-10l+1<=0",
    "odd-odd k-l<=-2,11k-10l+1>=1",
    "odd-odd k-l>=2,-10k+11l+1<=0",
    "odd-odd k-l>=2,-10k+11l+1>=1",
    "odd-odd |k-l|<=1",
};

constexpr std::array<int, kBoundCellCount> kBounds = {
    0,  // = 0
    0,  // -2l^2 + 2l, attained at l = 1
    0,  // -6l^2 + 4l + 2, attained at l = 1
    -1, // -2k^2 + 1
    -1, // -(k - l)^2 - l^2
    -1, // -2l^2 + 1
    -4, // -4k^2
    -1, // -2k^2 + 1
    0,  -8, 0, -8, 0,
};

} // namespace

std::string_view name_of(BoundCell c) { return kCellNames[static_cast<std::size_t>(c)]; }

Int bound_of(BoundCell c) { return kBounds[static_cast<std::size_t>(c)]; }

ClosedForm closed_form(Int x, Int y)
{
    const PairClass pc = classify(x, y);
    const BoundCell cell = bound_cell(pc);
    const Int k = pc.k.value_or(0);
    const Int l = pc.l.value_or(0);
    switch (cell) {
    case BoundCell::one_one: return {cell, 0, "0"};
    case BoundCell::one_even: return {cell, add(mul(-2, square(l)), mul(2, l)), "-2l^2+2l"};
    case BoundCell::one_odd: return {cell, add(add(mul(-6, square(l)), mul(4, l)), 2), "-6l^2+4l+2"};
    case BoundCell::even_one: return {cell, add(mul(-2, square(k)), 1), "-2k^2+1"};
    case BoundCell::even_even:
        return {cell, sub(add(checked::neg(square(k)), mul(2, mul(k, l))), mul(2, square(l))), "-k^2+2kl-2l^2"};
    case BoundCell::even_odd: return {cell, add(mul(-2, square(l)), 1), "-2l^2+1"};
    case BoundCell::odd_one: return {cell, mul(-4, square(k)), "-4k^2"};
    case BoundCell::odd_even: return {cell, add(mul(-2, square(k)), 1), "-2k^2+1"};
    case BoundCell::odd_odd_below_gated:
        return {cell, mul(mul(2, add(k, 1)), gate_below(k, l)), "2(k+1)(11k-10l+1)"};
    case BoundCell::odd_odd_below_open:
        return {cell, mul(mul(4, sub(k, l)), add(sub(mul(6, k), l), 5)), "4(k-l)(6k-l+5)"};
    case BoundCell::odd_odd_above_gated:
        return {cell, mul(mul(2, add(l, 1)), gate_above(k, l)), "2(l+1)(-10k+11l+1)"};
    case BoundCell::odd_odd_above_open:
        return {cell, mul(mul(4, sub(k, l)), sub(sub(k, mul(6, l)), 5)), "4(k-l)(k-6l-5)"};
    case BoundCell::odd_odd_near_diagonal:
        return {cell, mul(square(sub(k, l)), sub(4, mul(5, add(k, l)))), "(k-l)^2(4-5(k+l))"};
    }
    throw std::logic_error("unreachable bound cell");
}

Int odd_odd_master(Int k, Int l)
{
    const Int diff = sub(k, l);
    Int s = mul(add(18, mul(4, delta0(k, l))), square(diff));
    s = sub(s, mul(mul(mul(5, beta0(k, l)), diff), add(add(k, l), 2)));
    s = add(s, mul(eps0(k, l), square(add(k, 1))));
    s = add(s, mul(zeta0(k, l), square(add(l, 1))));
    return s;
}

} // namespace fpl::weights
