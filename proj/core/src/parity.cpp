#include "fpl/parity.hpp"

namespace fpl {

namespace {

constexpr std::array<std::string_view, kParityCaseCount> kNames = {
    "1-1", "1-even", "1-odd", "even-1", "even-even", "even-odd", "odd-1", "odd-even", "odd-odd",
};

} // namespace

std::string_view name_of(ParityCase c) { return kNames[index_of(c)]; }

std::optional<ParityCase> parse_parity_case(std::string_view name)
{
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return static_cast<ParityCase>(i);
    }
    return std::nullopt;
}

} // namespace fpl
