#include "fpl/checked.hpp"

#include <algorithm>

namespace fpl {

namespace checked {

void throw_overflow(const char* op)
{
    throw OverflowError(std::string("128-bit integer overflow in ") + op);
}

} // namespace checked

Int gcd(Int a, Int b)
{
    a = checked::abs(a);
    b = checked::abs(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string to_string(Int v)
{
    if (v == 0) return "0";
    bool negative = v < 0;
    // work on the negative side so kIntMin needs no special case
    Int n = negative ? v : -v;
    std::string out;
    while (n != 0) {
        out.push_back(static_cast<char>('0' - static_cast<int>(n % 10)));
        n /= 10;
    }
    if (negative) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

std::optional<Int> parse_int(std::string_view text)
{
    if (text.empty()) return std::nullopt;
    bool negative = false;
    std::size_t i = 0;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        i = 1;
    }
    if (i == text.size()) return std::nullopt;
    Int value = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c < '0' || c > '9') return std::nullopt;
        Int digit = c - '0';
        if (__builtin_mul_overflow(value, 10, &value)) return std::nullopt;
        if (__builtin_sub_overflow(value, digit, &value)) return std::nullopt;
    }
    if (!negative) {
        if (value == kIntMin) return std::nullopt;
        value = -value;
    }
    return value;
}

} // namespace fpl
