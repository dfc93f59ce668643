#include "fpl/rational.hpp"

#include <stdexcept>

namespace fpl {

namespace {

// Reduces num/den in place; den != 0 on entry.
void normalize(Int& num, Int& den)
{
    if (den < 0) {
        num = checked::neg(num);
        den = checked::neg(den);
    }
    if (den == 1) return;
    Int g = gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

} // namespace

Rational::Rational(Int num, Int den) : num_(num), den_(den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (num == 0) {
        den_ = 1;
        return;
    }
    normalize(num_, den_);
}

Rational& Rational::operator+=(const Rational& o)
{
    if (den_ == 1 && o.den_ == 1) {
        num_ = checked::add(num_, o.num_);
        return *this;
    }
    Int g = gcd(den_, o.den_);
    Int lhs_scale = o.den_ / g;
    Int rhs_scale = den_ / g;
    Int n = checked::add(checked::mul(num_, lhs_scale), checked::mul(o.num_, rhs_scale));
    Int d = checked::mul(den_, lhs_scale);
    *this = Rational(n, d);
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o)
{
    if (den_ == 1 && o.den_ == 1) {
        num_ = checked::mul(num_, o.num_);
        return *this;
    }
    // cross-cancel first to keep intermediates small
    Int g1 = gcd(num_, o.den_);
    Int g2 = gcd(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    Int n = checked::mul(num_ / g1, o.num_ / g2);
    Int d = checked::mul(den_ / g2, o.den_ / g1);
    *this = Rational(n, d);
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return *this *= Rational(o.den_, o.num_);
}

Rational operator-(const Rational& a)
{
    Rational r;
    r.num_ = checked::neg(a.num_);
    r.den_ = a.den_;
    return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    if (a.sign() != b.sign()) return a.sign() <=> b.sign();
    return checked::mul(a.num_, b.den_) <=> checked::mul(b.num_, a.den_);
}

std::string Rational::str() const { return to_string(num_) + "/" + to_string(den_); }

std::optional<Rational> parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        auto n = parse_int(text);
        if (!n) return std::nullopt;
        return Rational(*n);
    }
    auto n = parse_int(text.substr(0, slash));
    auto d_text = text.substr(slash + 1);
    if (!d_text.empty() && (d_text[0] == '+' || d_text[0] == '-')) return std::nullopt;
    auto d = parse_int(d_text);
    if (!n || !d || *d == 0) return std::nullopt;
    return Rational(*n, *d);
}

} // namespace fpl
