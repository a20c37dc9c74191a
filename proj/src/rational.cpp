#include "linkshom/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace linkshom {

namespace {

std::int64_t narrow(__int128 value)
{
    if (value > std::numeric_limits<std::int64_t>::max() ||
        value < std::numeric_limits<std::int64_t>::min() + 1)
        throw std::overflow_error("rational arithmetic overflow");
    return static_cast<std::int64_t>(value);
}

__int128 gcd128(__int128 a, __int128 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

Rational make_reduced(__int128 num, __int128 den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational(narrow(num), narrow(den));
}

std::int64_t parse_int(std::string_view text)
{
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        if (num == std::numeric_limits<std::int64_t>::min() ||
            den == std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error("rational arithmetic overflow");
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

Rational& Rational::operator+=(const Rational& rhs)
{
    if (den_ == 1 && rhs.den_ == 1) {
        num_ = narrow(static_cast<__int128>(num_) + rhs.num_);
        return *this;
    }
    __int128 num = static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_;
    __int128 den = static_cast<__int128>(den_) * rhs.den_;
    return *this = make_reduced(num, den);
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs)
{
    if (den_ == 1 && rhs.den_ == 1) {
        num_ = narrow(static_cast<__int128>(num_) * rhs.num_);
        return *this;
    }
    return *this = make_reduced(static_cast<__int128>(num_) * rhs.num_,
                                static_cast<__int128>(den_) * rhs.den_);
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.num_ == 0) throw std::domain_error("rational division by zero");
    return *this = make_reduced(static_cast<__int128>(num_) * rhs.den_,
                                static_cast<__int128>(den_) * rhs.num_);
}

Rational Rational::operator-() const
{
    Rational out;
    out.num_ = narrow(-static_cast<__int128>(num_));
    out.den_ = den_;
    return out;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs)
{
    __int128 l = static_cast<__int128>(lhs.num_) * rhs.den_;
    __int128 r = static_cast<__int128>(rhs.num_) * lhs.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::to_string() const
{
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

}  // namespace linkshom
