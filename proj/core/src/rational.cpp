#include "qdnls/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace qdnls {

namespace {

using Wide = __int128;

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

Wide wide_gcd(Wide a, Wide b) {
    a = wide_abs(a);
    b = wide_abs(b);
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr Wide kInt64Max = std::numeric_limits<std::int64_t>::max();
constexpr Wide kInt64Min = std::numeric_limits<std::int64_t>::min();

struct ReducedPair {
    std::int64_t num;
    std::int64_t den;
};

ReducedPair normalize(Wide num, Wide den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const Wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num > kInt64Max || num < kInt64Min || den > kInt64Max)
        throw std::overflow_error("rational arithmetic overflow");
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

Rational reduce(Wide num, Wide den) {
    const ReducedPair p = normalize(num, den);
    return Rational(p.num, p.den);
}

} // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
    const ReducedPair p = normalize(numerator, denominator);
    num_ = p.num;
    den_ = p.den;
}

Rational operator+(const Rational& a, const Rational& b) {
    return reduce(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                  static_cast<Wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return reduce(static_cast<Wide>(a.num_) * b.den_ - static_cast<Wide>(b.num_) * a.den_,
                  static_cast<Wide>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return reduce(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("rational division by zero");
    return reduce(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
    return static_cast<Wide>(a.num_) * b.den_ < static_cast<Wide>(b.num_) * a.den_;
}

Rational abs(const Rational& r) { return r.num() < 0 ? -r : r; }

Rational reciprocal(const Rational& r) {
    if (r.is_zero()) throw std::invalid_argument("reciprocal of zero");
    return Rational(r.den(), r.num());
}

Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a.is_zero()) return abs(b);
    if (b.is_zero()) return abs(a);
    // gcd(p1/q1, p2/q2) = gcd(p1, p2) / lcm(q1, q2) for reduced fractions.
    const std::int64_t p = std::gcd(a.num(), b.num());
    const Wide lcm = static_cast<Wide>(a.den()) / std::gcd(a.den(), b.den()) * b.den();
    return reduce(p, lcm);
}

std::string to_string(const Rational& r) {
    if (r.is_integer()) return std::to_string(r.num());
    return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

std::ostream& operator<<(std::ostream& out, const Rational& r) { return out << to_string(r); }

Rational parse_rational(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t");
    std::size_t end = text.find_last_not_of(" \t");
    if (begin == std::string::npos) throw std::invalid_argument("empty rational literal");
    const std::string body = text.substr(begin, end - begin + 1);

    const auto parse_int = [](const std::string& s) {
        std::int64_t value = 0;
        const char* first = s.data();
        const char* last = s.data() + s.size();
        if (first != last && *first == '+') ++first;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last)
            throw std::invalid_argument("malformed integer in rational literal: " + s);
        return value;
    };

    const std::size_t slash = body.find('/');
    if (slash == std::string::npos) return Rational(parse_int(body));
    if (slash == 0 || slash + 1 == body.size() || body.find('/', slash + 1) != std::string::npos)
        throw std::invalid_argument("malformed rational literal: " + body);
    return Rational(parse_int(body.substr(0, slash)), parse_int(body.substr(slash + 1)));
}

} // namespace qdnls
