#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace qdnls {

// Exact fraction of 64-bit integers, always normalized: denominator positive,
// gcd(|num|, den) == 1. Intermediate products run in 128-bit arithmetic and
// results that cannot be reduced back into 64 bits throw std::overflow_error.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {}
    Rational(std::int64_t numerator, std::int64_t denominator);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& r) { return *this = *this + r; }
    Rational& operator-=(const Rational& r) { return *this = *this - r; }
    Rational& operator*=(const Rational& r) { return *this = *this * r; }
    Rational& operator/=(const Rational& r) { return *this = *this / r; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

Rational abs(const Rational& r);
Rational reciprocal(const Rational& r);

// Largest rational g > 0 such that both arguments are integer multiples of g;
// signs are ignored. gcd(0, x) = |x|, gcd(0, 0) = 0.
Rational rational_gcd(const Rational& a, const Rational& b);

std::string to_string(const Rational& r);
std::ostream& operator<<(std::ostream& out, const Rational& r);

// Accepts "p", "-p", "p/q" with optional surrounding whitespace; q > 0 after
// normalization. Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

} // namespace qdnls
