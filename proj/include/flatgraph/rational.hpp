#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace flatgraph {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : value_(static_cast<long>(value)) {}
    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
        value_.canonicalize();
    }
    explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

    /// Parses "p" or "p/q" in base 10.
    static Rational parse(const std::string& text) {
        mpq_class q;
        if (q.set_str(text, 10) != 0) throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
        return Rational(std::move(q));
    }

    const mpz_class& numerator() const { return value_.get_num(); }
    const mpz_class& denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    int sign() const { return sgn(value_); }

    std::string to_string() const { return value_.get_str(10); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class value_;
};

} // namespace flatgraph
