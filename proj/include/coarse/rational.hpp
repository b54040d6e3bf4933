#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace coarse {

using BigInt = mpz_class;

// Exact rational arithmetic. Values are always canonical: lowest terms,
// denominator > 0. Backed by GMP's mpq layer, which performs comparisons by
// cross-multiplication and keeps results canonical after every operation.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}                // NOLINT(google-explicit-constructor)
    Rational(const BigInt& n) : q_(n) {}       // NOLINT(google-explicit-constructor)
    Rational(const BigInt& num, const BigInt& den);
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    // Accepts "a", "-a", or "a/b" with optional surrounding whitespace,
    // b > 0 after normalization. Throws ParseError.
    static Rational parse(const std::string& text);

    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }

    bool is_integer() const { return q_.get_den() == 1; }
    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    BigInt floor() const;
    BigInt ceil() const;

    // "num/den", or just "num" when the value is integral.
    std::string str() const;
    double to_double() const { return q_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    const mpq_class& raw() const { return q_; }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational ratio(std::uint64_t num, std::uint64_t den) {
    BigInt n, d;
    mpz_import(n.get_mpz_t(), 1, 1, sizeof num, 0, 0, &num);
    mpz_import(d.get_mpz_t(), 1, 1, sizeof den, 0, 0, &den);
    return Rational(n, d);
}

inline BigInt big(std::uint64_t v) {
    BigInt n;
    mpz_import(n.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
    return n;
}

// Checked narrowing; throws ResourceLimit when v does not fit.
std::uint64_t to_u64(const BigInt& v);

}  // namespace coarse
