#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "buffon/errors.hpp"

namespace buffon {

using BigInt = boost::multiprecision::cpp_int;

// Exact fraction in canonical reduced form: den > 0, gcd(|num|, den) = 1.
// The only number type on the sampling path; no rounding anywhere.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    explicit Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt num, BigInt den);

    // Accepts "n/d" or a bare integer.
    static Rational parse(std::string_view text);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    // Exact cross-multiplication comparison.
    std::strong_ordering operator<=>(const Rational& o) const;
    bool operator==(const Rational& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }

    // Exact power with integer exponent; e = 0 gives 1, negative e
    // inverts (zero base then raises ArithmeticError).
    Rational pow(long long e) const;

    // "n/d", or just "n" when the denominator is 1.
    std::string str() const;

    // Approximate value for reporting only; never used when sampling.
    double approx() const;

  private:
    void reduce();

    BigInt num_;
    BigInt den_;
};

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
    return a <=> b;
}

// Smallest b with 2^b > t, i.e. the number of binary digits of t >= 1.
// Doubling loop, kept as the reference path.
int nbd(const BigInt& t);

// Incremental nbd: a query with a larger argument continues the doubling
// loop from the previous power of two instead of restarting.
class NbdMemo {
  public:
    int eval(const BigInt& t);

  private:
    BigInt arg_ = 1;
    BigInt pow2_ = 2;
    int bits_ = 1;
};

// 2^-k as an exact Rational.
Rational dyadic(std::uint64_t k);

}  // namespace buffon
