#include "buffon/rational.hpp"

#include <cmath>
#include <charconv>

namespace buffon {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt num, BigInt den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) {
        throw DomainError("Rational: zero denominator");
    }
    reduce();
}

void Rational::reduce() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = mp::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(std::string_view text) {
    auto parse_int = [](std::string_view s) -> BigInt {
        if (s.empty()) {
            throw DomainError("Rational::parse: empty integer");
        }
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) {
            throw DomainError("Rational::parse: sign without digits");
        }
        for (std::size_t j = i; j < s.size(); ++j) {
            if (s[j] < '0' || s[j] > '9') {
                throw DomainError("Rational::parse: bad digit in \"" +
                                  std::string(s) + "\"");
            }
        }
        return BigInt(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    return Rational(parse_int(text.substr(0, slash)),
                    parse_int(text.substr(slash + 1)));
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) {
        throw ArithmeticError("Rational: division by zero");
    }
    num_ *= o.den_;
    den_ *= o.num_;
    reduce();
    return *this;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    // Denominators are positive, so cross-multiplication preserves order.
    BigInt lhs = num_ * o.den_;
    BigInt rhs = o.num_ * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Rational::pow(long long e) const {
    if (e == 0) {
        return Rational(1);
    }
    if (num_ == 0 && e < 0) {
        throw ArithmeticError("Rational: zero to a negative power");
    }
    unsigned long long mag =
        e < 0 ? 0ULL - static_cast<unsigned long long>(e)
              : static_cast<unsigned long long>(e);
    BigInt n = mp::pow(num_, static_cast<unsigned>(mag));
    BigInt d = mp::pow(den_, static_cast<unsigned>(mag));
    return e < 0 ? Rational(std::move(d), std::move(n))
                 : Rational(std::move(n), std::move(d));
}

std::string Rational::str() const {
    if (den_ == 1) {
        return num_.str();
    }
    return num_.str() + "/" + den_.str();
}

double Rational::approx() const {
    if (num_ == 0) {
        return 0.0;
    }
    BigInt a = num_ < 0 ? BigInt(-num_) : num_;
    long eb = static_cast<long>(mp::msb(a)) - static_cast<long>(mp::msb(den_));
    // Shift so the integer quotient carries ~64 significant bits.
    long s = 64 - eb;
    BigInt q = s >= 0 ? BigInt((a << s) / den_) : BigInt(a / (den_ << (-s)));
    double d = std::ldexp(q.convert_to<double>(), static_cast<int>(-s));
    return num_ < 0 ? -d : d;
}

int nbd(const BigInt& t) {
    if (t < 1) {
        throw DomainError("nbd: argument must be >= 1");
    }
    int b = 1;
    BigInt p = 2;
    while (p <= t) {
        p *= 2;
        ++b;
    }
    return b;
}

int NbdMemo::eval(const BigInt& t) {
    if (t < 1) {
        throw DomainError("nbd: argument must be >= 1");
    }
    if (t < arg_) {
        return nbd(t);
    }
    arg_ = t;
    while (pow2_ <= t) {
        pow2_ *= 2;
        ++bits_;
    }
    return bits_;
}

Rational dyadic(std::uint64_t k) {
    return Rational(BigInt(1), BigInt(1) << k);
}

}  // namespace buffon
