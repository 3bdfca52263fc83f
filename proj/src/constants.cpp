#include "buffon/constants.hpp"

#include <bit>
#include <memory>

namespace buffon {

Rational GammaProvider::term(std::uint64_t j) const {
    if (j < 1) {
        throw DomainError("gamma term: j must be >= 1");
    }
    if (j == 1) {
        return Rational(1, 2);
    }
    int digits;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        digits = nbd_memo_.eval(BigInt(j - 1));
    }
    BigInt two_j(2 * j);
    return Rational(BigInt(digits), two_j * (two_j - 1) * (two_j - 2));
}

namespace {

// (2 + digits + 1/m) / (16 m^2) written over one denominator
Rational raw_from_digits(const BigInt& m, int digits) {
    return Rational(BigInt(2 + digits) * m + 1, BigInt(16) * m * m * m);
}

}  // namespace

Rational GammaProvider::raw_error(std::uint64_t n) {
    if (n < 2) {
        throw DomainError("gamma raw_error: defined for N >= 2");
    }
    // (2 + nbd(N-1) + 1/(N-1)) / (16 (N-1)^2)
    BigInt m(n - 1);
    return raw_from_digits(m, nbd(m));
}

Rational GammaProvider::error_bound(std::uint64_t n) const {
    if (n == 0) {
        return Rational(1);
    }
    if (n == 1) {
        return Rational(1, 2);
    }
    // The raw bound decreases except when N crosses a power of two, so
    // the cumulative minimum is attained either at n or at a preceding
    // power of two; the latter minima are cached.
    std::lock_guard<std::mutex> lock(mutex_);
    BigInt m(n - 1);
    Rational best = raw_from_digits(m, nbd_memo_.eval(m));
    while (next_pow_ <= n) {
        Rational at_pow = raw_error(next_pow_);
        if (!pow_mins_.empty() && pow_mins_.back() < at_pow) {
            at_pow = pow_mins_.back();
        }
        pow_mins_.push_back(std::move(at_pow));
        next_pow_ *= 2;
    }
    if (n >= 16) {
        const std::size_t i = std::bit_width(n) - 5;  // largest 2^t <= n
        if (pow_mins_[i] < best) {
            best = pow_mins_[i];
        }
    }
    return best;
}

Rational PiQuarterProvider::term(std::uint64_t j) const {
    if (j < 1) {
        throw DomainError("pi4 term: j must be >= 1");
    }
    auto inv_pow_sum = [](long long e) {
        return Rational(1, 2).pow(e) + Rational(1, 3).pow(e);
    };
    long long jj = static_cast<long long>(j);
    return inv_pow_sum(4 * jj - 3) / Rational(4 * jj - 3) -
           inv_pow_sum(4 * jj - 1) / Rational(4 * jj - 1);
}

Rational PiQuarterProvider::error_bound(std::uint64_t n) const {
    if (n == 0) {
        return Rational(1);
    }
    long long e = 4 * static_cast<long long>(n) + 1;
    return (Rational(1, 2).pow(e) + Rational(1, 3).pow(e)) / Rational(e);
}

ProviderPtr ln2_provider() {
    return alternating_adapter("ln2", [](std::uint64_t j) {
        long long e = static_cast<long long>(j);
        return (Rational(1, 2).pow(e) + Rational(1, 3).pow(e)) / Rational(e);
    });
}

ProviderPtr make_provider(std::string_view name) {
    if (name == "gamma") {
        return std::make_shared<GammaProvider>();
    }
    if (name == "pi4") {
        return std::make_shared<PiQuarterProvider>();
    }
    if (name == "ln2") {
        return ln2_provider();
    }
    constexpr std::string_view prefix = "rational:";
    if (name.starts_with(prefix)) {
        Rational v = Rational::parse(name.substr(prefix.size()));
        return rational_provider(v.num(), v.den());
    }
    throw DomainError("unknown constant \"" + std::string(name) +
                      "\" (expected gamma, pi4, ln2 or rational:n/d)");
}

}  // namespace buffon
