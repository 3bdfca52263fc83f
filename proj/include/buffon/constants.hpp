#pragma once

#include <mutex>
#include <string_view>
#include <vector>

#include "buffon/series.hpp"

namespace buffon {

// Euler's constant: term(1) = 1/2, term(j) = nbd(j-1)/(2j(2j-1)(2j-2)).
// The error bound is the cumulative minimum of the raw bound
// (2 + nbd(N-1) + 1/(N-1)) / (16 (N-1)^2), which is non-monotone: it
// increases when N crosses a power of two from 2^4 on.
class GammaProvider final : public SeriesProvider {
  public:
    Rational term(std::uint64_t j) const override;
    Rational error_bound(std::uint64_t n) const override;
    std::string name() const override { return "gamma"; }

    // Raw bound before the cumulative-minimum envelope; N >= 2.
    static Rational raw_error(std::uint64_t n);

  private:
    mutable std::mutex mutex_;
    mutable NbdMemo nbd_memo_;
    // prefix minima of raw_error over powers of two >= 16, grown lazily
    mutable std::vector<Rational> pow_mins_;
    mutable std::uint64_t next_pow_ = 16;
};

// pi/4 via Euler's Machin-like formula arctan(1/2) + arctan(1/3), with the
// alternating arctan series folded into positive terms. The error bound
// (2^{-4N-1} + 3^{-4N-1}) / (4N+1) decays exponentially.
class PiQuarterProvider final : public SeriesProvider {
  public:
    Rational term(std::uint64_t j) const override;
    Rational error_bound(std::uint64_t n) const override;
    std::string name() const override { return "pi4"; }
};

// ln 2 = ln(3/2) + ln(4/3) as the alternating series with
// b_j = (2^-j + 3^-j)/j, routed through the alternating adapter.
ProviderPtr ln2_provider();

// Looks up "gamma", "pi4", "ln2" or "rational:n/d".
ProviderPtr make_provider(std::string_view name);

}  // namespace buffon
