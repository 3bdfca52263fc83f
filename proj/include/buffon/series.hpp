#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "buffon/rational.hpp"

namespace buffon {

// Contract a target constant theta in (0,1) must satisfy:
//   - term(j) > 0 for all j >= 1, and sum_j term(j) = theta (or 1-theta
//     when negate_output() is set);
//   - error_bound(0) = 1, error_bound(n) -> 0, and partial sums bracket
//     the target: sum_{j<=n} term(j) < theta <= sum + error_bound(n).
// term and error_bound are pure functions of their arguments; memoizing
// implementations must tolerate concurrent queries.
class SeriesProvider {
  public:
    virtual ~SeriesProvider() = default;

    virtual Rational term(std::uint64_t j) const = 0;
    virtual Rational error_bound(std::uint64_t n) const = 0;

    // When set, the sampler flips the final output bit (the series
    // represents 1 - theta).
    virtual bool negate_output() const { return false; }

    virtual std::string name() const = 0;
};

using ProviderPtr = std::shared_ptr<const SeriesProvider>;

// Replaces the error bound by its cumulative minimum, computed
// incrementally. Idempotent on already-monotone bounds.
ProviderPtr monotone_envelope(ProviderPtr inner);

// Reduces an alternating series sum (-1)^{j+1} b_j, with b_j positive and
// decreasing to 0, to positive terms a_j = b_{2j-1} - b_{2j} with
// error_bound(n) = b_{2n+1}. A non-positive computed term raises
// ContractViolationError (checked lazily, at evaluation).
ProviderPtr alternating_adapter(std::string name,
                                std::function<Rational(std::uint64_t)> b);

// Degenerate provider for a rational target n/d in (0,1): a single term
// n/d with error_bound(n) = 0 for n >= 1.
ProviderPtr rational_provider(BigInt n, BigInt d);

// Same series, output flipped: sampling yields a (1-theta)-complement coin.
ProviderPtr complemented(ProviderPtr inner);

}  // namespace buffon
