#pragma once

#include <cstdint>
#include <vector>

#include "buffon/bit_source.hpp"
#include "buffon/series.hpp"

namespace buffon {

struct SamplerLimits {
    std::uint64_t max_iterations = 4096;
    std::uint64_t max_terms = 1'000'000;
};

// Per-iteration variables of the interval-refinement schedule. After
// iteration k completes, `lower` is a multiple of 2^-(k+1) and the
// quantized interval is (lower + selector*2^-(k+1), ... + 2^-k].
struct SamplerState {
    std::uint64_t k = 0;
    std::uint64_t terms = 0;        // series terms consumed, N_k
    Rational partial_sum{0};        // unquantized lower bound
    Rational error{1};              // current error bound, eps(N_k)
    Rational lower{0};              // quantized lower endpoint, ell_k
    int selector = 0;               // s_k in {0,1,2}
};

struct ScheduleStep {
    std::uint64_t terms;  // N_k
    int selector;         // s_k

    bool operator==(const ScheduleStep&) const = default;
};

// Per-sample telemetry. l = m, plus one extra bit when the final
// selector is 1.
struct Trace {
    int y = 0;
    std::uint64_t m = 0;
    std::uint64_t l = 0;
    std::uint64_t n_m = 0;
    std::vector<ScheduleStep> schedule;
};

// Raised when a replay source runs dry mid-sample; carries the schedule
// visited so far.
struct BitsExhaustedError : Error {
    explicit BitsExhaustedError(std::vector<ScheduleStep> partial)
        : Error("bit source exhausted before the sample terminated"),
          schedule(std::move(partial)) {}

    std::vector<ScheduleStep> schedule;
};

// One deterministic iteration: bumps k, shifts the quantized lower
// endpoint by the previous selector, then adds series terms one at a
// time until a selector is decided. Consumes no random bits. The
// provider must already have a monotone error bound.
void advance_iteration(SamplerState& state, const SeriesProvider& provider,
                       const SamplerLimits& limits = {});

// Runs the full algorithm against a bit source. The error bound is
// passed through the cumulative-minimum envelope unconditionally.
Trace sample(const ProviderPtr& provider, BitSource& source,
             const SamplerLimits& limits = {});

// Fast path for rational theta = n/d: draws nbd(d) bits to form an
// integer t, rejects t > d-1, outputs 1 iff t <= n-1.
Trace sample_rational(const BigInt& n, const BigInt& d, BitSource& source);

// Caches the deterministic per-iteration snapshots so repeated samples
// only compute series terms when they reach a new maximum iteration.
// Traces are bit-for-bit identical to unmemoized sampling.
class MemoizedEngine {
  public:
    explicit MemoizedEngine(ProviderPtr provider, SamplerLimits limits = {});

    Trace sample(BitSource& source);

    // Extends the cache to `depth` iterations and returns the snapshots.
    const std::vector<SamplerState>& states_up_to(std::uint64_t depth);

    const std::vector<SamplerState>& snapshots() const { return snapshots_; }
    const ProviderPtr& provider() const { return provider_; }

  private:
    const SamplerState& state_at(std::uint64_t k);

    ProviderPtr provider_;  // enveloped
    bool negate_;
    SamplerLimits limits_;
    std::vector<SamplerState> snapshots_;
};

// The (N_k, s_k) prefix of a provider's schedule, which depends only on
// the provider, never on the bit source.
std::vector<ScheduleStep> compute_schedule(const ProviderPtr& provider,
                                           std::uint64_t depth,
                                           const SamplerLimits& limits = {});

}  // namespace buffon
