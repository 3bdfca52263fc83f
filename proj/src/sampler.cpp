#include "buffon/sampler.hpp"

namespace buffon {

void advance_iteration(SamplerState& state, const SeriesProvider& provider,
                       const SamplerLimits& limits) {
    state.k += 1;
    if (state.k > limits.max_iterations) {
        throw IterationCapError("iteration cap (" +
                                std::to_string(limits.max_iterations) +
                                ") exceeded");
    }
    state.lower += Rational(state.selector) * dyadic(state.k);

    const Rational threshold = state.lower + dyadic(state.k);
    const Rational half = dyadic(state.k + 1);

    while (true) {
        // Condition order and strictness follow the algorithm verbatim:
        // non-strict for s=0, strict for s=2, strict/non-strict for s=1.
        const Rational upper = state.partial_sum + state.error;
        if (upper <= threshold) {
            state.selector = 0;
            return;
        }
        if (state.partial_sum > threshold) {
            state.selector = 2;
            return;
        }
        if (state.partial_sum > state.lower + half &&
            upper <= threshold + half) {
            state.selector = 1;
            return;
        }
        if (state.terms >= limits.max_terms) {
            throw DivergenceError(
                "max-terms cap (" + std::to_string(limits.max_terms) +
                ") exceeded at iteration " + std::to_string(state.k) +
                "; the provider's error bound does not shrink");
        }
        state.terms += 1;
        state.partial_sum += provider.term(state.terms);
        state.error = provider.error_bound(state.terms);
    }
}

namespace {

Trace finish_trace(std::vector<ScheduleStep> schedule, std::uint64_t m,
                   std::uint64_t n_m, int selector, bool negate,
                   BitSource& source) {
    Trace trace;
    trace.schedule = std::move(schedule);
    trace.m = m;
    trace.n_m = n_m;
    int y;
    if (selector == 0) {
        y = 0;
    } else if (selector == 2) {
        y = 1;
    } else {
        y = source.next_bit();
    }
    if (negate) {
        y = 1 - y;
    }
    trace.y = y;
    trace.l = m + (selector == 1 ? 1 : 0);
    return trace;
}

}  // namespace

Trace sample(const ProviderPtr& provider, BitSource& source,
             const SamplerLimits& limits) {
    ProviderPtr enveloped = monotone_envelope(provider);
    SamplerState state;
    std::vector<ScheduleStep> schedule;
    try {
        while (true) {
            advance_iteration(state, *enveloped, limits);
            schedule.push_back({state.terms, state.selector});
            if (source.next_bit() == 0) {
                break;
            }
        }
        return finish_trace(std::move(schedule), state.k, state.terms,
                            state.selector, enveloped->negate_output(),
                            source);
    } catch (const ExhaustedError&) {
        throw BitsExhaustedError(std::move(schedule));
    }
}

Trace sample_rational(const BigInt& n, const BigInt& d, BitSource& source) {
    if (n < 1 || d <= n) {
        throw DomainError("sample_rational: need 0 < n < d");
    }
    const int bits = nbd(d);
    const std::uint64_t start = source.consumed();
    while (true) {
        BigInt t = 0;
        for (int i = 0; i < bits; ++i) {
            t = t * 2 + source.next_bit();
        }
        if (t <= d - 1) {
            Trace trace;
            trace.y = t <= n - 1 ? 1 : 0;
            trace.l = source.consumed() - start;  // bits * rounds
            return trace;
        }
    }
}

MemoizedEngine::MemoizedEngine(ProviderPtr provider, SamplerLimits limits)
    : provider_(monotone_envelope(std::move(provider))),
      negate_(provider_->negate_output()),
      limits_(limits) {}

const SamplerState& MemoizedEngine::state_at(std::uint64_t k) {
    while (snapshots_.size() < k) {
        SamplerState next =
            snapshots_.empty() ? SamplerState{} : snapshots_.back();
        advance_iteration(next, *provider_, limits_);
        snapshots_.push_back(std::move(next));
    }
    return snapshots_[k - 1];
}

const std::vector<SamplerState>& MemoizedEngine::states_up_to(
    std::uint64_t depth) {
    state_at(depth);
    return snapshots_;
}

Trace MemoizedEngine::sample(BitSource& source) {
    std::vector<ScheduleStep> schedule;
    std::uint64_t k = 0;
    try {
        while (true) {
            ++k;
            const SamplerState& st = state_at(k);
            schedule.push_back({st.terms, st.selector});
            if (source.next_bit() == 0) {
                return finish_trace(std::move(schedule), k, st.terms,
                                    st.selector, negate_, source);
            }
        }
    } catch (const ExhaustedError&) {
        throw BitsExhaustedError(std::move(schedule));
    }
}

std::vector<ScheduleStep> compute_schedule(const ProviderPtr& provider,
                                           std::uint64_t depth,
                                           const SamplerLimits& limits) {
    MemoizedEngine engine(provider, limits);
    std::vector<ScheduleStep> steps;
    steps.reserve(depth);
    for (const SamplerState& st : engine.states_up_to(depth)) {
        steps.push_back({st.terms, st.selector});
    }
    return steps;
}

}  // namespace buffon
