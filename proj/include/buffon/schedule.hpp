#pragma once

#include "buffon/sampler.hpp"

namespace buffon {

// Computes the same deterministic (N_k, s_k) schedule as advance_iteration,
// but accumulates the partial sum as outward-rounded dyadic brackets of
// increasing precision instead of a fully reduced fraction. Every decision
// is certified against the bracket, restarting at double precision when a
// comparison is inconclusive (and falling back to the exact path beyond a
// precision cap), so the result is bit-identical to the exact schedule.
// Deep schedules for slowly converging series (gamma at depth 40 needs
// ~1.25e6 terms) become tractable this way.
std::vector<ScheduleStep> fast_schedule(const ProviderPtr& provider,
                                        std::uint64_t depth,
                                        const SamplerLimits& limits = {});

}  // namespace buffon
