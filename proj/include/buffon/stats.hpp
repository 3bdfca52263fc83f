#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "buffon/sampler.hpp"

namespace buffon {

// Monte Carlo aggregates over seeded trials. All fields are integer
// counters so that merging shard partials is exact and order-independent.
struct Summary {
    static constexpr std::size_t kTailMax = 64;

    std::string constant;
    std::string prng = "mt19937_64/seed_seq";
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned shards = 1;

    std::uint64_t sum_y = 0;
    std::uint64_t sum_l = 0;
    std::uint64_t sum_l_sq = 0;  // for an empirical variance of L
    std::uint64_t sum_m = 0;
    std::uint64_t sum_nm = 0;
    std::uint64_t max_l = 0;
    std::uint64_t max_m = 0;
    std::uint64_t max_nm = 0;

    // tail_l_gt[i] counts trials with L > i (index 0 unused), and so on.
    std::array<std::uint64_t, kTailMax + 1> tail_l_gt{};
    std::array<std::uint64_t, kTailMax + 1> tail_nm_gt{};
    std::array<std::uint64_t, kTailMax + 1> tail_m_ge{};

    // Observed support of N_M with multiplicities.
    std::map<std::uint64_t, std::uint64_t> nm_histogram;

    void add(const Trace& trace);
    void merge(const Summary& other);

    double mean_y() const { return ratio(sum_y); }
    double mean_l() const { return ratio(sum_l); }
    double mean_m() const { return ratio(sum_m); }
    double mean_nm() const { return ratio(sum_nm); }

  private:
    double ratio(std::uint64_t sum) const {
        return trials == 0 ? 0.0
                           : static_cast<double>(sum) /
                                 static_cast<double>(trials);
    }
};

// Runs `trials` independent seeded samples, sharded over worker threads.
// Per-trial streams are derived from (master_seed, trial_index), so the
// result does not depend on the shard count.
Summary run_trials(const ProviderPtr& provider, std::uint64_t trials,
                   std::uint64_t master_seed, unsigned shards,
                   const SamplerLimits& limits = {});

// Exact enumeration bounds on Pr[Y=1], randomness-free: resolves every
// stopping path up to depth B and brackets theta by exact rationals.
struct MassBracket {
    std::uint64_t depth = 0;
    Rational p_one_low;   // exact mass of Y=1 among paths resolved by depth B
    Rational unresolved;  // mass of paths still running after depth B
};

// Enumeration is deterministic and bounded, so it gets a roomier default
// term cap than a single random sample (gamma at depth 40 needs ~1.25e6
// terms).
inline SamplerLimits enumeration_limits() {
    return SamplerLimits{4096, 8'000'000};
}

MassBracket exact_mass(const ProviderPtr& provider, std::uint64_t depth,
                       const SamplerLimits& limits = enumeration_limits());

// One plot-ready tail cell: empirical exceedance probability next to its
// theoretical bound.
struct TailRow {
    std::uint64_t index = 0;        // l or n
    std::uint64_t exceedances = 0;  // observed count above the index
    double empirical = 0.0;
    double bound = 0.0;
    bool attains_bound = false;  // L rows where s_l = 1: Pr equals the bound
    bool checked = false;        // enough exceedances to compare reliably
    bool violation = false;
};

struct TailReport {
    std::vector<TailRow> l_rows;   // bound 2^{-l+1}
    std::vector<TailRow> nm_rows;  // bound 4*eps(n)
    bool any_violation = false;
};

// Cells with fewer than 100 exceedances are reported but not checked.
// Where the bound is attained exactly (s_l = 1) the check allows a
// 5-sigma binomial slack; elsewhere the true probability is at most half
// the bound and the bound is checked directly.
TailReport tail_report(const Summary& summary, const ProviderPtr& provider,
                       const SamplerLimits& limits = {});

}  // namespace buffon
