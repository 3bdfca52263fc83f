#include "buffon/stats.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "buffon/bit_source.hpp"
#include "buffon/schedule.hpp"

namespace buffon {

void Summary::add(const Trace& trace) {
    trials += 1;
    sum_y += static_cast<std::uint64_t>(trace.y);
    sum_l += trace.l;
    sum_l_sq += trace.l * trace.l;
    sum_m += trace.m;
    sum_nm += trace.n_m;
    max_l = std::max(max_l, trace.l);
    max_m = std::max(max_m, trace.m);
    max_nm = std::max(max_nm, trace.n_m);
    for (std::uint64_t l = 1; l <= kTailMax && l < trace.l; ++l) {
        tail_l_gt[l] += 1;
    }
    for (std::uint64_t n = 1; n <= kTailMax && n < trace.n_m; ++n) {
        tail_nm_gt[n] += 1;
    }
    for (std::uint64_t m = 1; m <= kTailMax && m <= trace.m; ++m) {
        tail_m_ge[m] += 1;
    }
    nm_histogram[trace.n_m] += 1;
}

void Summary::merge(const Summary& other) {
    trials += other.trials;
    sum_y += other.sum_y;
    sum_l += other.sum_l;
    sum_l_sq += other.sum_l_sq;
    sum_m += other.sum_m;
    sum_nm += other.sum_nm;
    max_l = std::max(max_l, other.max_l);
    max_m = std::max(max_m, other.max_m);
    max_nm = std::max(max_nm, other.max_nm);
    for (std::size_t i = 0; i <= kTailMax; ++i) {
        tail_l_gt[i] += other.tail_l_gt[i];
        tail_nm_gt[i] += other.tail_nm_gt[i];
        tail_m_ge[i] += other.tail_m_ge[i];
    }
    for (const auto& [value, count] : other.nm_histogram) {
        nm_histogram[value] += count;
    }
}

Summary run_trials(const ProviderPtr& provider, std::uint64_t trials,
                   std::uint64_t master_seed, unsigned shards,
                   const SamplerLimits& limits) {
    if (trials < 1) {
        throw DomainError("run_trials: trials must be >= 1");
    }
    if (shards < 1) {
        shards = 1;
    }
    shards = static_cast<unsigned>(
        std::min<std::uint64_t>(shards, trials));

    std::vector<Summary> partials(shards);
    std::vector<std::string> failures(shards);

    auto worker = [&](unsigned shard) {
        MemoizedEngine engine(provider, limits);
        std::uint64_t begin = trials * shard / shards;
        std::uint64_t end = trials * (shard + 1) / shards;
        for (std::uint64_t t = begin; t < end; ++t) {
            SeededSource source(master_seed, t);
            try {
                partials[shard].add(engine.sample(source));
            } catch (const Error& e) {
                failures[shard] =
                    "trial " + std::to_string(t) + ": " + e.what();
                return;
            }
        }
    };

    if (shards == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(shards);
        for (unsigned s = 0; s < shards; ++s) {
            threads.emplace_back(worker, s);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    for (const auto& failure : failures) {
        if (!failure.empty()) {
            throw Error("run_trials: " + failure);
        }
    }

    Summary total;
    for (const Summary& partial : partials) {
        total.merge(partial);
    }
    total.constant = provider->name();
    total.seed = master_seed;
    total.shards = shards;
    return total;
}

MassBracket exact_mass(const ProviderPtr& provider, std::uint64_t depth,
                       const SamplerLimits& limits) {
    if (depth < 1) {
        throw DomainError("exact_mass: depth must be >= 1");
    }
    const bool negate = provider->negate_output();
    const std::vector<ScheduleStep> steps =
        fast_schedule(provider, depth, limits);

    MassBracket bracket;
    bracket.depth = depth;
    bracket.p_one_low = Rational(0);
    for (std::uint64_t m = 1; m <= depth; ++m) {
        const int s = steps[m - 1].selector;
        const int one_selector = negate ? 0 : 2;
        if (s == one_selector) {
            bracket.p_one_low += dyadic(m);
        } else if (s == 1) {
            // The extra bit is drawn at once, so each middle stop
            // resolves half its mass to Y=1.
            bracket.p_one_low += dyadic(m + 1);
        }
    }
    bracket.unresolved = dyadic(depth);
    return bracket;
}

TailReport tail_report(const Summary& summary, const ProviderPtr& provider,
                       const SamplerLimits& limits) {
    if (summary.trials == 0) {
        throw DomainError("tail_report: empty summary");
    }
    const double trials = static_cast<double>(summary.trials);

    std::uint64_t l_max = 0;
    std::uint64_t n_max = 0;
    for (std::uint64_t i = 1; i <= Summary::kTailMax; ++i) {
        if (summary.tail_l_gt[i] > 0) l_max = i;
        if (summary.tail_nm_gt[i] > 0) n_max = i;
    }

    // s_l decides whether Pr[L > l] attains its bound or only half of it.
    const std::vector<ScheduleStep> steps =
        l_max > 0 ? compute_schedule(provider, l_max, limits)
                  : std::vector<ScheduleStep>{};

    ProviderPtr enveloped = monotone_envelope(provider);

    TailReport report;
    for (std::uint64_t l = 1; l <= l_max; ++l) {
        TailRow row;
        row.index = l;
        row.exceedances = summary.tail_l_gt[l];
        row.empirical = static_cast<double>(row.exceedances) / trials;
        row.bound = std::ldexp(1.0, -static_cast<int>(l) + 1);
        row.attains_bound = steps[l - 1].selector == 1;
        row.checked = row.exceedances >= 100;
        if (row.checked) {
            double slack =
                row.attains_bound
                    ? 5.0 * std::sqrt(row.bound * (1.0 - row.bound) / trials)
                    : 0.0;
            row.violation = row.empirical > row.bound + slack;
        }
        report.any_violation |= row.violation;
        report.l_rows.push_back(row);
    }
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        TailRow row;
        row.index = n;
        row.exceedances = summary.tail_nm_gt[n];
        row.empirical = static_cast<double>(row.exceedances) / trials;
        row.bound = 4.0 * enveloped->error_bound(n).approx();
        row.checked = row.exceedances >= 100;
        if (row.checked) {
            row.violation = row.empirical > row.bound;
        }
        report.any_violation |= row.violation;
        report.nm_rows.push_back(row);
    }
    return report;
}

}  // namespace buffon
