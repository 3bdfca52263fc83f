#include "buffon/schedule.hpp"

#include <optional>

namespace buffon {

namespace {

constexpr std::uint64_t kPrecisionCap = 1u << 16;

struct NeedMorePrecision {};

enum class Tri { kFalse, kTrue, kUnknown };

Tri tri_and(Tri a, Tri b) {
    if (a == Tri::kFalse || b == Tri::kFalse) return Tri::kFalse;
    if (a == Tri::kTrue && b == Tri::kTrue) return Tri::kTrue;
    return Tri::kUnknown;
}

// Dyadic bracket [lo, hi] * 2^-P around an exact nonnegative value.
struct Bracket {
    BigInt lo;
    BigInt hi;

    void add_rational(const Rational& r, std::uint64_t precision) {
        BigInt scaled_num = r.num() << precision;
        BigInt q = scaled_num / r.den();
        lo += q;
        hi += q + (q * r.den() == scaled_num ? 0 : 1);
    }

    // value <= t ?   (t is an exact mantissa at the same precision)
    Tri le(const BigInt& t) const {
        if (hi <= t) return Tri::kTrue;
        if (lo > t) return Tri::kFalse;
        return Tri::kUnknown;
    }

    // value > t ?
    Tri gt(const BigInt& t) const {
        if (lo > t) return Tri::kTrue;
        if (hi <= t) return Tri::kFalse;
        return Tri::kUnknown;
    }
};

std::vector<ScheduleStep> run_at_precision(const SeriesProvider& provider,
                                           std::uint64_t depth,
                                           std::uint64_t precision,
                                           const SamplerLimits& limits) {
    auto certain = [](Tri t) {
        if (t == Tri::kUnknown) throw NeedMorePrecision{};
        return t == Tri::kTrue;
    };

    std::vector<ScheduleStep> steps;
    steps.reserve(depth);

    Bracket sum{0, 0};
    Rational eps(1);  // running cumulative minimum of the error bound
    Bracket eps_bracket{0, 0};
    eps_bracket.add_rational(eps, precision);
    std::uint64_t terms = 0;
    BigInt ell = 0;  // exact mantissa at 2^-precision
    int selector = 0;

    for (std::uint64_t k = 1; k <= depth; ++k) {
        if (k > limits.max_iterations) {
            throw IterationCapError("iteration cap exceeded");
        }
        ell += BigInt(selector) << (precision - k);
        const BigInt threshold = ell + (BigInt(1) << (precision - k));
        const BigInt half = BigInt(1) << (precision - k - 1);

        while (true) {
            Bracket upper{sum.lo + eps_bracket.lo, sum.hi + eps_bracket.hi};
            if (certain(upper.le(threshold))) {
                selector = 0;
                break;
            }
            if (certain(sum.gt(threshold))) {
                selector = 2;
                break;
            }
            if (certain(tri_and(sum.gt(ell + half),
                                upper.le(threshold + half)))) {
                selector = 1;
                break;
            }
            if (terms >= limits.max_terms) {
                throw DivergenceError(
                    "max-terms cap (" + std::to_string(limits.max_terms) +
                    ") exceeded at iteration " + std::to_string(k) +
                    "; the provider's error bound does not shrink");
            }
            terms += 1;
            sum.add_rational(provider.term(terms), precision);
            Rational e = provider.error_bound(terms);
            if (e < eps) {
                eps = std::move(e);
            }
            eps_bracket = Bracket{0, 0};
            eps_bracket.add_rational(eps, precision);
        }
        steps.push_back({terms, selector});
    }
    return steps;
}

}  // namespace

std::vector<ScheduleStep> fast_schedule(const ProviderPtr& provider,
                                        std::uint64_t depth,
                                        const SamplerLimits& limits) {
    std::uint64_t precision = std::max<std::uint64_t>(128, depth + 32);
    while (precision <= kPrecisionCap) {
        try {
            return run_at_precision(*provider, depth, precision, limits);
        } catch (const NeedMorePrecision&) {
            precision *= 2;
        }
    }
    // The bracket straddles a comparison at every precision, which means
    // an exact tie; settle it with full rational arithmetic.
    return compute_schedule(provider, depth, limits);
}

}  // namespace buffon
