#include <doctest.h>

#include <atomic>
#include <vector>

#include "buffon/bit_source.hpp"
#include "buffon/constants.hpp"
#include "buffon/sampler.hpp"
#include "references.hpp"

using buffon::MemoizedEngine;
using buffon::Rational;
using buffon::ReplaySource;
using buffon::SamplerLimits;
using buffon::SamplerState;
using buffon::ScheduleStep;
using buffon::SeededSource;
using buffon::Trace;

namespace {

bool traces_equal(const Trace& a, const Trace& b) {
    return a.y == b.y && a.m == b.m && a.l == b.l && a.n_m == b.n_m &&
           a.schedule == b.schedule;
}

// Wraps a provider and counts term evaluations.
class CountingProvider final : public buffon::SeriesProvider {
  public:
    explicit CountingProvider(buffon::ProviderPtr inner)
        : inner_(std::move(inner)) {}

    Rational term(std::uint64_t j) const override {
        ++term_calls;
        return inner_->term(j);
    }
    Rational error_bound(std::uint64_t n) const override {
        return inner_->error_bound(n);
    }
    std::string name() const override { return inner_->name(); }

    mutable std::atomic<std::uint64_t> term_calls{0};

  private:
    buffon::ProviderPtr inner_;
};

// Error bound stuck at 1/2: the selector never resolves.
class StuckProvider final : public buffon::SeriesProvider {
  public:
    Rational term(std::uint64_t j) const override {
        return Rational(1, 10).pow(static_cast<long long>(j));
    }
    Rational error_bound(std::uint64_t n) const override {
        return n == 0 ? Rational(1) : Rational(1, 2);
    }
    std::string name() const override { return "stuck"; }
};

}  // namespace

TEST_CASE("gamma schedule prefix") {
    auto schedule = buffon::compute_schedule(buffon::make_provider("gamma"), 9);
    const std::vector<ScheduleStep> expected = {
        {2, 2}, {3, 0}, {4, 0}, {4, 2}, {5, 0},
        {6, 1}, {10, 1}, {13, 0}, {19, 2}};
    CHECK(schedule == expected);
}

TEST_CASE("pi/4 schedule prefix decides every step from one term") {
    auto schedule = buffon::compute_schedule(buffon::make_provider("pi4"), 6);
    const std::vector<int> selectors = {2, 2, 0, 0, 1, 1};
    REQUIRE(schedule.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(schedule[i].terms == 1);
        CHECK(schedule[i].selector == selectors[i]);
    }
}

TEST_CASE("gamma iteration internals") {
    MemoizedEngine engine(buffon::make_provider("gamma"));
    const auto& states = engine.states_up_to(2);
    REQUIRE(states.size() >= 2);

    const SamplerState& s1 = states[0];
    CHECK(s1.k == 1);
    CHECK(s1.terms == 2);
    CHECK(s1.partial_sum == Rational(13, 24));
    CHECK(s1.error == Rational(1, 4));
    CHECK(s1.lower == Rational(0));
    CHECK(s1.selector == 2);  // interval (1/2, 1]

    const SamplerState& s2 = states[1];
    CHECK(s2.k == 2);
    CHECK(s2.terms == 3);
    CHECK(s2.partial_sum == Rational(67, 120));
    CHECK(s2.error == Rational(9, 128));
    CHECK(s2.lower == Rational(1, 2));
    CHECK(s2.selector == 0);  // interval (1/2, 3/4]
}

TEST_CASE("gamma traces on fixed bit strings") {
    auto gamma = buffon::make_provider("gamma");
    SUBCASE("stop at the first bit") {
        ReplaySource bits("0");
        Trace t = buffon::sample(gamma, bits);
        CHECK(t.y == 1);
        CHECK(t.m == 1);
        CHECK(t.l == 1);
        CHECK(t.n_m == 2);
        CHECK(bits.consumed() == 1);
    }
    SUBCASE("three iterations, selector 0") {
        ReplaySource bits("110");
        Trace t = buffon::sample(gamma, bits);
        CHECK(t.y == 0);
        CHECK(t.m == 3);
        CHECK(t.l == 3);
        CHECK(t.n_m == 4);
    }
    SUBCASE("selector 1 draws one extra bit") {
        ReplaySource bits("1111101");
        Trace t = buffon::sample(gamma, bits);
        CHECK(t.m == 6);
        CHECK(t.l == 7);
        CHECK(t.n_m == 6);
        CHECK(t.y == 1);
        CHECK(bits.consumed() == 7);
    }
}

TEST_CASE("rational fast path enumerated for theta = 1/3") {
    auto run = [](const std::string& bits) {
        ReplaySource source(bits);
        return buffon::sample_rational(1, 3, source);
    };
    CHECK(run("00").y == 1);
    CHECK(run("00").l == 2);
    CHECK(run("01").y == 0);
    CHECK(run("10").y == 0);
    Trace rejected = run("1100");  // t = 3 rejected, redraw
    CHECK(rejected.y == 1);
    CHECK(rejected.l == 4);
    CHECK_THROWS_AS(run("1"), buffon::ExhaustedError);
    ReplaySource bad("00");
    CHECK_THROWS_AS(buffon::sample_rational(3, 2, bad), buffon::DomainError);
}

TEST_CASE("quantized intervals nest and contain the target") {
    struct Case {
        const char* name;
        Rational theta;
        std::uint64_t depth;
    };
    // gamma's schedule needs far more series terms per level, so it gets
    // a shallower sweep.
    const Case cases[] = {
        {"gamma", buffon::testing::ref_gamma(), 25},
        {"pi4", buffon::testing::ref_pi4(), 60},
        {"ln2", buffon::testing::ref_ln2(), 60},
    };
    // the references are truncated decimals: theta in [ref, ref + slack)
    const Rational slack = buffon::testing::ref_slack();
    for (const Case& c : cases) {
        CAPTURE(c.name);
        MemoizedEngine engine(buffon::make_provider(c.name),
                              SamplerLimits{4096, 8'000'000});
        Rational prev_lo(0);
        Rational prev_hi(1);
        for (const SamplerState& st : engine.states_up_to(c.depth)) {
            const Rational width = buffon::dyadic(st.k);
            // lower is a multiple of 2^-k
            CHECK((st.lower / width).den() == buffon::BigInt(1));
            CHECK((st.selector == 0 || st.selector == 1 || st.selector == 2));
            const Rational lo =
                st.lower + Rational(st.selector) * buffon::dyadic(st.k + 1);
            const Rational hi = lo + width;
            CHECK(prev_lo <= lo);
            CHECK(hi <= prev_hi);
            CHECK(lo < c.theta + slack);
            CHECK(c.theta <= hi);
            // the exact bracket stays inside the quantized one
            CHECK(st.partial_sum < c.theta + slack);
            CHECK(c.theta <= st.partial_sum + st.error);
            prev_lo = lo;
            prev_hi = hi;
        }
    }
}

TEST_CASE("memoized sampling is bit-identical to direct sampling") {
    auto gamma = buffon::make_provider("gamma");
    MemoizedEngine engine(gamma);
    for (std::uint64_t trial = 0; trial < 1000; ++trial) {
        SeededSource a(7, trial);
        SeededSource b(7, trial);
        Trace direct = buffon::sample(gamma, a);
        Trace memoized = engine.sample(b);
        CHECK(traces_equal(direct, memoized));
        CHECK(a.consumed() == b.consumed());
        CHECK(direct.l == a.consumed());  // L counts exactly the bits drawn
    }
}

TEST_CASE("memoized engine stops re-evaluating series terms") {
    auto counting =
        std::make_shared<CountingProvider>(buffon::make_provider("gamma"));
    MemoizedEngine engine(counting);
    engine.states_up_to(12);
    const std::uint64_t after_warmup = counting->term_calls;
    CHECK(after_warmup > 0);
    // samples within the cached depth must not touch the series again
    for (const char* bits : {"0", "10", "11110", "11111110"}) {
        ReplaySource source(bits);
        engine.sample(source);
    }
    CHECK(counting->term_calls == after_warmup);
    // a fresh engine starts over
    MemoizedEngine fresh(counting);
    ReplaySource source("0");
    fresh.sample(source);
    CHECK(counting->term_calls > after_warmup);
}

TEST_CASE("caps surface as dedicated errors") {
    SUBCASE("non-shrinking bound hits the term cap") {
        auto stuck = std::make_shared<StuckProvider>();
        ReplaySource bits("1111");
        CHECK_THROWS_AS(
            buffon::sample(stuck, bits, SamplerLimits{4096, 100}),
            buffon::DivergenceError);
    }
    SUBCASE("iteration cap") {
        ReplaySource bits("1111111111");
        CHECK_THROWS_AS(buffon::sample(buffon::make_provider("gamma"), bits,
                                       SamplerLimits{5, 1'000'000}),
                        buffon::IterationCapError);
    }
    SUBCASE("exhausted replay carries the partial schedule") {
        ReplaySource bits("11");
        try {
            buffon::sample(buffon::make_provider("gamma"), bits);
            FAIL("expected BitsExhaustedError");
        } catch (const buffon::BitsExhaustedError& e) {
            REQUIRE(e.schedule.size() == 3);
            CHECK(e.schedule[0] == ScheduleStep{2, 2});
            CHECK(e.schedule[1] == ScheduleStep{3, 0});
            CHECK(e.schedule[2] == ScheduleStep{4, 0});
        }
    }
}
