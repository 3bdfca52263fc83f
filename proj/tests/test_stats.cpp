#include <doctest.h>

#include <nlohmann/json.hpp>

#include "buffon/constants.hpp"
#include "buffon/report.hpp"
#include "buffon/schedule.hpp"
#include "buffon/stats.hpp"
#include "references.hpp"

using buffon::MassBracket;
using buffon::Rational;
using buffon::Summary;

TEST_CASE("exact mass at depth 3 matches hand enumeration") {
    // gamma selectors at k=1..3 are 2,0,0: only the k=1 stop yields Y=1,
    // with mass 2^-1.
    MassBracket gamma = buffon::exact_mass(buffon::make_provider("gamma"), 3);
    CHECK(gamma.p_one_low == Rational(1, 2));
    CHECK(gamma.unresolved == Rational(1, 8));

    // pi/4 selectors are 2,2,0: stops at k=1 and k=2 yield Y=1.
    MassBracket pi4 = buffon::exact_mass(buffon::make_provider("pi4"), 3);
    CHECK(pi4.p_one_low == Rational(3, 4));
    CHECK(pi4.unresolved == Rational(1, 8));
}

TEST_CASE("exact mass brackets a rational target tightly") {
    auto p = buffon::make_provider("rational:1/3");
    MassBracket bracket = buffon::exact_mass(p, 40);
    const Rational theta(1, 3);
    CHECK(bracket.p_one_low <= theta);
    CHECK(theta <= bracket.p_one_low + bracket.unresolved);
    CHECK(bracket.unresolved <= buffon::dyadic(39));
    CHECK(bracket.depth == 40);
}

TEST_CASE("exact mass brackets the built-in constants") {
    struct Case {
        const char* name;
        Rational theta;
    };
    const Case cases[] = {
        {"pi4", buffon::testing::ref_pi4()},
        {"ln2", buffon::testing::ref_ln2()},
    };
    for (const Case& c : cases) {
        CAPTURE(c.name);
        MassBracket bracket =
            buffon::exact_mass(buffon::make_provider(c.name), 30);
        CHECK(bracket.p_one_low < c.theta);
        CHECK(c.theta <= bracket.p_one_low + bracket.unresolved);
        CHECK(bracket.unresolved <= buffon::dyadic(29));
    }
}

TEST_CASE("dyadic schedule engine agrees with the exact one") {
    const buffon::SamplerLimits limits{4096, 8'000'000};
    for (const char* name :
         {"gamma", "pi4", "ln2", "rational:1/3", "rational:1/2"}) {
        CAPTURE(name);
        auto provider = buffon::make_provider(name);
        auto fast = buffon::fast_schedule(provider, 25, limits);
        auto exact = buffon::compute_schedule(provider, 25, limits);
        CHECK(fast == exact);
    }
}

TEST_CASE("trial counters are invariant under resharding") {
    auto provider = buffon::make_provider("pi4");
    Summary one = buffon::run_trials(provider, 2000, 31, 1);
    Summary eight = buffon::run_trials(provider, 2000, 31, 8);
    CHECK(one.sum_y == eight.sum_y);
    CHECK(one.sum_l == eight.sum_l);
    CHECK(one.sum_l_sq == eight.sum_l_sq);
    CHECK(one.sum_m == eight.sum_m);
    CHECK(one.sum_nm == eight.sum_nm);
    CHECK(one.max_l == eight.max_l);
    CHECK(one.max_m == eight.max_m);
    CHECK(one.max_nm == eight.max_nm);
    CHECK(one.tail_l_gt == eight.tail_l_gt);
    CHECK(one.tail_nm_gt == eight.tail_nm_gt);
    CHECK(one.tail_m_ge == eight.tail_m_ge);
    CHECK(one.nm_histogram == eight.nm_histogram);
    CHECK(eight.trials == 2000);
    CHECK(eight.shards == 8);
}

TEST_CASE("summary counters are internally consistent") {
    auto provider = buffon::make_provider("gamma");
    Summary s = buffon::run_trials(provider, 5000, 5, 4);
    CHECK(s.trials == 5000);
    CHECK(s.sum_l >= s.sum_m);           // L = M, plus occasional extra bit
    CHECK(s.sum_l <= s.sum_m + 5000);
    CHECK(s.sum_y <= s.trials);
    CHECK(s.tail_l_gt[1] <= s.trials);
    CHECK(s.tail_m_ge[1] == s.trials);   // every M is >= 1
    for (std::size_t i = 2; i <= Summary::kTailMax; ++i) {
        CHECK(s.tail_l_gt[i] <= s.tail_l_gt[i - 1]);
        CHECK(s.tail_m_ge[i] <= s.tail_m_ge[i - 1]);
    }
    std::uint64_t histogram_total = 0;
    std::uint64_t histogram_sum = 0;
    for (const auto& [value, count] : s.nm_histogram) {
        histogram_total += count;
        histogram_sum += value * count;
    }
    CHECK(histogram_total == s.trials);
    CHECK(histogram_sum == s.sum_nm);
    CHECK(s.mean_l() == doctest::Approx(static_cast<double>(s.sum_l) / 5000));
}

TEST_CASE("tail report flags no violations on honest data") {
    auto provider = buffon::make_provider("pi4");
    Summary s = buffon::run_trials(provider, 50'000, 17, 4);
    buffon::TailReport report = buffon::tail_report(s, provider);
    CHECK_FALSE(report.any_violation);
    bool any_checked = false;
    for (const auto& row : report.l_rows) {
        any_checked = any_checked || row.checked;
        if (row.checked) {
            CHECK_FALSE(row.violation);
        }
    }
    CHECK(any_checked);
    CHECK_FALSE(report.nm_rows.empty());
}

TEST_CASE("json serialization round-trips the key fields") {
    auto provider = buffon::make_provider("rational:1/3");
    MassBracket bracket = buffon::exact_mass(provider, 10);
    nlohmann::json jb = buffon::to_json(bracket);
    CHECK(jb["depth"] == 10);
    CHECK(jb["p_one_low"].is_string());
    CHECK(Rational::parse(jb["p_one_low"].get<std::string>()) ==
          bracket.p_one_low);
    CHECK(jb["p_one_low_approx"].get<double>() ==
          doctest::Approx(bracket.p_one_low.approx()));

    buffon::ReplaySource bits("110");
    buffon::Trace trace = buffon::sample(buffon::make_provider("gamma"), bits);
    nlohmann::json jt = buffon::to_json(trace);
    CHECK(jt["y"] == 0);
    CHECK(jt["m"] == 3);
    CHECK(jt["l"] == 3);
    CHECK(jt["n_m"] == 4);
    CHECK(jt["schedule"].size() == 3);
    CHECK(jt["schedule"][0][0] == 2);
    CHECK(jt["schedule"][0][1] == 2);

    Summary s = buffon::run_trials(provider, 100, 1, 2);
    nlohmann::json js = buffon::to_json(s);
    CHECK(js["trials"] == 100);
    CHECK(js["seed"] == 1);
    CHECK(js["constant"] == "rational:1/3");

    std::string csv = buffon::summary_csv(s);
    CHECK(csv.find("trials") != std::string::npos);

    buffon::TailReport report = buffon::tail_report(s, provider);
    std::string tails = buffon::tails_csv(report);
    CHECK(tails.rfind("kind,index,exceedances,empirical,bound", 0) == 0);
}
