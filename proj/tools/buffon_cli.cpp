// Command-line front end: Monte Carlo estimates, exact mass brackets,
// single-run traces on explicit bit strings, and plot-ready tail data.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "buffon/constants.hpp"
#include "buffon/report.hpp"
#include "buffon/schedule.hpp"

namespace {

struct CliConfig {
    std::string constant = "gamma";
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    unsigned shards = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t depth = 40;
    std::string bits;
    std::string format = "json";
    std::string tails_format = "csv";
    std::string out;
};

void write_output(const CliConfig& config, const std::string& text) {
    if (config.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
        throw buffon::Error("cannot open output file: " + config.out);
    }
    file << text;
}

buffon::SamplerLimits limits_from_env(std::uint64_t default_max_terms) {
    buffon::SamplerLimits limits;
    limits.max_terms = default_max_terms;
    if (const char* env = std::getenv("BUFFON_MAX_TERMS")) {
        limits.max_terms = std::stoull(env);
    }
    return limits;
}

int cmd_estimate(const CliConfig& config) {
    auto provider = buffon::make_provider(config.constant);
    auto limits = limits_from_env(buffon::SamplerLimits{}.max_terms);
    buffon::Summary summary = buffon::run_trials(
        provider, config.trials, config.seed, config.shards, limits);
    buffon::TailReport tails = buffon::tail_report(summary, provider, limits);

    if (config.format == "csv") {
        write_output(config, buffon::summary_csv(summary));
    } else {
        nlohmann::json report{{"summary", buffon::to_json(summary)},
                              {"tails", buffon::to_json(tails)}};
        write_output(config, report.dump(2) + "\n");
    }
    return tails.any_violation ? 1 : 0;
}

int cmd_enumerate(const CliConfig& config) {
    auto provider = buffon::make_provider(config.constant);
    auto limits = limits_from_env(buffon::enumeration_limits().max_terms);
    buffon::MassBracket bracket =
        buffon::exact_mass(provider, config.depth, limits);
    nlohmann::json report = buffon::to_json(bracket);
    report["constant"] = config.constant;
    write_output(config, report.dump(2) + "\n");
    return 0;
}

int cmd_trace(const CliConfig& config) {
    auto provider = buffon::make_provider(config.constant);
    auto limits = limits_from_env(buffon::SamplerLimits{}.max_terms);
    buffon::ReplaySource source(config.bits);
    try {
        buffon::Trace trace = buffon::sample(provider, source, limits);
        nlohmann::json report = buffon::to_json(trace);
        report["constant"] = config.constant;
        write_output(config, report.dump(2) + "\n");
        return 0;
    } catch (const buffon::BitsExhaustedError& e) {
        nlohmann::json schedule = nlohmann::json::array();
        for (const buffon::ScheduleStep& step : e.schedule) {
            schedule.push_back(nlohmann::json::array({step.terms,
                                                      step.selector}));
        }
        nlohmann::json report{{"constant", config.constant},
                              {"error", "bit string exhausted"},
                              {"partial_schedule", std::move(schedule)}};
        write_output(config, report.dump(2) + "\n");
        return 3;
    }
}

int cmd_tails(const CliConfig& config) {
    auto provider = buffon::make_provider(config.constant);
    auto limits = limits_from_env(buffon::SamplerLimits{}.max_terms);
    buffon::Summary summary = buffon::run_trials(
        provider, config.trials, config.seed, config.shards, limits);
    buffon::TailReport tails = buffon::tail_report(summary, provider, limits);
    if (config.tails_format == "json") {
        nlohmann::json report = buffon::to_json(tails);
        report["constant"] = config.constant;
        write_output(config, report.dump(2) + "\n");
    } else {
        write_output(config, buffon::tails_csv(tails));
    }
    return tails.any_violation ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Bernoulli(theta) sampling from fair bits"};
    app.require_subcommand(1);

    CliConfig config;

    auto add_common = [&](CLI::App* cmd, bool with_trials) {
        cmd->add_option("--constant", config.constant,
                        "gamma | pi4 | ln2 | rational:n/d")
            ->capture_default_str();
        if (with_trials) {
            cmd->add_option("--trials", config.trials, "number of trials")
                ->capture_default_str();
            cmd->add_option("--seed", config.seed, "master seed")
                ->capture_default_str();
            cmd->add_option("--shards", config.shards, "worker threads")
                ->capture_default_str();
        }
        cmd->add_option("--out", config.out, "output path (default stdout)");
    };

    CLI::App* estimate = app.add_subcommand(
        "estimate", "Monte Carlo estimate with tail-bound checks");
    add_common(estimate, true);
    estimate->add_option("--format", config.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    CLI::App* enumerate = app.add_subcommand(
        "enumerate", "Exact rational bracket on Pr[Y=1] by path enumeration");
    add_common(enumerate, false);
    enumerate->add_option("--depth", config.depth, "enumeration depth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI::App* trace = app.add_subcommand(
        "trace", "Run a single sample on an explicit bit string");
    add_common(trace, false);
    trace->add_option("--bits", config.bits, "bit string, e.g. 1101")
        ->required();

    CLI::App* tails = app.add_subcommand(
        "tails", "Plot-ready table of empirical tails vs. theoretical bounds");
    add_common(tails, true);
    tails->add_option("--format", config.tails_format, "csv | json")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (estimate->parsed()) return cmd_estimate(config);
        if (enumerate->parsed()) return cmd_enumerate(config);
        if (trace->parsed()) return cmd_trace(config);
        if (tails->parsed()) return cmd_tails(config);
    } catch (const buffon::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const buffon::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
