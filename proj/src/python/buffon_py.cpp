// Python bindings for the main operations: tracing, sampling, exact mass
// enumeration and Monte Carlo summaries.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "buffon/constants.hpp"
#include "buffon/report.hpp"
#include "buffon/schedule.hpp"

namespace py = pybind11;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    py::module_ json = py::module_::import("json");
    return json.attr("loads")(j.dump());
}

buffon::SamplerLimits make_limits(std::uint64_t max_terms) {
    buffon::SamplerLimits limits;
    limits.max_terms = max_terms;
    return limits;
}

}  // namespace

PYBIND11_MODULE(buffon, m) {
    m.doc() =
        "Exact Bernoulli(theta) bits from fair coins with rational "
        "arithmetic";

    m.def(
        "trace",
        [](const std::string& constant, const std::string& bits,
           std::uint64_t max_terms) {
            auto provider = buffon::make_provider(constant);
            buffon::ReplaySource source(bits);
            return json_to_py(buffon::to_json(
                buffon::sample(provider, source, make_limits(max_terms))));
        },
        py::arg("constant"), py::arg("bits"),
        py::arg("max_terms") = buffon::SamplerLimits{}.max_terms,
        "Run one sample on an explicit replay bit string.");

    m.def(
        "sample",
        [](const std::string& constant, std::uint64_t seed,
           std::uint64_t stream, std::uint64_t max_terms) {
            auto provider = buffon::make_provider(constant);
            buffon::SeededSource source(seed, stream);
            return json_to_py(buffon::to_json(
                buffon::sample(provider, source, make_limits(max_terms))));
        },
        py::arg("constant"), py::arg("seed"), py::arg("stream") = 0,
        py::arg("max_terms") = buffon::SamplerLimits{}.max_terms,
        "Draw one seeded sample and return its trace.");

    m.def(
        "sample_rational",
        [](long long n, long long d, std::uint64_t seed,
           std::uint64_t stream) {
            buffon::SeededSource source(seed, stream);
            buffon::Trace trace = buffon::sample_rational(
                buffon::BigInt(n), buffon::BigInt(d), source);
            return py::make_tuple(trace.y, trace.l);
        },
        py::arg("n"), py::arg("d"), py::arg("seed"), py::arg("stream") = 0,
        "Fast path for rational theta = n/d; returns (y, bits_used).");

    m.def(
        "exact_mass",
        [](const std::string& constant, std::uint64_t depth,
           std::uint64_t max_terms) {
            auto provider = buffon::make_provider(constant);
            return json_to_py(buffon::to_json(
                buffon::exact_mass(provider, depth, make_limits(max_terms))));
        },
        py::arg("constant"), py::arg("depth") = 40,
        py::arg("max_terms") = buffon::enumeration_limits().max_terms,
        "Exact rational bracket on Pr[Y=1] by path enumeration.");

    m.def(
        "run_trials",
        [](const std::string& constant, std::uint64_t trials,
           std::uint64_t seed, unsigned shards, std::uint64_t max_terms) {
            auto provider = buffon::make_provider(constant);
            buffon::Summary summary = buffon::run_trials(
                provider, trials, seed, shards, make_limits(max_terms));
            buffon::TailReport tails = buffon::tail_report(
                summary, provider, make_limits(max_terms));
            nlohmann::json report{{"summary", buffon::to_json(summary)},
                                  {"tails", buffon::to_json(tails)}};
            return json_to_py(report);
        },
        py::arg("constant"), py::arg("trials"), py::arg("seed") = 0,
        py::arg("shards") = 1,
        py::arg("max_terms") = buffon::SamplerLimits{}.max_terms,
        "Seeded Monte Carlo summary plus tail-bound report.");

    py::register_exception<buffon::DomainError>(m, "DomainError",
                                                PyExc_ValueError);
}
