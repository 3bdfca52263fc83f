#include "buffon/report.hpp"

#include <iomanip>
#include <sstream>

namespace buffon {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

json row_json(const TailRow& row) {
    return json{{"index", row.index},
                {"exceedances", row.exceedances},
                {"empirical", row.empirical},
                {"bound", row.bound},
                {"attains_bound", row.attains_bound},
                {"checked", row.checked},
                {"violation", row.violation}};
}

}  // namespace

json to_json(const Trace& trace) {
    json schedule = json::array();
    for (const ScheduleStep& step : trace.schedule) {
        schedule.push_back(json::array({step.terms, step.selector}));
    }
    return json{{"y", trace.y},
                {"m", trace.m},
                {"l", trace.l},
                {"n_m", trace.n_m},
                {"schedule", std::move(schedule)}};
}

json to_json(const MassBracket& bracket) {
    Rational high = bracket.p_one_low + bracket.unresolved;
    return json{{"depth", bracket.depth},
                {"p_one_low", bracket.p_one_low.str()},
                {"unresolved", bracket.unresolved.str()},
                {"p_one_high", high.str()},
                // decimal fields are approximate renderings only
                {"p_one_low_approx", bracket.p_one_low.approx()},
                {"p_one_high_approx", high.approx()}};
}

json to_json(const Summary& summary) {
    return json{{"constant", summary.constant},
                {"trials", summary.trials},
                {"seed", summary.seed},
                {"shards", summary.shards},
                {"prng", summary.prng},
                {"mean_y_approx", summary.mean_y()},
                {"mean_l_approx", summary.mean_l()},
                {"mean_m_approx", summary.mean_m()},
                {"mean_nm_approx", summary.mean_nm()},
                {"sum_y", summary.sum_y},
                {"sum_l", summary.sum_l},
                {"sum_m", summary.sum_m},
                {"sum_nm", summary.sum_nm},
                {"max_l", summary.max_l},
                {"max_m", summary.max_m},
                {"max_nm", summary.max_nm}};
}

json to_json(const TailReport& report) {
    json l_rows = json::array();
    for (const TailRow& row : report.l_rows) {
        l_rows.push_back(row_json(row));
    }
    json nm_rows = json::array();
    for (const TailRow& row : report.nm_rows) {
        nm_rows.push_back(row_json(row));
    }
    return json{{"l_tail", std::move(l_rows)},
                {"nm_tail", std::move(nm_rows)},
                {"any_violation", report.any_violation}};
}

std::string tails_csv(const TailReport& report) {
    std::ostringstream os;
    os << "kind,index,exceedances,empirical,bound\n";
    for (const TailRow& row : report.l_rows) {
        os << "L," << row.index << ',' << row.exceedances << ','
           << fmt(row.empirical) << ',' << fmt(row.bound) << '\n';
    }
    for (const TailRow& row : report.nm_rows) {
        os << "NM," << row.index << ',' << row.exceedances << ','
           << fmt(row.empirical) << ',' << fmt(row.bound) << '\n';
    }
    return os.str();
}

std::string summary_csv(const Summary& summary) {
    std::ostringstream os;
    os << "constant,trials,seed,shards,prng,mean_y,mean_l,mean_m,mean_nm,"
          "max_l,max_nm\n";
    os << summary.constant << ',' << summary.trials << ',' << summary.seed
       << ',' << summary.shards << ',' << summary.prng << ','
       << fmt(summary.mean_y()) << ',' << fmt(summary.mean_l()) << ','
       << fmt(summary.mean_m()) << ',' << fmt(summary.mean_nm()) << ','
       << summary.max_l << ',' << summary.max_nm << '\n';
    return os.str();
}

}  // namespace buffon
