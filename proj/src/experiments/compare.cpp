#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "wpcn/error.hpp"
#include "wpcn/experiments.hpp"

namespace wpcn::experiments {

ComparisonReport compare_methods(const ExperimentConfig& config) {
    if (config.methods.size() < 2) throw DomainError("compare needs at least two methods");
    ComparisonReport report;
    report.data = run_sweep(config);
    const std::size_t per_point = config.methods.size();
    const std::size_t points = report.data.rows.size() / per_point;
    for (std::size_t p = 0; p < points; ++p) {
        const double swept = config.sweep ? config.grid[p] : 0.0;
        for (std::size_t a = 0; a < per_point; ++a) {
            for (std::size_t b = a + 1; b < per_point; ++b) {
                const ResultRow& ra = report.data.rows[p * per_point + a];
                const ResultRow& rb = report.data.rows[p * per_point + b];
                ComparisonEntry e;
                e.point = p;
                e.swept_value = swept;
                e.first = ra.method;
                e.second = rb.method;
                e.first_value = ra.outage;
                e.second_value = rb.outage;
                e.gap = std::fabs(ra.outage - rb.outage);
                // Combined standard error of whichever sides are stochastic.
                double variance = 0.0;
                bool stochastic = false;
                for (const ResultRow* r : {&ra, &rb}) {
                    if (r->std_error) {
                        stochastic = true;
                        variance += *r->std_error * *r->std_error;
                    }
                }
                double allowed = config.abs_tolerance;
                if (stochastic) {
                    const double se = std::sqrt(variance);
                    e.z_score = se > 0.0 ? e.gap / se
                                         : (e.gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
                    allowed = std::max(config.z_threshold * se, config.abs_tolerance);
                }
                e.pass = !std::isnan(e.gap) && e.gap <= allowed;
                report.all_pass = report.all_pass && e.pass;
                report.entries.push_back(e);
            }
        }
    }
    return report;
}

nlohmann::json ComparisonReport::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json item = {{"point", e.point},
                               {"swept_value", e.swept_value},
                               {"first", wpcn::to_string(e.first)},
                               {"second", wpcn::to_string(e.second)},
                               {"pass", e.pass}};
        item["first_value"] = std::isnan(e.first_value) ? nlohmann::json(nullptr) : nlohmann::json(e.first_value);
        item["second_value"] = std::isnan(e.second_value) ? nlohmann::json(nullptr) : nlohmann::json(e.second_value);
        item["gap"] = std::isnan(e.gap) ? nlohmann::json(nullptr) : nlohmann::json(e.gap);
        item["z_score"] = e.z_score && std::isfinite(*e.z_score) ? nlohmann::json(*e.z_score) : nlohmann::json(nullptr);
        list.push_back(std::move(item));
    }
    return {{"metadata", data.metadata}, {"rows", rows_to_json(data.rows)}, {"comparisons", list}, {"all_pass", all_pass}};
}

std::string ComparisonReport::summary() const {
    std::ostringstream out;
    std::size_t failed = 0;
    for (const auto& e : entries) {
        if (!e.pass) ++failed;
        out << (e.pass ? "PASS " : "FAIL ") << "point " << e.point;
        if (data.metadata.contains("sweep")) out << " (" << e.swept_value << ")";
        out << ": " << wpcn::to_string(e.first) << '=' << std::setprecision(6) << e.first_value << ' '
            << wpcn::to_string(e.second) << '=' << e.second_value << " gap=" << e.gap;
        if (e.z_score) out << " z=" << std::setprecision(3) << *e.z_score;
        out << '\n';
    }
    out << entries.size() - failed << '/' << entries.size() << " comparisons passed\n";
    return out.str();
}

}  // namespace wpcn::experiments
