#pragma once

// Experiment harness behind the CLI: configuration, sweeps, comparison
// reports, t1 optimization and figure datasets.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wpcn/analytic.hpp"
#include "wpcn/model.hpp"

namespace wpcn::experiments {

inline constexpr const char* kVersion = "wpcn-select 1.0.0";

enum class SweepParameter { TransmitPowerDbm, K, M, T1, SigmaE2 };

std::string to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view text);

/// start, start + step, ... up to stop (inclusive, with a small tolerance).
std::vector<double> range_grid(double start, double stop, double step);

/// Everything needed to reproduce a run. Powers are kept in dBm/dB here and
/// converted once by system().
struct ExperimentConfig {
    RectennaParams rectenna{};
    double pt_dbm = -10.0;
    double noise_dbm = -50.0;
    double t1 = 0.5;
    double q_db = 0.0;
    unsigned m = 5;

    Scheme scheme = Scheme::SBS;
    unsigned k = 2;
    std::optional<unsigned> j;  // set: pair selection (scheme must be RS or SBS)
    EhModel model = EhModel::NonLinear;
    std::vector<Method> methods{Method::Analytic};

    double sigma_e2 = 0.0;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;  // not echoed: results do not depend on it

    std::optional<SweepParameter> sweep;
    std::vector<double> grid;

    // Acceptance thresholds used by compare.
    double z_threshold = 3.0;
    double abs_tolerance = 5e-3;

    SystemParams system() const;
    bool is_pair() const { return j.has_value(); }
    void validate() const;
    /// Copy with the swept parameter set to value.
    ExperimentConfig at(SweepParameter parameter, double value) const;
};

/// Nested sections: system, scheme, simulation, sweep, compare.
nlohmann::json to_json(const ExperimentConfig& config);
/// Overlays the keys present in `doc` onto `base`; unknown keys are errors.
ExperimentConfig merge_json(const nlohmann::json& doc, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

struct ResultRow {
    std::string scheme;  // RS, SBS, ..., RS-pair, SBS-pair
    unsigned k = 1;
    std::optional<unsigned> j;
    unsigned m = 1;
    double pt_dbm = 0.0;
    double t1 = 0.5;
    double q_db = 0.0;
    double sigma_n_dbm = 0.0;
    double sigma_e2 = 0.0;
    EhModel model = EhModel::NonLinear;
    Method method = Method::Analytic;
    double x_threshold = 0.0;
    double outage = 0.0;  // NaN when the evaluation failed
    std::optional<double> std_error;
    std::string error;  // empty on success; kept in metadata, not in CSV

    bool operator==(const ResultRow&) const = default;
};

struct SweepResult {
    std::vector<ResultRow> rows;
    nlohmann::json metadata = nlohmann::json::object();
};

/// Evaluates one configuration with one method. Evaluation errors are
/// captured in the row instead of thrown.
ResultRow evaluate(const ExperimentConfig& config, Method method);

/// One row per (grid value x method); a config without a sweep is one point.
SweepResult run_sweep(const ExperimentConfig& config);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

extern const char* const kCsvHeader;
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(std::istream& in);
nlohmann::json rows_to_json(const std::vector<ResultRow>& rows);

/// Writes <path> as CSV plus <path>.meta.json, or a single JSON document.
void write_result(const SweepResult& result, const std::string& path, const std::string& format);

struct T1Optimum {
    double t_star = 0.5;
    double outage = 1.0;
    bool unimodal = true;
    std::string warning;
};

/// Minimizes the analytic outage over t1 in (1e-4, 1 - 1e-4): 50-point
/// coarse scan, then golden-section refinement around the scan minimum.
/// If the scan is not unimodal the scan argmin is returned with a warning.
T1Optimum find_optimal_t1(const SchemeSpec& spec, const SystemParams& params, double search_tolerance = 1e-4);

struct ComparisonEntry {
    std::size_t point = 0;
    double swept_value = 0.0;
    Method first;
    Method second;
    double first_value = 0.0;
    double second_value = 0.0;
    double gap = 0.0;
    std::optional<double> z_score;  // when one side is Monte Carlo
    bool pass = false;
};

struct ComparisonReport {
    std::vector<ComparisonEntry> entries;
    SweepResult data;
    bool all_pass = true;

    nlohmann::json to_json() const;
    std::string summary() const;
};

/// Pairwise comparison of every requested method at every grid point. A pair
/// involving Monte Carlo passes when |gap| <= max(z_threshold * stderr,
/// abs_tolerance); other pairs pass when |gap| <= abs_tolerance.
ComparisonReport compare_methods(const ExperimentConfig& config);

enum class FigureId { Fig2a, Fig2b, Fig3a, Fig3b, Fig4, Fig5, Fig6 };
std::string to_string(FigureId id);
FigureId parse_figure_id(std::string_view text);

struct FigureOptions {
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 1;
    bool monte_carlo = true;
    unsigned workers = 0;
};

/// Dataset for one figure of the study, ready for an external plotter.
SweepResult reproduce_figure(FigureId id, const FigureOptions& options = {});

}  // namespace wpcn::experiments
