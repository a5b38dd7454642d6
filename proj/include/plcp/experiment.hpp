#ifndef PLCP_EXPERIMENT_HPP
#define PLCP_EXPERIMENT_HPP

#include "plcp/config.hpp"
#include "plcp/data.hpp"
#include "plcp/engine.hpp"
#include "plcp/metrics.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

/**
 * @file experiment.hpp
 * @brief Paired base vs base-PLCP experiments over seeds and parameter grids.
 *
 * Config files use the sections [dataset], [engine], [partner],
 * [experiment] and, for sweeps, [sweep]. See README.md for every key.
 */

namespace plcp {

/// Environment variable that overrides the configured output directory.
inline constexpr const char* kOutputDirEnv = "PLCP_OUTPUT_DIR";

struct DatasetSource {
    bool synthetic = true;
    SyntheticSpec spec{};
    /// When false the synthetic dataset is regenerated from each run seed.
    bool fixed_seed = false;
    DatasetFiles files{};
};

struct ExperimentConfig {
    DatasetSource dataset{};
    EngineConfig engine{};
    std::vector<std::uint64_t> seeds{1};
    double train_frac = 0.5;
    std::filesystem::path output = "results";
    bool emit_trajectories = false;
    std::vector<int> tolerance_radii{};

    void validate() const;
};

/// Grid axes: any of lambda, alpha, gamma, k, flip_q, k_neighbors.
struct SweepGrid {
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    std::size_t max_cells = 1000;

    std::size_t cell_count() const;
};

SyntheticSpec parse_synthetic_spec(const ConfigFile& file);
ExperimentConfig parse_experiment_config(const ConfigFile& file);
SweepGrid parse_sweep_grid(const ConfigFile& file);

/// Resolved configuration in the same file format, written next to results.
std::string render_config(const ExperimentConfig& config);

/// One results row: a method run on one seed.
struct ResultRow {
    std::string method;
    std::uint64_t seed = 0;
    MetricReport metrics{};
    int iterations_run = 0;
    double wall_ms = 0.0;
};

struct TrajectoryRow {
    std::uint64_t seed = 0;
    int iteration = 0;
    Eigen::Index sample = 0;
    int label = 0;
    int truth = -1;
    double truth_confidence = 0.0;
    double max_false_confidence = 0.0;
};

struct Failure {
    std::uint64_t seed = 0;
    std::string message;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<TrajectoryRow> trajectories;
    std::vector<Failure> failures;
    /// Engine invariant violations observed (a subset of failures).
    int invariant_violations = 0;
};

/// Dataset for one seed: generated, or loaded from files.
PartialLabelDataset dataset_for_seed(const ExperimentConfig& config, std::uint64_t seed);

/// Base alone then base-PLCP on one seed's split.
ExperimentResult run_seed(const ExperimentConfig& config, std::uint64_t seed);

/// All seeds; a failing seed is recorded and the others continue.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes results.csv, summary.csv, resolved_config.ini, failures.csv (when any) and
/// trajectories.csv (when requested) into `dir`.
void write_experiment(const std::filesystem::path& dir, const ExperimentConfig& config, const ExperimentResult& result);

struct SweepCell {
    std::vector<std::pair<std::string, double>> point;
    ExperimentResult result;
};

/// Config with one grid point applied.
ExperimentConfig apply_grid_point(ExperimentConfig config, const std::vector<std::pair<std::string, double>>& point);

/// Cartesian product in axis order (last axis fastest). Refuses grids above max_cells.
std::vector<std::vector<std::pair<std::string, double>>> grid_points(const SweepGrid& grid);

std::vector<SweepCell> run_sweep(const ExperimentConfig& config, const SweepGrid& grid);

/// Long-format sweep.csv plus resolved_config.ini and failures.csv when any.
void write_sweep(const std::filesystem::path& dir, const ExperimentConfig& config, const SweepGrid& grid,
                 const std::vector<SweepCell>& cells);

/// Column names of results.csv.
const std::vector<std::string>& results_header();

/// Per-method mean and sample standard deviation of every metric.
struct SummaryRow {
    std::string method;
    std::size_t runs = 0;
    std::vector<double> means;  ///< in results_header() metric order
    std::vector<double> stddevs;
};

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

/// n, d, l and mean candidate count.
std::string describe_dataset(const PartialLabelDataset& dataset);

}  // namespace plcp

#endif
