#ifndef PLCP_DATA_HPP
#define PLCP_DATA_HPP

#include "plcp/core.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

/**
 * @file data.hpp
 * @brief Dataset files, train/test splits and synthetic partial-label data.
 *
 * On disk a dataset is three headerless CSV files: features (n x d reals),
 * candidates (n x l of 0/1) and an optional truth file (n x 1 integers).
 * Reals are written with 17 significant digits.
 */

namespace plcp {

/// Independent random streams derived from one run seed.
enum class RngStream : std::uint64_t { dataset = 1, split = 2, base = 3 };

/**
 * Seed of a per-purpose stream: splitmix64(seed + golden * stream).
 * Every consumer owns a fixed stream id, so adding a consumer never shifts
 * the draws of another.
 */
std::uint64_t stream_seed(std::uint64_t seed, RngStream stream);

std::mt19937_64 make_rng(std::uint64_t seed, RngStream stream);

struct SyntheticSpec {
    int n = 500;
    int d = 8;
    int l = 5;
    double flip_q = 0.3;
    /// Standard deviation of every cluster.
    double cluster_spread = 1.0;
    /// Distance between neighbouring class means, in units of cluster_spread.
    double separation = 4.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/**
 * Gaussian blobs, one per class, with balanced classes. Each negative label
 * joins the candidate set independently with probability flip_q.
 */
PartialLabelDataset generate_synthetic(const SyntheticSpec& spec);

/// Class means used by generate_synthetic, l x d.
Matrix synthetic_means(const SyntheticSpec& spec);

struct DatasetFiles {
    std::filesystem::path features;
    std::filesystem::path candidates;
    std::filesystem::path truth;  ///< empty when absent

    /// features.csv, candidates.csv and truth.csv inside `dir`.
    static DatasetFiles in_directory(const std::filesystem::path& dir);
};

PartialLabelDataset load_dataset(const DatasetFiles& files);
void save_dataset(const PartialLabelDataset& dataset, const DatasetFiles& files);

/// Row-shuffled split with floor(n * train_frac) training rows.
std::pair<PartialLabelDataset, PartialLabelDataset> split(const PartialLabelDataset& dataset, double train_frac,
                                                          std::uint64_t seed);

/// Training row indices of `split`, in order; the rest are test rows.
std::vector<Eigen::Index> split_indices(Eigen::Index n, double train_frac, std::uint64_t seed);

/// Plain CSV helpers shared by the dataset files and the experiment outputs.
namespace csv {

using Table = std::vector<std::vector<std::string>>;

Table read(const std::filesystem::path& path);
Matrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const Matrix& m);
std::string format_real(double v);
double parse_real(const std::string& field, const std::string& where);
long long parse_int(const std::string& field, const std::string& where);

}  // namespace csv

}  // namespace plcp

#endif
