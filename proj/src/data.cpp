#include "plcp/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace plcp {

std::uint64_t stream_seed(std::uint64_t seed, RngStream stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(stream);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::mt19937_64 make_rng(std::uint64_t seed, RngStream stream) { return std::mt19937_64(stream_seed(seed, stream)); }

void SyntheticSpec::validate() const {
    if (n < 1) throw Error("synthetic: n must be positive");
    if (d < 1) throw Error("synthetic: d must be positive");
    if (l < 2) throw Error("synthetic: l must be at least 2");
    if (!(flip_q >= 0.0 && flip_q < 1.0)) throw Error("synthetic: flip_q must lie in [0, 1)");
    if (!(cluster_spread > 0.0) || !std::isfinite(cluster_spread)) throw Error("synthetic: cluster_spread must be positive");
    if (!(separation >= 0.0) || !std::isfinite(separation)) throw Error("synthetic: separation must be non-negative");
}

Matrix synthetic_means(const SyntheticSpec& spec) {
    spec.validate();
    const double gap = spec.separation * spec.cluster_spread;
    Matrix means = Matrix::Zero(spec.l, spec.d);
    if (spec.d >= spec.l) {
        // Scaled simplex: every pair of means is `gap` apart.
        for (int c = 0; c < spec.l; ++c) means(c, c) = gap / std::sqrt(2.0);
        return means;
    }
    // Integer grid with `gap` between neighbours.
    int base = 1;
    while (std::pow(static_cast<double>(base), spec.d) < spec.l) ++base;
    for (int c = 0; c < spec.l; ++c) {
        int rest = c;
        for (int axis = 0; axis < spec.d; ++axis) {
            means(c, axis) = gap * (rest % base);
            rest /= base;
        }
    }
    return means;
}

PartialLabelDataset generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    auto rng = make_rng(spec.seed, RngStream::dataset);
    const Matrix means = synthetic_means(spec);

    Labels truth(static_cast<std::size_t>(spec.n));
    for (int i = 0; i < spec.n; ++i) truth[static_cast<std::size_t>(i)] = i % spec.l;
    std::shuffle(truth.begin(), truth.end(), rng);

    std::normal_distribution<double> noise(0.0, spec.cluster_spread);
    std::bernoulli_distribution flip(spec.flip_q);
    Matrix x(spec.n, spec.d);
    Matrix y = Matrix::Zero(spec.n, spec.l);
    for (int i = 0; i < spec.n; ++i) {
        const int t = truth[static_cast<std::size_t>(i)];
        for (int a = 0; a < spec.d; ++a) x(i, a) = means(t, a) + noise(rng);
        for (int j = 0; j < spec.l; ++j) y(i, j) = (j == t || flip(rng)) ? 1.0 : 0.0;
    }
    return PartialLabelDataset(std::move(x), std::move(y), std::move(truth));
}

DatasetFiles DatasetFiles::in_directory(const std::filesystem::path& dir) {
    return {dir / "features.csv", dir / "candidates.csv", dir / "truth.csv"};
}

PartialLabelDataset load_dataset(const DatasetFiles& files) {
    Matrix x = csv::read_matrix(files.features);
    Matrix y = csv::read_matrix(files.candidates);
    if (x.rows() != y.rows()) {
        throw Error("load_dataset: " + files.features.string() + " has " + std::to_string(x.rows()) + " rows but " +
                    files.candidates.string() + " has " + std::to_string(y.rows()));
    }
    std::optional<Labels> truth;
    if (!files.truth.empty() && std::filesystem::exists(files.truth)) {
        const auto table = csv::read(files.truth);
        truth.emplace();
        for (std::size_t r = 0; r < table.size(); ++r) {
            const std::string where = files.truth.string() + " row " + std::to_string(r);
            if (table[r].size() != 1) throw Error(where + ": expected exactly one column");
            truth->push_back(static_cast<int>(csv::parse_int(table[r][0], where)));
        }
    }
    try {
        return PartialLabelDataset(std::move(x), std::move(y), std::move(truth));
    } catch (const Error& e) {
        throw Error("load_dataset: " + std::string(e.what()));
    }
}

void save_dataset(const PartialLabelDataset& dataset, const DatasetFiles& files) {
    csv::write_matrix(files.features, dataset.features());
    csv::write_matrix(files.candidates, dataset.candidates());
    if (dataset.has_ground_truth() && !files.truth.empty()) {
        std::ofstream out(files.truth, std::ios::binary);
        if (!out) throw Error("cannot write " + files.truth.string());
        for (const int t : *dataset.ground_truth()) out << t << '\n';
    }
}

std::vector<Eigen::Index> split_indices(Eigen::Index n, double train_frac, std::uint64_t seed) {
    if (!(train_frac > 0.0 && train_frac < 1.0)) throw Error("split: train_frac must lie in (0, 1)");
    const auto n_train = static_cast<Eigen::Index>(std::floor(static_cast<double>(n) * train_frac + 1e-9));
    if (n_train < 1 || n - n_train < 1) {
        throw Error("split: " + std::to_string(n) + " samples at train_frac " + std::to_string(train_frac) +
                    " leave an empty side");
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    auto rng = make_rng(seed, RngStream::split);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(static_cast<std::size_t>(n_train));
    std::sort(order.begin(), order.end());
    return order;
}

std::pair<PartialLabelDataset, PartialLabelDataset> split(const PartialLabelDataset& dataset, double train_frac,
                                                          std::uint64_t seed) {
    const auto train = split_indices(dataset.size(), train_frac, seed);
    std::vector<Eigen::Index> test;
    std::size_t next = 0;
    for (Eigen::Index i = 0; i < dataset.size(); ++i) {
        if (next < train.size() && train[next] == i) {
            ++next;
        } else {
            test.push_back(i);
        }
    }
    return {dataset.subset(train), dataset.subset(test)};
}

namespace csv {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

Table read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    Table table;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(trim(field));
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        table.push_back(std::move(fields));
    }
    return table;
}

double parse_real(const std::string& field, const std::string& where) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw Error(where + ": cannot parse '" + field + "' as a number");
    }
    return value;
}

long long parse_int(const std::string& field, const std::string& where) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        throw Error(where + ": cannot parse '" + field + "' as an integer");
    }
    return value;
}

Matrix read_matrix(const std::filesystem::path& path) {
    const Table table = read(path);
    if (table.empty()) return Matrix(0, 0);
    const std::size_t cols = table.front().size();
    Matrix m(static_cast<Eigen::Index>(table.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < table.size(); ++r) {
        const std::string where = path.string() + " row " + std::to_string(r);
        if (table[r].size() != cols) {
            throw Error(where + ": expected " + std::to_string(cols) + " columns, found " +
                        std::to_string(table[r].size()));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_real(table[r][c], where);
        }
    }
    return m;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_real(m(i, j));
        }
        out << '\n';
    }
}

}  // namespace csv

}  // namespace plcp
