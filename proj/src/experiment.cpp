#include "plcp/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace plcp {

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"dataset",
         {"source", "n", "d", "l", "flip_q", "cluster_spread", "separation", "seed", "features", "candidates", "truth"}},
        {"engine",
         {"alpha", "k", "max_iter", "stop_change_frac", "base", "k_neighbors", "binarize", "predict_from_base",
          "check_invariants", "base_kernel", "base_sigma", "base_lambda"}},
        {"partner", {"lambda", "gamma", "inner_iters", "inner_tol", "kernel", "sigma", "term"}},
        {"experiment", {"seeds", "runs", "train_frac", "output", "emit_trajectories", "tolerance_radii"}},
        {"sweep", {"lambda", "alpha", "gamma", "k", "flip_q", "k_neighbors", "max_cells"}},
    };
    return keys;
}

const std::vector<std::string> kSweepAxes{"lambda", "alpha", "gamma", "k", "flip_q", "k_neighbors"};

int checked_int(const ConfigFile& file, const std::string& section, const std::string& key, long long fallback) {
    const long long v = file.get_int(section, key, fallback);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw Error(file.where(section, key) + key + ": out of range");
    }
    return static_cast<int>(v);
}

KernelKind parse_kernel_kind(const ConfigFile& file, const std::string& section, const std::string& key) {
    const std::string v = file.get_string(section, key, "gaussian");
    if (v == "gaussian") return KernelKind::gaussian;
    if (v == "linear") return KernelKind::linear;
    throw Error(file.where(section, key) + key + ": expected 'gaussian' or 'linear', got '" + v + "'");
}

std::optional<double> parse_sigma(const ConfigFile& file, const std::string& section, const std::string& key) {
    const std::string v = file.get_string(section, key, "mean");
    if (v == "mean") return std::nullopt;
    const double sigma = file.get_real(section, key, 0.0);
    if (!(sigma > 0.0)) throw Error(file.where(section, key) + key + ": bandwidth must be positive or 'mean'");
    return sigma;
}

std::string kernel_name(KernelKind kind) { return kind == KernelKind::gaussian ? "gaussian" : "linear"; }

std::string sigma_text(const std::optional<double>& sigma) { return sigma ? csv::format_real(*sigma) : "mean"; }

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (const double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (const double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::vector<double> metric_values(const ResultRow& row) {
    return {row.metrics.test_accuracy,       row.metrics.transductive_accuracy,   row.metrics.correction_ratio,
            row.metrics.miscorrection_ratio, static_cast<double>(row.iterations_run), row.wall_ms};
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

std::vector<int> radii_of(const std::vector<ResultRow>& rows) {
    std::vector<int> radii;
    if (!rows.empty()) {
        for (const auto& [r, v] : rows.front().metrics.tolerance_accuracy) radii.push_back(r);
    }
    return radii;
}

void write_row_fields(std::ostream& out, const ResultRow& row, const std::vector<int>& radii) {
    out << row.method << ',' << row.seed;
    for (const double v : metric_values(row)) out << ',' << csv::format_real(v);
    for (const int r : radii) {
        const auto it = row.metrics.tolerance_accuracy.find(r);
        out << ',' << csv::format_real(it == row.metrics.tolerance_accuracy.end() ? 0.0 : it->second);
    }
}

void write_failures(const std::filesystem::path& path, const std::vector<std::pair<std::string, Failure>>& failures) {
    auto out = open_output(path);
    out << "grid_point,seed,message\n";
    for (const auto& [point, f] : failures) {
        std::string msg = f.message;
        for (char& c : msg) {
            if (c == ',' || c == '\n' || c == '\r') c = ';';
        }
        out << point << ',' << f.seed << ',' << msg << '\n';
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (seeds.empty()) throw Error("experiment: at least one seed is required");
    if (!(train_frac > 0.0 && train_frac < 1.0)) throw Error("experiment: train_frac must lie in (0, 1)");
    for (const int r : tolerance_radii) {
        if (r < 0) throw Error("experiment: tolerance radii must be non-negative");
    }
    if (dataset.synthetic) dataset.spec.validate();
    engine.validate();
}

std::size_t SweepGrid::cell_count() const {
    std::size_t cells = 1;
    for (const auto& [name, values] : axes) cells *= values.size();
    return cells;
}

SyntheticSpec parse_synthetic_spec(const ConfigFile& file) {
    file.require_known(known_keys());
    SyntheticSpec spec;
    spec.n = checked_int(file, "dataset", "n", spec.n);
    spec.d = checked_int(file, "dataset", "d", spec.d);
    spec.l = checked_int(file, "dataset", "l", spec.l);
    spec.flip_q = file.get_real("dataset", "flip_q", spec.flip_q);
    spec.cluster_spread = file.get_real("dataset", "cluster_spread", spec.cluster_spread);
    spec.separation = file.get_real("dataset", "separation", spec.separation);
    spec.seed = static_cast<std::uint64_t>(file.get_int("dataset", "seed", 0));
    try {
        spec.validate();
    } catch (const Error& e) {
        // Point at the first offending key.
        for (const std::string key : {"n", "d", "l", "flip_q", "cluster_spread", "separation"}) {
            if (std::string(e.what()).rfind("synthetic: " + key + " ", 0) == 0) {
                throw Error(file.where("dataset", key) + e.what());
            }
        }
        throw;
    }
    return spec;
}

ExperimentConfig parse_experiment_config(const ConfigFile& file) {
    file.require_known(known_keys());
    ExperimentConfig config;

    const std::string source = file.get_string("dataset", "source", "synthetic");
    if (source == "synthetic") {
        config.dataset.synthetic = true;
        config.dataset.spec = parse_synthetic_spec(file);
        config.dataset.fixed_seed = file.has("dataset", "seed");
    } else if (source == "files") {
        config.dataset.synthetic = false;
        if (!file.has("dataset", "features") || !file.has("dataset", "candidates")) {
            throw Error(file.where("dataset", "source") + "source = files needs 'features' and 'candidates'");
        }
        config.dataset.files.features = file.get_string("dataset", "features", "");
        config.dataset.files.candidates = file.get_string("dataset", "candidates", "");
        config.dataset.files.truth = file.get_string("dataset", "truth", "");
    } else {
        throw Error(file.where("dataset", "source") + "source: expected 'synthetic' or 'files', got '" + source + "'");
    }

    EngineConfig& engine = config.engine;
    engine.alpha = file.get_real("engine", "alpha", engine.alpha);
    engine.k = file.get_real("engine", "k", engine.k);
    engine.max_iter = checked_int(file, "engine", "max_iter", engine.max_iter);
    engine.stop_change_frac = file.get_real("engine", "stop_change_frac", engine.stop_change_frac);
    engine.predict_from_base = file.get_bool("engine", "predict_from_base", false);
    engine.check_invariants = file.get_bool("engine", "check_invariants", true);
    const std::string base = file.get_string("engine", "base", "pl-knn");
    if (base == "pl-knn") {
        PlKnnSpec knn;
        knn.k_neighbors = checked_int(file, "engine", "k_neighbors", knn.k_neighbors);
        knn.binarize = file.get_bool("engine", "binarize", false);
        engine.base = knn;
    } else if (base == "kernel-ls") {
        KernelLsSpec ls;
        ls.kernel.kind = parse_kernel_kind(file, "engine", "base_kernel");
        ls.kernel.sigma = parse_sigma(file, "engine", "base_sigma");
        ls.kernel.ridge = file.get_real("engine", "base_lambda", ls.kernel.ridge);
        engine.base = ls;
    } else {
        throw Error(file.where("engine", "base") + "base: expected 'pl-knn' or 'kernel-ls', got '" + base + "'");
    }

    PartnerConfig& partner = engine.partner;
    partner.lambda = file.get_real("partner", "lambda", partner.lambda);
    partner.gamma = file.get_real("partner", "gamma", partner.gamma);
    partner.inner_iters = checked_int(file, "partner", "inner_iters", partner.inner_iters);
    partner.inner_tol = file.get_real("partner", "inner_tol", partner.inner_tol);
    partner.kernel.kind = parse_kernel_kind(file, "partner", "kernel");
    partner.kernel.sigma = parse_sigma(file, "partner", "sigma");
    partner.kernel.ridge = partner.lambda;
    const std::string term = file.get_string("partner", "term", "wild");
    if (term == "wild") {
        partner.term = CollaborativeTerm::wild;
    } else if (term == "aggressive") {
        partner.term = CollaborativeTerm::aggressive;
    } else {
        throw Error(file.where("partner", "term") + "term: expected 'wild' or 'aggressive', got '" + term + "'");
    }

    if (file.has("experiment", "seeds")) {
        config.seeds.clear();
        for (const double s : file.get_real_list("experiment", "seeds")) {
            if (s < 0 || s != std::floor(s)) throw Error(file.where("experiment", "seeds") + "seeds must be integers");
            config.seeds.push_back(static_cast<std::uint64_t>(s));
        }
    } else if (file.has("experiment", "runs")) {
        const long long runs = file.get_int("experiment", "runs", 1);
        if (runs < 1) throw Error(file.where("experiment", "runs") + "runs must be at least 1");
        config.seeds.clear();
        for (long long s = 1; s <= runs; ++s) config.seeds.push_back(static_cast<std::uint64_t>(s));
    }
    config.train_frac = file.get_real("experiment", "train_frac", config.train_frac);
    config.output = file.get_string("experiment", "output", config.output.string());
    config.emit_trajectories = file.get_bool("experiment", "emit_trajectories", false);
    for (const double r : file.get_real_list("experiment", "tolerance_radii")) {
        if (r < 0 || r != std::floor(r)) {
            throw Error(file.where("experiment", "tolerance_radii") + "tolerance radii must be non-negative integers");
        }
        config.tolerance_radii.push_back(static_cast<int>(r));
    }
    if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') config.output = env;

    try {
        config.validate();
    } catch (const Error& e) {
        throw Error(file.origin() + ": " + e.what());
    }
    return config;
}

SweepGrid parse_sweep_grid(const ConfigFile& file) {
    file.require_known(known_keys());
    SweepGrid grid;
    for (const auto& axis : kSweepAxes) {
        if (file.has("sweep", axis)) grid.axes.emplace_back(axis, file.get_real_list("sweep", axis));
    }
    const long long cap = file.get_int("sweep", "max_cells", 1000);
    if (cap < 1) throw Error(file.where("sweep", "max_cells") + "max_cells must be positive");
    grid.max_cells = static_cast<std::size_t>(cap);
    return grid;
}

std::string render_config(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "[dataset]\n";
    if (config.dataset.synthetic) {
        const auto& s = config.dataset.spec;
        out << "source = synthetic\n"
            << "n = " << s.n << "\nd = " << s.d << "\nl = " << s.l << "\nflip_q = " << csv::format_real(s.flip_q)
            << "\ncluster_spread = " << csv::format_real(s.cluster_spread)
            << "\nseparation = " << csv::format_real(s.separation) << '\n';
        if (config.dataset.fixed_seed) out << "seed = " << s.seed << '\n';
    } else {
        out << "source = files\nfeatures = " << config.dataset.files.features.string()
            << "\ncandidates = " << config.dataset.files.candidates.string() << '\n';
        if (!config.dataset.files.truth.empty()) out << "truth = " << config.dataset.files.truth.string() << '\n';
    }
    const EngineConfig& e = config.engine;
    out << "\n[engine]\nalpha = " << csv::format_real(e.alpha) << "\nk = " << csv::format_real(e.k)
        << "\nmax_iter = " << e.max_iter << "\nstop_change_frac = " << csv::format_real(e.stop_change_frac)
        << "\npredict_from_base = " << (e.predict_from_base ? "true" : "false")
        << "\ncheck_invariants = " << (e.check_invariants ? "true" : "false") << '\n';
    if (const auto* knn = std::get_if<PlKnnSpec>(&e.base)) {
        out << "base = pl-knn\nk_neighbors = " << knn->k_neighbors
            << "\nbinarize = " << (knn->binarize ? "true" : "false") << '\n';
    } else {
        const auto& ls = std::get<KernelLsSpec>(e.base);
        out << "base = kernel-ls\nbase_kernel = " << kernel_name(ls.kernel.kind)
            << "\nbase_sigma = " << sigma_text(ls.kernel.sigma) << "\nbase_lambda = " << csv::format_real(ls.kernel.ridge)
            << '\n';
    }
    const PartnerConfig& p = e.partner;
    out << "\n[partner]\nlambda = " << csv::format_real(p.lambda) << "\ngamma = " << csv::format_real(p.gamma)
        << "\ninner_iters = " << p.inner_iters << "\ninner_tol = " << csv::format_real(p.inner_tol)
        << "\nkernel = " << kernel_name(p.kernel.kind) << "\nsigma = " << sigma_text(p.kernel.sigma)
        << "\nterm = " << (p.term == CollaborativeTerm::wild ? "wild" : "aggressive") << '\n';
    out << "\n[experiment]\nseeds = ";
    for (std::size_t i = 0; i < config.seeds.size(); ++i) out << (i ? "," : "") << config.seeds[i];
    out << "\ntrain_frac = " << csv::format_real(config.train_frac) << "\noutput = " << config.output.string()
        << "\nemit_trajectories = " << (config.emit_trajectories ? "true" : "false") << '\n';
    if (!config.tolerance_radii.empty()) {
        out << "tolerance_radii = ";
        for (std::size_t i = 0; i < config.tolerance_radii.size(); ++i) {
            out << (i ? "," : "") << config.tolerance_radii[i];
        }
        out << '\n';
    }
    return out.str();
}

PartialLabelDataset dataset_for_seed(const ExperimentConfig& config, std::uint64_t seed) {
    if (!config.dataset.synthetic) return load_dataset(config.dataset.files);
    SyntheticSpec spec = config.dataset.spec;
    if (!config.dataset.fixed_seed) spec.seed = seed;
    return generate_synthetic(spec);
}

ExperimentResult run_seed(const ExperimentConfig& config, std::uint64_t seed) {
    using Clock = std::chrono::steady_clock;
    const PartialLabelDataset dataset = dataset_for_seed(config, seed);
    auto [train, test] = split(dataset, config.train_frac, seed);
    if (!train.has_ground_truth()) throw Error("experiment: metrics need ground-truth labels");
    const Labels& train_truth = *train.ground_truth();
    const Labels& test_truth = *test.ground_truth();
    EngineConfig engine = config.engine;
    engine.seed = stream_seed(seed, RngStream::base);

    const auto t0 = Clock::now();
    const RunReport base = run_base_alone(train, test.features(), engine);
    const auto t1 = Clock::now();
    const RunReport plcp = run_plcp(train, test.features(), engine);
    const auto t2 = Clock::now();

    auto make_row = [&](const std::string& method, const RunReport& report, double ms) {
        ResultRow row;
        row.method = method;
        row.seed = seed;
        row.iterations_run = report.iterations_run;
        row.wall_ms = ms;
        row.metrics.test_accuracy = accuracy(report.test_predictions, test_truth);
        row.metrics.transductive_accuracy = accuracy(report.train_predictions, train_truth);
        const auto corr = correction_metrics(base.train_predictions, report.train_predictions, train_truth);
        row.metrics.correction_ratio = corr.correction_ratio;
        row.metrics.miscorrection_ratio = corr.miscorrection_ratio;
        for (const int r : config.tolerance_radii) {
            row.metrics.tolerance_accuracy[r] = tolerance_accuracy(report.test_predictions, test_truth, r);
        }
        return row;
    };
    auto millis = [](Clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };

    ExperimentResult result;
    const std::string name = base_name(engine.base);
    result.rows.push_back(make_row(name, base, millis(t1 - t0)));
    result.rows.push_back(make_row(name + "-PLCP", plcp, millis(t2 - t1)));
    if (config.emit_trajectories) {
        for (std::size_t it = 0; it < plcp.trajectories.size(); ++it) {
            const auto& snap = plcp.trajectories[it];
            for (Eigen::Index i = 0; i < train.size(); ++i) {
                TrajectoryRow row;
                row.seed = seed;
                row.iteration = static_cast<int>(it) + 1;
                row.sample = i;
                row.label = snap.labels[static_cast<std::size_t>(i)];
                row.truth = train_truth[static_cast<std::size_t>(i)];
                row.truth_confidence = snap.truth_confidence(i);
                row.max_false_confidence = snap.max_false_confidence(i);
                result.trajectories.push_back(row);
            }
        }
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult all;
    for (const auto seed : config.seeds) {
        try {
            ExperimentResult one = run_seed(config, seed);
            all.rows.insert(all.rows.end(), one.rows.begin(), one.rows.end());
            all.trajectories.insert(all.trajectories.end(), one.trajectories.begin(), one.trajectories.end());
        } catch (const InvariantViolation& e) {
            ++all.invariant_violations;
            all.failures.push_back({seed, std::string("invariant violation: ") + e.what()});
        } catch (const std::exception& e) {
            all.failures.push_back({seed, e.what()});
        }
    }
    return all;
}

const std::vector<std::string>& results_header() {
    static const std::vector<std::string> header{"method",           "seed",
                                                 "test_accuracy",    "transductive_accuracy",
                                                 "correction_ratio", "miscorrection_ratio",
                                                 "iterations_run",   "wall_ms"};
    return header;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::vector<double>>> columns;
    for (const auto& row : rows) {
        auto& cols = columns[row.method];
        if (cols.empty()) {
            order.push_back(row.method);
            cols.resize(metric_values(row).size());
        }
        const auto values = metric_values(row);
        for (std::size_t c = 0; c < values.size(); ++c) cols[c].push_back(values[c]);
    }
    std::vector<SummaryRow> out;
    for (const auto& method : order) {
        SummaryRow s;
        s.method = method;
        const auto& cols = columns[method];
        s.runs = cols.front().size();
        for (const auto& col : cols) {
            s.means.push_back(mean_of(col));
            s.stddevs.push_back(stddev_of(col));
        }
        out.push_back(std::move(s));
    }
    return out;
}

void write_experiment(const std::filesystem::path& dir, const ExperimentConfig& config, const ExperimentResult& result) {
    std::filesystem::create_directories(dir);
    const auto radii = radii_of(result.rows);
    {
        auto out = open_output(dir / "results.csv");
        const auto& header = results_header();
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        for (const int r : radii) out << ",tolerance_accuracy_" << r;
        out << '\n';
        for (const auto& row : result.rows) {
            write_row_fields(out, row, radii);
            out << '\n';
        }
    }
    {
        auto out = open_output(dir / "summary.csv");
        const auto& header = results_header();
        out << "method,runs";
        for (std::size_t i = 2; i < header.size(); ++i) out << ',' << header[i] << "_mean," << header[i] << "_std";
        out << '\n';
        for (const auto& s : summarize(result.rows)) {
            out << s.method << ',' << s.runs;
            for (std::size_t i = 0; i < s.means.size(); ++i) {
                out << ',' << csv::format_real(s.means[i]) << ',' << csv::format_real(s.stddevs[i]);
            }
            out << '\n';
        }
    }
    {
        auto out = open_output(dir / "resolved_config.ini");
        out << render_config(config);
    }
    if (config.emit_trajectories) {
        auto out = open_output(dir / "trajectories.csv");
        out << "seed,iteration,sample,label,truth,truth_confidence,max_false_confidence\n";
        for (const auto& t : result.trajectories) {
            out << t.seed << ',' << t.iteration << ',' << t.sample << ',' << t.label << ',' << t.truth << ','
                << csv::format_real(t.truth_confidence) << ',' << csv::format_real(t.max_false_confidence) << '\n';
        }
    }
    const auto failures_path = dir / "failures.csv";
    if (!result.failures.empty()) {
        std::vector<std::pair<std::string, Failure>> tagged;
        for (const auto& f : result.failures) tagged.emplace_back("", f);
        write_failures(failures_path, tagged);
    } else if (std::filesystem::exists(failures_path)) {
        std::filesystem::remove(failures_path);
    }
}

std::vector<std::vector<std::pair<std::string, double>>> grid_points(const SweepGrid& grid) {
    const std::size_t cells = grid.cell_count();
    if (cells > grid.max_cells) {
        throw Error("sweep: grid has " + std::to_string(cells) + " cells, above the cap of " +
                    std::to_string(grid.max_cells));
    }
    std::vector<std::vector<std::pair<std::string, double>>> points(1);
    for (const auto& [name, values] : grid.axes) {
        std::vector<std::vector<std::pair<std::string, double>>> next;
        for (const auto& prefix : points) {
            for (const double v : values) {
                auto p = prefix;
                p.emplace_back(name, v);
                next.push_back(std::move(p));
            }
        }
        points = std::move(next);
    }
    return points;
}

ExperimentConfig apply_grid_point(ExperimentConfig config, const std::vector<std::pair<std::string, double>>& point) {
    for (const auto& [name, v] : point) {
        if (name == "lambda") {
            config.engine.partner.lambda = v;
            config.engine.partner.kernel.ridge = v;
        } else if (name == "alpha") {
            config.engine.alpha = v;
        } else if (name == "gamma") {
            config.engine.partner.gamma = v;
        } else if (name == "k") {
            config.engine.k = v;
        } else if (name == "flip_q") {
            if (!config.dataset.synthetic) throw Error("sweep: flip_q needs a synthetic dataset");
            config.dataset.spec.flip_q = v;
        } else if (name == "k_neighbors") {
            auto* knn = std::get_if<PlKnnSpec>(&config.engine.base);
            if (knn == nullptr) throw Error("sweep: k_neighbors needs the pl-knn base");
            if (v < 1 || v != std::floor(v)) throw Error("sweep: k_neighbors must be a positive integer");
            knn->k_neighbors = static_cast<int>(v);
        } else {
            throw Error("sweep: unknown axis '" + name + "'");
        }
    }
    return config;
}

std::vector<SweepCell> run_sweep(const ExperimentConfig& config, const SweepGrid& grid) {
    std::vector<SweepCell> cells;
    for (const auto& point : grid_points(grid)) {
        SweepCell cell;
        cell.point = point;
        try {
            cell.result = run_experiment(apply_grid_point(config, point));
        } catch (const std::exception& e) {
            for (const auto seed : config.seeds) cell.result.failures.push_back({seed, e.what()});
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

void write_sweep(const std::filesystem::path& dir, const ExperimentConfig& config, const SweepGrid& grid,
                 const std::vector<SweepCell>& cells) {
    std::filesystem::create_directories(dir);
    std::vector<int> radii;
    for (const auto& cell : cells) {
        if (!cell.result.rows.empty()) {
            radii = radii_of(cell.result.rows);
            break;
        }
    }
    auto out = open_output(dir / "sweep.csv");
    for (const auto& [name, values] : grid.axes) out << name << ',';
    const auto& header = results_header();
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    for (const int r : radii) out << ",tolerance_accuracy_" << r;
    out << '\n';
    std::vector<std::pair<std::string, Failure>> failures;
    for (const auto& cell : cells) {
        std::string point_text;
        for (const auto& [name, v] : cell.point) {
            point_text += (point_text.empty() ? "" : ";") + name + "=" + csv::format_real(v);
        }
        for (const auto& row : cell.result.rows) {
            for (const auto& [name, v] : cell.point) out << csv::format_real(v) << ',';
            write_row_fields(out, row, radii);
            out << '\n';
        }
        for (const auto& f : cell.result.failures) failures.emplace_back(point_text, f);
    }
    {
        auto cfg = open_output(dir / "resolved_config.ini");
        cfg << render_config(config) << "\n[sweep]\n";
        for (const auto& [name, values] : grid.axes) {
            cfg << name << " = ";
            for (std::size_t i = 0; i < values.size(); ++i) cfg << (i ? "," : "") << csv::format_real(values[i]);
            cfg << '\n';
        }
        cfg << "max_cells = " << grid.max_cells << '\n';
    }
    const auto failures_path = dir / "failures.csv";
    if (!failures.empty()) {
        write_failures(failures_path, failures);
    } else if (std::filesystem::exists(failures_path)) {
        std::filesystem::remove(failures_path);
    }
}

std::string describe_dataset(const PartialLabelDataset& dataset) {
    std::ostringstream out;
    out << "n = " << dataset.size() << "\nd = " << dataset.dimension() << "\nl = " << dataset.label_count()
        << "\navg_candidates = " << csv::format_real(dataset.mean_candidate_count()) << '\n';
    if (dataset.has_ground_truth()) out << "ground_truth = yes\n";
    return out.str();
}

}  // namespace plcp
