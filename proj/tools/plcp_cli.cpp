// Command-line harness: dataset generation, paired runs, sweeps and dataset inspection.

#include "plcp/experiment.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using nlohmann::json;

json failure_summary(const std::vector<std::pair<std::string, plcp::Failure>>& failures, std::size_t completed) {
    json out;
    out["status"] = failures.empty() ? "ok" : "failed";
    out["completed_runs"] = completed;
    out["failures"] = json::array();
    for (const auto& [point, f] : failures) {
        json item{{"seed", f.seed}, {"message", f.message}};
        if (!point.empty()) item["grid_point"] = point;
        out["failures"].push_back(item);
    }
    return out;
}

std::filesystem::path output_dir(const plcp::ExperimentConfig& config, const std::string& override_dir) {
    return override_dir.empty() ? config.output : std::filesystem::path(override_dir);
}

int cmd_generate(const std::string& spec_path, const std::string& out_dir) {
    const auto spec = plcp::parse_synthetic_spec(plcp::ConfigFile::load(spec_path));
    const auto dataset = plcp::generate_synthetic(spec);
    std::filesystem::create_directories(out_dir);
    plcp::save_dataset(dataset, plcp::DatasetFiles::in_directory(out_dir));
    std::cout << "wrote " << dataset.size() << " samples to " << out_dir << '\n';
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_override) {
    const auto config = plcp::parse_experiment_config(plcp::ConfigFile::load(config_path));
    const auto dir = output_dir(config, out_override);
    const auto result = plcp::run_experiment(config);
    plcp::write_experiment(dir, config, result);
    for (const auto& s : plcp::summarize(result.rows)) {
        std::cout << s.method << ": test " << s.means[0] << " +- " << s.stddevs[0] << ", transductive " << s.means[1]
                  << " +- " << s.stddevs[1] << " over " << s.runs << " runs\n";
    }
    std::vector<std::pair<std::string, plcp::Failure>> failures;
    for (const auto& f : result.failures) failures.emplace_back("", f);
    std::cout << failure_summary(failures, config.seeds.size() - result.failures.size()).dump() << '\n';
    return failures.empty() ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override) {
    const auto file = plcp::ConfigFile::load(config_path);
    const auto config = plcp::parse_experiment_config(file);
    const auto grid = plcp::parse_sweep_grid(file);
    const auto dir = output_dir(config, out_override);
    const auto cells = plcp::run_sweep(config, grid);
    plcp::write_sweep(dir, config, grid, cells);
    std::vector<std::pair<std::string, plcp::Failure>> failures;
    std::size_t completed = 0;
    for (const auto& cell : cells) {
        std::string point;
        for (const auto& [name, v] : cell.point) point += (point.empty() ? "" : ";") + name + "=" + plcp::csv::format_real(v);
        for (const auto& f : cell.result.failures) failures.emplace_back(point, f);
        completed += cell.result.rows.size() / 2;
    }
    std::cout << "sweep: " << cells.size() << " grid points written to " << (dir / "sweep.csv").string() << '\n';
    std::cout << failure_summary(failures, completed).dump() << '\n';
    return failures.empty() ? 0 : 1;
}

int cmd_inspect(const std::string& dir, const std::string& features, const std::string& candidates,
                const std::string& truth) {
    plcp::DatasetFiles files;
    if (!dir.empty()) files = plcp::DatasetFiles::in_directory(dir);
    if (!features.empty()) files.features = features;
    if (!candidates.empty()) files.candidates = candidates;
    if (!truth.empty()) files.truth = truth;
    if (files.features.empty() || files.candidates.empty()) {
        throw plcp::Error("inspect: give a dataset directory or --features and --candidates");
    }
    std::cout << plcp::describe_dataset(plcp::load_dataset(files));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partial label learning with a partner classifier"};
    app.require_subcommand(1);

    std::string spec_path, gen_out = ".";
    auto* generate = app.add_subcommand("generate", "Write a synthetic dataset (features/candidates/truth CSV)");
    generate->add_option("spec", spec_path, "Spec file with a [dataset] section")->required()->check(CLI::ExistingFile);
    generate->add_option("-o,--output", gen_out, "Output directory");

    std::string run_config, run_out;
    auto* run = app.add_subcommand("run", "Paired base vs base-PLCP runs over seeds");
    run->add_option("config", run_config, "Experiment config file")->required()->check(CLI::ExistingFile);
    run->add_option("-o,--output", run_out, "Output directory (overrides config and PLCP_OUTPUT_DIR)");

    std::string sweep_config, sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Paired runs over a parameter grid");
    sweep->add_option("config", sweep_config, "Experiment config with a [sweep] section")
        ->required()
        ->check(CLI::ExistingFile);
    sweep->add_option("-o,--output", sweep_out, "Output directory (overrides config and PLCP_OUTPUT_DIR)");

    std::string inspect_dir, inspect_features, inspect_candidates, inspect_truth;
    auto* inspect = app.add_subcommand("inspect", "Print n, d, l and the mean candidate count of a dataset");
    inspect->add_option("dir", inspect_dir, "Directory holding features.csv and candidates.csv");
    inspect->add_option("--features", inspect_features, "Features CSV");
    inspect->add_option("--candidates", inspect_candidates, "Candidates CSV");
    inspect->add_option("--truth", inspect_truth, "Ground-truth CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate) return cmd_generate(spec_path, gen_out);
        if (*run) return cmd_run(run_config, run_out);
        if (*sweep) return cmd_sweep(sweep_config, sweep_out);
        if (*inspect) return cmd_inspect(inspect_dir, inspect_features, inspect_candidates, inspect_truth);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
