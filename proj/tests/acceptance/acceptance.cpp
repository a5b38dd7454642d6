// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any fails.

#include "plcp/blur.hpp"
#include "plcp/experiment.hpp"
#include "plcp/partner.hpp"
#include "plcp/qp.hpp"

#include "../oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

namespace {

using namespace plcp;
using Clock = std::chrono::steady_clock;

// Tolerances and budgets.
constexpr int kContractionTriples = 10000;
constexpr double kContractionBudgetS = 1.0;

constexpr int kQpProblems = 500;
constexpr int kQpMaxLabels = 6;
constexpr double kQpCoordTol = 1e-8;
constexpr double kQpKktTol = 1e-8;
constexpr double kQpBudgetS = 10.0;

constexpr int kZeroHotRows = 200;
constexpr double kZeroHotGamma = 1e6;
constexpr double kZeroHotTol = 1e-3;
constexpr double kZeroHotBudgetS = 2.0;

constexpr int kDualInstances = 50;
constexpr int kDualMaxN = 50, kDualMaxD = 10, kDualMaxL = 5;
constexpr double kDualLambda = 0.05;
constexpr double kDualTol = 1e-6;
constexpr double kDualBudgetS = 5.0;

constexpr int kDescentInstances = 100;
constexpr double kDescentSlack = 1e-8;
constexpr double kDescentBudgetS = 30.0;

constexpr double kPairedFlipRates[] = {0.3, 0.5};
constexpr int kPairedSeeds = 10;
constexpr double kTestAccuracySlack = 0.01;
constexpr double kPairedBudgetS = 120.0;

constexpr int kFlipSamples = 10000;
constexpr double kFlipMean = 3.0;
constexpr double kFlipTol = 0.1;
constexpr double kFlipBudgetS = 1.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const std::string& name, const Outcome& outcome, double elapsed, double budget) {
    const bool in_budget = budget <= 0.0 || elapsed < budget;
    const bool pass = outcome.pass && in_budget;
    if (!pass) ++failures;
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << name << " | " << outcome.detail;
    if (budget > 0.0) {
        line << " | " << elapsed << " s (budget " << budget << " s" << (in_budget ? "" : ", EXCEEDED") << ")";
    }
    std::printf("%s\n", line.str().c_str());
    std::fflush(stdout);
}

template <typename F>
void timed(int id, const std::string& name, double budget, F&& body) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome = {false, std::string("exception: ") + e.what()};
    }
    report(id, name, outcome, seconds_since(start), budget);
}

Outcome contraction() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unit(0.0, 1.0), temp(-10.0, -1e-3);
    int violations = 0, evaluated = 0;
    Matrix p(1, 2);
    const Matrix y = Matrix::Ones(1, 2);
    while (evaluated < kContractionTriples) {
        double a = unit(rng), b = unit(rng);
        if (a == b) continue;
        if (a < b) std::swap(a, b);
        p << a, b;
        const Matrix o = blur_labeling(p, y, temp(rng));
        if (!(o(0, 0) - o(0, 1) < a - b)) ++violations;
        ++evaluated;
    }
    return {violations == 0, std::to_string(evaluated) + " triples, " + std::to_string(violations) + " violations"};
}

Outcome qp_correctness() {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<int> l_dist(2, kQpMaxLabels);
    std::uniform_real_distribution<double> gamma_dist(0.0, 10.0);
    std::bernoulli_distribution noncandidate(0.35);
    double worst_diff = 0.0, worst_kkt = 0.0;
    int missing_oracle = 0;
    for (int t = 0; t < kQpProblems; ++t) {
        const int l = l_dist(rng);
        Matrix yhat = Matrix::Zero(1, l);
        for (int j = 0; j < l; ++j) yhat(0, j) = noncandidate(rng) ? 1.0 : 0.0;
        yhat(0, std::uniform_int_distribution<int>(0, l - 1)(rng)) = 0.0;
        Matrix o = oracle::random_matrix(rng, 1, l, 0.0, 1.0).cwiseProduct(Matrix::Ones(1, l) - yhat);
        o /= o.sum();
        const Matrix j = oracle::random_matrix(rng, 1, l, -0.5, 1.5);
        const auto problem = c_row_problem(j, o, yhat, gamma_dist(rng), 0);
        const auto sol = solve_row_detailed(problem);
        const auto ref = oracle::exhaustive_row_qp(problem.linear, problem.lower, problem.upper, problem.sum_target);
        if (!ref) {
            ++missing_oracle;
            continue;
        }
        worst_diff = std::max(worst_diff, (sol.c - *ref).cwiseAbs().maxCoeff());
        worst_kkt = std::max(worst_kkt, kkt_residual(problem, sol.c, sol.multiplier));
    }
    std::ostringstream d;
    d << kQpProblems << " rows, max |c - oracle| = " << worst_diff << ", max KKT residual = " << worst_kkt;
    return {missing_oracle == 0 && worst_diff <= kQpCoordTol && worst_kkt <= kQpKktTol, d.str()};
}

Outcome zero_hot() {
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> l_dist(2, kQpMaxLabels);
    double worst = 0.0;
    for (int t = 0; t < kZeroHotRows; ++t) {
        const int l = l_dist(rng);
        Matrix o = oracle::random_matrix(rng, 1, l, 0.0, 1.0);
        o /= o.sum();
        Eigen::Index peak;
        o.row(0).maxCoeff(&peak);
        const Matrix c = solve_matrix(Matrix::Zero(1, l), o, Matrix::Zero(1, l), kZeroHotGamma);
        Matrix target = Matrix::Ones(1, l);
        target(0, peak) = 0.0;
        worst = std::max(worst, (c - target).cwiseAbs().maxCoeff());
    }
    std::ostringstream d;
    d << kZeroHotRows << " rows, max deviation from zero-hot = " << worst;
    return {worst <= kZeroHotTol, d.str()};
}

Outcome primal_dual() {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> n_dist(2, kDualMaxN), d_dist(1, kDualMaxD), l_dist(2, kDualMaxL);
    double worst = 0.0;
    for (int t = 0; t < kDualInstances; ++t) {
        const int n = n_dist(rng), d = d_dist(rng), l = l_dist(rng);
        const Matrix x = oracle::random_matrix(rng, n, d, -2.0, 2.0);
        const Matrix c = oracle::random_matrix(rng, n, l, 0.0, 1.0);
        const Matrix k = x * x.transpose();
        const Matrix dual = predict(kkt_solve(k, c, kDualLambda), k);
        const Matrix primal = oracle::primal_ridge(x, c, kDualLambda).output;
        worst = std::max(worst, (dual - primal).cwiseAbs().maxCoeff());
    }
    std::ostringstream d;
    d << kDualInstances << " instances, max |H_dual - H_primal| = " << worst;
    return {worst <= kDualTol, d.str()};
}

Outcome alternating_descent() {
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<int> n_dist(10, 60), l_dist(2, 6), d_dist(1, 8);
    double worst_rise = 0.0;
    int bad = 0;
    for (int t = 0; t < kDescentInstances; ++t) {
        const int n = n_dist(rng), l = l_dist(rng);
        const Matrix x = oracle::random_matrix(rng, n, d_dist(rng), -2.0, 2.0);
        const Matrix y = oracle::random_candidates(rng, n, l, 0.5);
        const Matrix o = blur_labeling(oracle::random_matrix(rng, n, l, 0.0, 1.0).cwiseProduct(y), y, -1.0);
        PartnerConfig config;
        config.gamma = std::uniform_real_distribution<double>(0.0, 10.0)(rng);
        config.inner_iters = 20;
        config.inner_tol = 0.0;
        const auto model = fit_partner(PartialLabelDataset(x, y), o, config);
        const auto& trace = model.objective_trace;
        for (std::size_t i = 1; i < trace.size(); ++i) {
            const double rise = trace[i] - trace[i - 1];
            worst_rise = std::max(worst_rise, rise);
            if (rise > kDescentSlack) ++bad;
        }
    }
    std::ostringstream d;
    d << kDescentInstances << " fits, largest objective increase = " << worst_rise << ", violations = " << bad;
    return {bad == 0, d.str()};
}

ExperimentConfig paired_config(double flip_q) {
    ExperimentConfig config;
    config.dataset.spec.n = 500;
    config.dataset.spec.d = 8;
    config.dataset.spec.l = 5;
    config.dataset.spec.flip_q = flip_q;
    config.train_frac = 0.5;
    config.seeds.clear();
    for (int s = 1; s <= kPairedSeeds; ++s) config.seeds.push_back(static_cast<std::uint64_t>(s));
    config.engine.check_invariants = true;
    return config;
}

struct PairedRun {
    ExperimentResult result;
    std::vector<SummaryRow> summary;
    std::string csv;  // metric columns of results.csv, wall time excluded
};

std::string metric_columns(const std::filesystem::path& results) {
    const auto wall = static_cast<std::size_t>(
        std::find(results_header().begin(), results_header().end(), "wall_ms") - results_header().begin());
    std::string out;
    for (const auto& row : csv::read(results)) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c != wall) out += row[c] + ',';
        }
        out += '\n';
    }
    return out;
}

PairedRun run_paired(double flip_q, const std::filesystem::path& dir) {
    PairedRun run;
    const auto config = paired_config(flip_q);
    run.result = run_experiment(config);
    run.summary = summarize(run.result.rows);
    write_experiment(dir, config, run.result);
    run.csv = metric_columns(dir / "results.csv");
    return run;
}

const SummaryRow* find_method(const std::vector<SummaryRow>& rows, const std::string& method) {
    for (const auto& r : rows) {
        if (r.method == method) return &r;
    }
    return nullptr;
}

Outcome flip_statistics() {
    SyntheticSpec spec;
    spec.n = kFlipSamples;
    spec.l = 5;
    spec.flip_q = 0.5;
    spec.seed = 606;
    const double mean = generate_synthetic(spec).mean_candidate_count();
    std::ostringstream d;
    d << "mean candidate-set size = " << mean << " (expected " << kFlipMean << " +- " << kFlipTol << ")";
    return {std::abs(mean - kFlipMean) <= kFlipTol, d.str()};
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    timed(1, "blurring contraction", kContractionBudgetS, contraction);
    timed(2, "row QP vs exhaustive active-set oracle", kQpBudgetS, qp_correctness);
    timed(3, "zero-hot limit at gamma = 1e6", kZeroHotBudgetS, zero_hot);
    timed(4, "primal-dual equivalence, linear kernel", kDualBudgetS, primal_dual);
    timed(5, "alternating descent of the partner objective", kDescentBudgetS, alternating_descent);

    const auto root = std::filesystem::temp_directory_path() / "plcp_acceptance";
    std::filesystem::remove_all(root);
    std::vector<PairedRun> first, second;
    const auto start = Clock::now();
    std::string error;
    try {
        for (const double q : kPairedFlipRates) {
            first.push_back(run_paired(q, root / ("first_q" + csv::format_real(q))));
        }
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double paired_elapsed = seconds_since(start);

    {
        Outcome out{error.empty(), error};
        std::ostringstream d;
        for (std::size_t i = 0; i < first.size() && error.empty(); ++i) {
            const auto* base = find_method(first[i].summary, "PL-KNN");
            const auto* plcp = find_method(first[i].summary, "PL-KNN-PLCP");
            if (base == nullptr || plcp == nullptr || base->runs != kPairedSeeds || plcp->runs != kPairedSeeds) {
                out.pass = false;
                d << "q=" << kPairedFlipRates[i] << ": missing runs; ";
                continue;
            }
            const double bt = base->means[1], pt = plcp->means[1], ba = base->means[0], pa = plcp->means[0];
            const bool ok = pt >= bt && pa >= ba - kTestAccuracySlack;
            out.pass = out.pass && ok;
            d << "q=" << kPairedFlipRates[i] << ": transductive " << bt << " -> " << pt << ", test " << ba << " -> "
              << pa << "; ";
        }
        if (error.empty()) out.detail = d.str();
        report(6, "end-to-end paired improvement (n=500, d=8, l=5, 10 seeds)", out, paired_elapsed, kPairedBudgetS);
    }

    {
        Outcome out{error.empty() && first.size() == 2, error};
        if (out.pass) {
            const auto* plcp = find_method(first[1].summary, "PL-KNN-PLCP");
            const double corr = plcp ? plcp->means[2] : 0.0, mis = plcp ? plcp->means[3] : 1.0;
            std::ostringstream d;
            d << "q=0.5: correction ratio " << corr << ", miscorrection ratio " << mis;
            out = {plcp != nullptr && corr > 0.0 && mis < corr, d.str()};
        }
        report(7, "appeal behaviour (correction vs miscorrection)", out, 0.0, 0.0);
    }

    {
        int violations = 0, other = 0;
        for (const auto& run : first) {
            violations += run.result.invariant_violations;
            other += static_cast<int>(run.result.failures.size()) - run.result.invariant_violations;
        }
        std::ostringstream d;
        d << violations << " invariant violations, " << other << " other failures across "
          << first.size() * kPairedSeeds << " paired runs";
        report(8, "engine invariants during paired runs", {error.empty() && violations == 0 && other == 0, d.str()},
               0.0, 0.0);
    }

    {
        Outcome out{error.empty(), error};
        try {
            std::size_t i = 0;
            for (const double q : kPairedFlipRates) {
                second.push_back(run_paired(q, root / ("second_q" + csv::format_real(q))));
                if (i < first.size() && second.back().csv != first[i].csv) out.pass = false;
                ++i;
            }
            if (out.pass) out.detail = "results.csv metric columns bit-identical across repeated runs";
            else if (out.detail.empty()) out.detail = "results.csv metric columns differ between repeated runs";
        } catch (const std::exception& e) {
            out = {false, e.what()};
        }
        report(9, "determinism of repeated paired runs", out, 0.0, 0.0);
    }

    timed(10, "flip protocol statistics (l=5, q=0.5, n=10000)", kFlipBudgetS, flip_statistics);

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
