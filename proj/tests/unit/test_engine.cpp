#include "plcp/engine.hpp"

#include "plcp/data.hpp"
#include "plcp/metrics.hpp"

#include "../oracles.hpp"

#include <gtest/gtest.h>

namespace plcp {
namespace {

PartialLabelDataset blobs(int n, int l, double flip_q, std::uint64_t seed, double separation = 2.0) {
    SyntheticSpec spec;
    spec.n = n;
    spec.d = 4;
    spec.l = l;
    spec.flip_q = flip_q;
    spec.separation = separation;
    spec.seed = seed;
    return generate_synthetic(spec);
}

TEST(ShouldStop, Examples) {
    const Labels a{0, 1, 2, 0, 1, 2, 0, 1, 2, 0};
    std::deque<double> history;
    EXPECT_FALSE(should_stop(a, a, history, 0.05));
    EXPECT_TRUE(should_stop(a, a, history, 0.05));

    Labels b = a;
    b[0] = 1;  // 10% changed
    history.clear();
    EXPECT_FALSE(should_stop(a, b, history, 0.05));
    EXPECT_FALSE(should_stop(b, a, history, 0.05));

    Labels base(100, 0), four = base, six = base;
    for (int i = 0; i < 4; ++i) four[i] = 1;
    for (int i = 0; i < 6; ++i) six[i] = 1;
    history.clear();
    EXPECT_FALSE(should_stop(base, four, history, 0.05));
    EXPECT_FALSE(should_stop(base, six, history, 0.05));
    EXPECT_FALSE(should_stop(base, four, history, 0.05));
    EXPECT_TRUE(should_stop(base, four, history, 0.05));
    EXPECT_EQ(history.size(), 2u);
    EXPECT_THROW(label_change_fraction(a, Labels{1}), Error);
}

TEST(RunPlcp, SingleIteration) {
    const auto ds = blobs(60, 3, 0.4, 1);
    const auto [train, test] = split(ds, 0.5, 1);
    EngineConfig config;
    config.max_iter = 1;
    const auto report = run_plcp(train, test.features(), config);
    EXPECT_EQ(report.iterations_run, 1);
    ASSERT_EQ(report.trajectories.size(), 1u);
    EXPECT_EQ(report.test_predictions.size(), static_cast<std::size_t>(test.size()));
    const Kernel kern = Kernel::resolve(config.partner.kernel, train.features());
    EXPECT_EQ(report.test_predictions,
              predict_labels(report.final_partner, kern.cross(test.features(), train.features())));
    EXPECT_EQ(report.train_predictions, argmax_over_candidates(report.final_state.ohat, train.candidates()));
}

TEST(RunPlcp, FullySupervisedExitsAfterFirstIteration) {
    const auto ds = blobs(40, 3, 0.0, 2);
    const auto report = run_plcp(ds, Matrix(0, 4), EngineConfig{});
    EXPECT_EQ(report.iterations_run, 1);
    EXPECT_EQ(report.train_predictions, *ds.ground_truth());
    EXPECT_EQ(report.trajectories[0].change_fraction, 0.0);
}

TEST(RunPlcp, InvariantsHoldAndTrajectoriesMatchIterations) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto ds = blobs(90, 4, 0.5, seed);
        EngineConfig config;
        config.stop_change_frac = 0.0;
        const auto report = run_plcp(ds, Matrix(0, 4), config);
        EXPECT_EQ(report.iterations_run, 5);
        EXPECT_EQ(report.trajectories.size(), 5u);
        EXPECT_NO_THROW(check_state(report.final_state, ds.candidates()));
        for (const auto& snap : report.trajectories) {
            for (Eigen::Index i = 0; i < ds.size(); ++i) {
                EXPECT_GE(snap.truth_confidence(i), 0.0);
                if (ds.candidate_count(i) == 1) {
                    EXPECT_TRUE(std::isnan(snap.max_false_confidence(i)));
                }
            }
        }
    }
}

TEST(RunPlcp, IsDeterministic) {
    const auto ds = blobs(80, 3, 0.5, 4);
    const auto [train, test] = split(ds, 0.5, 4);
    EngineConfig config;
    config.seed = 9;
    const auto a = run_plcp(train, test.features(), config);
    const auto b = run_plcp(train, test.features(), config);
    EXPECT_EQ(a.train_predictions, b.train_predictions);
    EXPECT_EQ(a.test_predictions, b.test_predictions);
    EXPECT_EQ(a.final_state.p, b.final_state.p);
    EXPECT_EQ(a.final_partner.objective_trace, b.final_partner.objective_trace);
}

TEST(RunPlcp, PairedTransductiveImprovement) {
    const auto ds = blobs(300, 3, 0.3, 11);
    const auto [train, test] = split(ds, 0.5, 11);
    EngineConfig config;
    const auto base = run_base_alone(train, test.features(), config);
    const auto plcp = run_plcp(train, test.features(), config);
    const auto& truth = *train.ground_truth();
    EXPECT_GE(accuracy(plcp.train_predictions, truth), accuracy(base.train_predictions, truth));
}

TEST(RunPlcp, PartnerSupervisionCorrectsBaseMistakes) {
    // Fixed fixture where the base alone ranks a false positive above the ground truth for some samples.
    const auto ds = blobs(200, 4, 0.6, 21, 1.5);
    EngineConfig config;
    const auto base = run_base_alone(ds, Matrix(0, 4), config);
    const auto plcp = run_plcp(ds, Matrix(0, 4), config);
    const auto& truth = *ds.ground_truth();
    int mistaken = 0, changed = 0, corrected = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (base.train_predictions[i] == truth[i]) continue;
        ++mistaken;
        if (plcp.train_predictions[i] != base.train_predictions[i]) ++changed;
        if (plcp.train_predictions[i] == truth[i]) ++corrected;
    }
    ASSERT_GT(mistaken, 0);
    EXPECT_GT(changed, 0);
    EXPECT_GT(corrected, 0);
}

TEST(RunPlcp, KernelLsBaseAndBinarizedPath) {
    const auto ds = blobs(60, 3, 0.4, 5);
    EngineConfig config;
    config.base = KernelLsSpec{};
    EXPECT_NO_THROW(run_plcp(ds, ds.features().topRows(5), config));
    config.base = PlKnnSpec{5, true};
    const auto report = run_plcp(ds, ds.features().topRows(5), config);
    EXPECT_NO_THROW(check_state(report.final_state, ds.candidates()));
    config.predict_from_base = true;
    EXPECT_EQ(run_plcp(ds, ds.features().topRows(5), config).test_predictions.size(), 5u);
}

TEST(EngineConfig, Validation) {
    const auto ds = blobs(30, 3, 0.3, 6);
    EngineConfig config;
    config.alpha = 1.5;
    EXPECT_THROW(run_plcp(ds, Matrix(0, 4), config), Error);
    config = EngineConfig{};
    config.max_iter = 0;
    EXPECT_THROW(run_plcp(ds, Matrix(0, 4), config), Error);
    config = EngineConfig{};
    config.k = 1.0;
    EXPECT_THROW(run_plcp(ds, Matrix(0, 4), config), Error);
    config = EngineConfig{};
    EXPECT_THROW(run_plcp(ds, Matrix::Zero(2, 3), config), Error);
}

TEST(ArgmaxRows, LowestIndexOnTies) {
    Matrix s(2, 3);
    s << 0.2, 0.5, 0.5, -1, -2, -1;
    EXPECT_EQ(argmax_rows(s), (Labels{1, 0}));
}

}  // namespace
}  // namespace plcp
