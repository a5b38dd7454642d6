#include "plcp/core.hpp"

#include "../oracles.hpp"

#include <gtest/gtest.h>

namespace plcp {
namespace {

Matrix row(std::initializer_list<double> values) {
    Matrix m(1, static_cast<Eigen::Index>(values.size()));
    Eigen::Index j = 0;
    for (const double v : values) m(0, j++) = v;
    return m;
}

PartialLabelDataset single_row(const Matrix& y) { return PartialLabelDataset(Matrix::Zero(y.rows(), 2), y); }

TEST(Dataset, RejectsEmptyCandidateRow) {
    Matrix y(2, 3);
    y << 1, 0, 1, 0, 0, 0;
    try {
        PartialLabelDataset(Matrix::Zero(2, 2), y);
        FAIL() << "expected rejection";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos) << e.what();
    }
}

TEST(Dataset, RejectsTruthOutsideCandidates) {
    Matrix y(2, 3);
    y << 1, 0, 1, 0, 1, 0;
    EXPECT_NO_THROW(PartialLabelDataset(Matrix::Zero(2, 2), y, Labels{2, 1}));
    EXPECT_THROW(PartialLabelDataset(Matrix::Zero(2, 2), y, Labels{1, 1}), Error);
    EXPECT_THROW(PartialLabelDataset(Matrix::Zero(2, 2), y, Labels{0, 3}), Error);
    EXPECT_THROW(PartialLabelDataset(Matrix::Zero(2, 2), y, Labels{0}), Error);
}

TEST(Dataset, RejectsNonFiniteFeaturesAndNonBinaryCandidates) {
    Matrix x = Matrix::Zero(2, 2);
    x(1, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(PartialLabelDataset(x, Matrix::Ones(2, 2)), Error);
    Matrix y = Matrix::Ones(2, 2);
    y(0, 1) = 0.5;
    EXPECT_THROW(PartialLabelDataset(Matrix::Zero(2, 2), y), Error);
    EXPECT_THROW(PartialLabelDataset(Matrix::Zero(3, 2), Matrix::Ones(2, 2)), Error);
}

TEST(Dataset, NoncandidatesAndSubset) {
    Matrix y(3, 3);
    y << 1, 1, 0, 0, 0, 1, 1, 1, 1;
    Matrix x(3, 1);
    x << 10, 20, 30;
    PartialLabelDataset ds(x, y, Labels{1, 2, 0});
    EXPECT_TRUE(ds.noncandidates().isApprox(Matrix::Ones(3, 3) - y));
    EXPECT_DOUBLE_EQ(ds.mean_candidate_count(), 2.0);
    const auto sub = ds.subset({2, 0});
    EXPECT_EQ(sub.size(), 2);
    EXPECT_EQ(sub.features()(0, 0), 30);
    EXPECT_EQ((*sub.ground_truth())[1], 1);
}

TEST(InitConfidence, UniformOverCandidates) {
    EXPECT_TRUE(init_confidence(single_row(row({1, 1, 0, 0}))).p.isApprox(row({0.5, 0.5, 0, 0})));
    EXPECT_EQ(init_confidence(single_row(row({0, 0, 1, 0}))).p, row({0, 0, 1, 0}));
    const auto all = init_confidence(single_row(row({1, 1, 1, 1})));
    EXPECT_TRUE(all.p.isApprox(row({0.25, 0.25, 0.25, 0.25})));
    EXPECT_EQ(all.phat, row({0, 0, 0, 0}));
}

TEST(InitConfidence, StateSatisfiesInvariants) {
    std::mt19937_64 rng(7);
    const Matrix y = oracle::random_candidates(rng, 30, 5);
    const PartialLabelDataset ds(oracle::random_matrix(rng, 30, 3), y);
    const auto state = init_confidence(ds, -1.0);
    EXPECT_NO_THROW(check_state(state, y));
    EXPECT_EQ(state.ohat, state.p);
    EXPECT_EQ(state.phat, ds.noncandidates());
    // Uniform p blurs to itself.
    EXPECT_TRUE(state.o.isApprox(state.p, 1e-12));
}

TEST(LabelingUpdate, Examples) {
    const Matrix out = update_labeling_confidence(row({0.5, 0.5, 0}), row({0.9, 0.3, 0.4}), row({1, 1, 0}), 0.5);
    // Independent scalar evaluation: clamp(0.5*0.5 + 0.5*0.9) = 0.7, clamp(0.5*0.5 + 0.5*0.3) = 0.4, y=0 -> 0.
    EXPECT_NEAR(out(0, 0), 0.7, 1e-15);
    EXPECT_NEAR(out(0, 1), 0.4, 1e-15);
    EXPECT_EQ(out(0, 2), 0.0);

    const Matrix p = row({0.2, 0.7, 0.0});
    EXPECT_EQ(update_labeling_confidence(p, row({5, -5, 3}), row({1, 1, 0}), 1.0), p);

    const Matrix clipped = update_labeling_confidence(row({1, 0}), row({-0.2, 1.5}), row({1, 1}), 0.0);
    EXPECT_EQ(clipped, row({0.0, 1.0}));
}

TEST(LabelingUpdate, ShapeMismatchAndAlphaRange) {
    EXPECT_THROW(update_labeling_confidence(row({1, 0}), row({1, 0, 0}), row({1, 1}), 0.5), Error);
    EXPECT_THROW(update_labeling_confidence(row({1, 0}), row({1, 0}), row({1, 1}), 1.5), Error);
}

TEST(NoncandidateUpdate, Examples) {
    const Matrix out = update_noncandidate_confidence(row({0, 1}), row({0.4, 0.2}), row({0, 1}), 0.5);
    EXPECT_NEAR(out(0, 0), 0.2, 1e-15);
    EXPECT_EQ(out(0, 1), 1.0);
    const Matrix saturated =
        update_noncandidate_confidence(row({0, 0, 1}), row({1.5, 2.0, 3.0}), row({0, 0, 1}), 0.3);
    EXPECT_EQ(saturated, row({1, 1, 1}));
}

TEST(SingleCandidateRows, PinnedAfterUpdates) {
    Matrix y(2, 3);
    y << 0, 1, 0, 1, 1, 0;
    ConfidenceState s;
    s.p = update_labeling_confidence(y, Matrix::Constant(2, 3, 0.3), y, 0.5);
    s.phat = update_noncandidate_confidence(Matrix::Ones(2, 3) - y, Matrix::Constant(2, 3, 0.8),
                                            Matrix::Ones(2, 3) - y, 0.5);
    EXPECT_NEAR(s.p(0, 1), 0.65, 1e-15);
    pin_single_candidate_rows(s, y);
    EXPECT_EQ(s.p.row(0), row({0, 1, 0}));
    EXPECT_EQ(s.phat.row(0), row({1, 0, 1}));
    // Ambiguous rows are untouched.
    EXPECT_NEAR(s.p(1, 0), 0.65, 1e-15);
    EXPECT_NEAR(s.phat(1, 1), 0.4, 1e-15);
}

TEST(UpdateProperties, RandomInputsStayInBoxes) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix y = oracle::random_candidates(rng, 6, 4);
        const Matrix yhat = Matrix::Ones(6, 4) - y;
        const Matrix a = oracle::random_matrix(rng, 6, 4, -2.0, 2.0);
        const Matrix b = oracle::random_matrix(rng, 6, 4, -2.0, 2.0);
        const double alpha = unit(rng);
        const Matrix p = update_labeling_confidence(a, b, y, alpha);
        EXPECT_TRUE((p.array() >= 0.0).all() && (p.array() <= y.array()).all());
        const Matrix ph = update_noncandidate_confidence(a, b, yhat, alpha);
        EXPECT_TRUE((ph.array() >= yhat.array()).all() && (ph.array() <= 1.0).all());
    }
}

TEST(UpdateProperties, FixedPointsAreIdempotent) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix y = oracle::random_candidates(rng, 5, 4, 0.8);
        const Matrix p = oracle::random_matrix(rng, 5, 4, 0.0, 1.0).cwiseProduct(y);
        EXPECT_TRUE(update_labeling_confidence(p, p, y, 0.37).isApprox(p, 1e-15));
        const Matrix yhat = Matrix::Ones(5, 4) - y;
        const Matrix ph = oracle::random_matrix(rng, 5, 4, 0.0, 1.0).cwiseMax(yhat);
        const Matrix again = update_noncandidate_confidence(ph, ph, yhat, 0.61);
        EXPECT_TRUE(again.isApprox(ph, 1e-15));
    }
}

TEST(UpdateProperties, BlendIsBetweenInputsBeforeClamping) {
    // With an all-ones candidate mask and inputs inside [0, 1] the clamps are inactive.
    std::mt19937_64 rng(13);
    const Matrix y = Matrix::Ones(4, 3);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix a = oracle::random_matrix(rng, 4, 3, 0.0, 1.0);
        const Matrix b = oracle::random_matrix(rng, 4, 3, 0.0, 1.0);
        Matrix previous = update_labeling_confidence(a, b, y, 0.0);
        EXPECT_TRUE(previous.isApprox(b, 1e-15));
        for (double alpha = 0.1; alpha <= 1.0 + 1e-12; alpha += 0.1) {
            const Matrix cur = update_labeling_confidence(a, b, y, std::min(alpha, 1.0));
            // Moves monotonically from b towards a.
            EXPECT_TRUE(((cur - previous).array() * (a - b).array() >= -1e-15).all());
            previous = cur;
        }
    }
}

TEST(ArgmaxOverCandidates, SkipsNonCandidatesAndBreaksTiesLow) {
    Matrix s(2, 3);
    s << 0.9, 0.2, 0.2, 0.4, 0.4, 0.1;
    Matrix y(2, 3);
    y << 0, 1, 1, 1, 1, 1;
    EXPECT_EQ(argmax_over_candidates(s, y), (Labels{1, 0}));
}

TEST(CheckState, DetectsViolations) {
    const Matrix y = row({1, 1, 0});
    ConfidenceState s{row({0.5, 0.5, 0}), row({0, 0, 1}), row({0.5, 0.5, 0}), row({0.5, 0.5, 0})};
    EXPECT_NO_THROW(check_state(s, y));
    auto bad = s;
    bad.p(0, 2) = 0.1;
    EXPECT_THROW(check_state(bad, y), InvariantViolation);
    bad = s;
    bad.phat(0, 2) = 0.5;
    EXPECT_THROW(check_state(bad, y), InvariantViolation);
    bad = s;
    bad.o(0, 0) = 0.6;
    EXPECT_THROW(check_state(bad, y), InvariantViolation);
    bad = s;
    bad.ohat = row({0.4, 0.4, 0.2});
    EXPECT_THROW(check_state(bad, y), InvariantViolation);
}

}  // namespace
}  // namespace plcp
