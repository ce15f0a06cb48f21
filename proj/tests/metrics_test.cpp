#include <gtest/gtest.h>

#include "hnn/common.hpp"
#include "hnn/metrics.hpp"
#include "oracles.hpp"

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

TEST(R2, PerfectPrediction) {
    auto y = vec({1, 2, 3, 4});
    EXPECT_DOUBLE_EQ(hnn::r2_score(y, y), 1.0);
}

TEST(R2, MeanPredictorScoresExactlyZero) {
    auto y = vec({1.5, 2.5, -3.0, 7.25, 0.125});
    double m = 0;
    for (int i = 0; i < 5; ++i) m += y(i);
    m /= 5;
    Eigen::VectorXd pred = Eigen::VectorXd::Constant(5, m);
    EXPECT_EQ(hnn::r2_score(y, pred), 0.0); // exact
}

TEST(R2, CanBeStronglyNegative) {
    auto y = vec({1, 2, 3, 4, 5});
    auto pred = vec({10, -10, 20, -20, 30});
    EXPECT_LT(hnn::r2_score(y, pred), -5.0);
}

TEST(R2, ConstantTruthRejected) {
    auto y = vec({2, 2, 2});
    EXPECT_THROW(hnn::r2_score(y, y), hnn::Error);
}

TEST(R2, AffineInvariance) {
    hnn::Rng rng(3);
    Eigen::VectorXd y(30), pred(30);
    for (int i = 0; i < 30; ++i) {
        y(i) = rng.normal();
        pred(i) = y(i) + 0.3 * rng.normal();
    }
    const double base = hnn::r2_score(y, pred);
    const double scaled = hnn::r2_score((2.5 * y.array() + 7).matrix(),
                                        (2.5 * pred.array() + 7).matrix());
    EXPECT_NEAR(base, scaled, 1e-12);
}

TEST(Rse, PerfectAndMeanPredictor) {
    hnn::Rng rng(5);
    Eigen::MatrixXd y(20, 3);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 3; ++j) y(i, j) = rng.normal();
    EXPECT_DOUBLE_EQ(hnn::rse(y, y), 0.0);

    double m = 0;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 20; ++i) m += y(i, j);
    m /= 60;
    Eigen::MatrixXd mean_pred = Eigen::MatrixXd::Constant(20, 3, m);
    EXPECT_EQ(hnn::rse(y, mean_pred), 1.0); // exact by construction
}

TEST(Rse, ConstantTruthRejected) {
    // the guard a persistence forecast on a constant series runs into
    Eigen::MatrixXd y = Eigen::MatrixXd::Constant(5, 2, 3.0);
    Eigen::MatrixXd pred = Eigen::MatrixXd::Zero(5, 2);
    EXPECT_THROW(hnn::rse(y, pred), hnn::Error);
}

TEST(Rse, AffineInvariance) {
    hnn::Rng rng(7);
    Eigen::MatrixXd y(15, 2), pred(15, 2);
    for (int i = 0; i < 15; ++i)
        for (int j = 0; j < 2; ++j) {
            y(i, j) = rng.normal();
            pred(i, j) = y(i, j) + 0.2 * rng.normal();
        }
    const double base = hnn::rse(y, pred);
    const double scaled = hnn::rse(3.0 * y.array() - 2.0, 3.0 * pred.array() - 2.0);
    EXPECT_NEAR(base, scaled, 1e-12);
}

TEST(Corr, PerfectAndAntiPerfect) {
    hnn::Rng rng(9);
    Eigen::MatrixXd y(25, 4);
    for (int i = 0; i < 25; ++i)
        for (int j = 0; j < 4; ++j) y(i, j) = rng.normal();
    EXPECT_NEAR(hnn::corr_metric(y, y), 1.0, 1e-12);
    EXPECT_NEAR(hnn::corr_metric(y, -y), -1.0, 1e-12);
}

TEST(Corr, ConstantSeriesExcluded) {
    Eigen::MatrixXd y(4, 2), pred(4, 2);
    y << 1, 5, 2, 5, 3, 5, 4, 5; // second series constant
    pred << 1, 1, 2, 2, 3, 3, 4, 4;
    EXPECT_NEAR(hnn::corr_metric(y, pred), 1.0, 1e-12);

    Eigen::MatrixXd yc = Eigen::MatrixXd::Constant(4, 2, 3.0);
    EXPECT_THROW(hnn::corr_metric(yc, pred), hnn::Error);
}

TEST(TTest, DegenerateIdenticalSeries) {
    std::vector<double> a{1, 2, 3, 4};
    EXPECT_THROW(hnn::paired_t_test(a, a), hnn::Error);
}

TEST(TTest, TextbookFixture) {
    // n = 10 paired scores; t has the closed form 2 / (sqrt(2)/sqrt(10)) and
    // the two-sided p at 9 df is frozen from reference tables
    std::vector<double> before{72, 68, 75, 80, 66, 77, 71, 69, 74, 78};
    std::vector<double> after{70, 65, 74, 76, 66, 73, 70, 68, 73, 75};
    auto res = hnn::paired_t_test(before, after);
    EXPECT_EQ(res.df, 9);
    EXPECT_NEAR(res.t, 4.4721359550, 1e-8);
    EXPECT_NEAR(res.p, 1.5498859117e-03, 1e-8);
    // independent numeric-integration oracle, at the acceptance tolerance
    EXPECT_NEAR(res.p, oracle::t_test_p_oracle(res.t, res.df), 1e-4);
    EXPECT_NEAR(oracle::t_test_p_oracle(res.t, res.df), 1.5498859117e-03, 1e-8);
}

TEST(TTest, MatchesIntegrationOracleAcrossRange) {
    for (int df : {1, 2, 5, 9, 30}) {
        for (double t : {0.2, 1.0, 2.5, 4.0}) {
            const double x = df / (df + t * t);
            const double p = hnn::incomplete_beta(df / 2.0, 0.5, x);
            EXPECT_NEAR(p, oracle::t_test_p_oracle(t, df), 1e-8)
                << "df=" << df << " t=" << t;
        }
    }
}

TEST(TTest, LargeShiftTinyNoise) {
    hnn::Rng rng(11);
    std::vector<double> a, b;
    for (int i = 0; i < 12; ++i) {
        const double base = rng.normal();
        b.push_back(base);
        a.push_back(base + 1.0 + 1e-4 * rng.normal());
    }
    auto res = hnn::paired_t_test(a, b);
    EXPECT_LT(res.p, 1e-6);
}

TEST(TTest, AntisymmetricInArguments) {
    std::vector<double> a{1.2, 3.1, 0.5, 2.2, 1.9};
    std::vector<double> b{0.9, 2.8, 0.9, 2.0, 1.2};
    auto ab = hnn::paired_t_test(a, b);
    auto ba = hnn::paired_t_test(b, a);
    EXPECT_DOUBLE_EQ(ab.t, -ba.t);
    EXPECT_DOUBLE_EQ(ab.p, ba.p);
}

TEST(StudentT, CdfBasics) {
    EXPECT_NEAR(hnn::student_t_cdf(0.0, 5), 0.5, 1e-12);
    EXPECT_NEAR(hnn::student_t_cdf(1e9, 5), 1.0, 1e-9);
    // symmetry
    EXPECT_NEAR(hnn::student_t_cdf(-1.3, 7) + hnn::student_t_cdf(1.3, 7), 1.0, 1e-12);
}

TEST(Quantile, AgainstDirectSort) {
    std::vector<double> v{9, 1, 8, 2, 7, 3, 6, 4, 5};
    EXPECT_DOUBLE_EQ(hnn::quantile(v, 0.5), 5.0);
    EXPECT_DOUBLE_EQ(hnn::quantile(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(hnn::quantile(v, 1.0), 9.0);
    // 10th percentile of 1..9: h = 0.1*8 = 0.8 -> 1 + 0.8*(2-1)
    EXPECT_DOUBLE_EQ(hnn::quantile(v, 0.1), 1.8);
}

TEST(Significance, PaperThresholds) {
    EXPECT_STREQ(hnn::significance_marker(0.5), "");
    EXPECT_STREQ(hnn::significance_marker(0.009), "*");
    EXPECT_STREQ(hnn::significance_marker(0.0009), "**");
    EXPECT_STREQ(hnn::significance_marker(0.000009), "***");
}

} // namespace
