#include <gtest/gtest.h>

#include "hnn/bench.hpp"
#include "hnn/common.hpp"
#include "hnn/metrics.hpp"
#include "hnn/tmfg.hpp"
#include "oracles.hpp"

namespace {

hnn::HasseDiagram tmfg_diagram(int p, uint64_t seed) {
    auto sim = oracle::random_similarity(p, seed);
    auto [g, trace] = hnn::tmfg_construct(sim);
    return hnn::hasse_from_graph(g);
}

TEST(Ablation, VariantWiring) {
    auto d = tmfg_diagram(8, 1);
    auto hnn_net = hnn::build_variant(d, {hnn::Variant::hnn, 1},
                                      hnn::Activation::relu, 1);
    auto mlp_hnn = hnn::build_variant(d, {hnn::Variant::mlp_hnn, 1},
                                      hnn::Activation::relu, 1);
    auto mlp_res = hnn::build_variant(d, {hnn::Variant::mlp_res, 1},
                                      hnn::Activation::relu, 1);
    auto mlp = hnn::build_variant(d, {hnn::Variant::mlp, 1},
                                  hnn::Activation::relu, 1);

    // identical sparsity pattern between hnn and mlp_hnn
    EXPECT_EQ(hnn_net.topology().n_link_weights(), mlp_hnn.topology().n_link_weights());
    EXPECT_EQ(hnn_net.readout_mode(), hnn::ReadoutMode::all_layers);
    EXPECT_EQ(mlp_hnn.readout_mode(), hnn::ReadoutMode::last_layer);
    // dense variants share layer sizes with the diagram
    EXPECT_EQ(mlp.topology().layer_sizes, hnn_net.topology().layer_sizes);
    EXPECT_EQ(mlp.topology().n_link_weights(), mlp.topology().dense_link_weights());
    EXPECT_EQ(mlp_res.readout_mode(), hnn::ReadoutMode::all_layers);
}

TEST(Ablation, ParameterOrdering) {
    auto d = tmfg_diagram(10, 2);
    auto pc = [&](hnn::Variant v) {
        return hnn::build_variant(d, {v, 1}, hnn::Activation::relu, 1)
            .param_breakdown();
    };
    auto hnn_b = pc(hnn::Variant::hnn);
    auto mlp_hnn_b = pc(hnn::Variant::mlp_hnn);
    auto mlp_b = pc(hnn::Variant::mlp);

    EXPECT_LT(mlp_hnn_b.total, mlp_b.total);
    // hnn = mlp_hnn + residual readout links (every neuron below the top layer)
    const long residual_links = hnn_b.readout_weights - mlp_hnn_b.readout_weights;
    EXPECT_EQ(hnn_b.total, mlp_hnn_b.total + residual_links);
    EXPECT_GT(residual_links, 0);
}

TEST(Ablation, SparseBeatsDenseWeightCount) {
    for (int p : {5, 9, 20}) {
        auto d = tmfg_diagram(p, 30 + p);
        auto b = hnn::build_variant(d, {hnn::Variant::hnn, 1},
                                    hnn::Activation::relu, 1)
                     .param_breakdown();
        EXPECT_LT(b.link_weights, b.dense_link_weights) << "p=" << p;
    }
}

TEST(LinearBaseline, ExactOnLinearData) {
    hnn::Rng rng(5);
    Eigen::MatrixXd x(40, 3);
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 3; ++j) x(i, j) = rng.normal();
    Eigen::VectorXd y = 2.0 * x.col(0) - 0.5 * x.col(2);
    y.array() += 3.25;
    auto m = hnn::fit_linear(x, y);
    EXPECT_FALSE(m.ridge_fallback);
    EXPECT_NEAR(m.intercept, 3.25, 1e-9);
    EXPECT_NEAR(m.coef(0), 2.0, 1e-9);
    EXPECT_NEAR(m.coef(1), 0.0, 1e-9);
    EXPECT_NEAR(m.coef(2), -0.5, 1e-9);
    EXPECT_LT((hnn::predict(m, x) - y).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(LinearBaseline, CollinearTriggersRidge) {
    hnn::Rng rng(6);
    Eigen::MatrixXd x(30, 3);
    for (int i = 0; i < 30; ++i) {
        x(i, 0) = rng.normal();
        x(i, 1) = 2.0 * x(i, 0); // exact collinearity
        x(i, 2) = rng.normal();
    }
    Eigen::VectorXd y = x.col(0) + x.col(2);
    auto m = hnn::fit_linear(x, y);
    EXPECT_TRUE(m.ridge_fallback);
    // still predicts well despite the degenerate design
    EXPECT_LT((hnn::predict(m, x) - y).cwiseAbs().maxCoeff(), 1e-3);
    EXPECT_THROW(hnn::fit_linear(x, y, 0.0), hnn::Error);
}

TEST(Persistence, LastObservedValue) {
    Eigen::MatrixXd series(2, 10);
    for (int t = 0; t < 10; ++t) {
        series(0, t) = t;
        series(1, t) = 100 + t;
    }
    auto pred = hnn::persistence_forecast(series, {0, 3}, 4);
    // window [0,4) ends at t=3; window [3,7) ends at t=6
    EXPECT_DOUBLE_EQ(pred(0, 0), 3.0);
    EXPECT_DOUBLE_EQ(pred(0, 1), 103.0);
    EXPECT_DOUBLE_EQ(pred(1, 0), 6.0);
    EXPECT_DOUBLE_EQ(pred(1, 1), 106.0);
}

TEST(Aggregate, QuantilesAgainstDirectSort) {
    std::vector<double> scores{0.9, 0.1, 0.5, 0.3, 0.7};
    auto rep = hnn::aggregate_scores("m", scores);
    EXPECT_EQ(rep.n, 5);
    EXPECT_DOUBLE_EQ(rep.q50, 0.5);
    EXPECT_NEAR(rep.mean, 0.5, 1e-12);
    EXPECT_DOUBLE_EQ(rep.q10, 0.1 + 0.4 * 0.2);
    EXPECT_DOUBLE_EQ(rep.q90, 0.7 + 0.6 * 0.2);
}

// small end-to-end experiment: a linear target is representable by every
// variant's linear path, so all R2 should be high
TEST(Experiment, LinearTargetAllVariantsFit) {
    hnn::Rng rng(8);
    const int n = 400, p = 6;
    hnn::Dataset ds;
    ds.values.resize(n, p);
    for (int j = 0; j < p; ++j) ds.names.push_back("x" + std::to_string(j));
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) ds.values(i, j) = rng.normal();
        y(i) = 1.5 * ds.values(i, 0) - 2.0 * ds.values(i, 3) + 0.5;
    }
    ds.target = y;
    ds.target_name = "y";

    hnn::ExperimentConfig cfg;
    cfg.seed = 3;
    cfg.train.max_epochs = 300;
    cfg.train.patience = 40;
    cfg.train.batch_size = 64;
    cfg.grid_lr = {1e-2};
    auto result = hnn::run_tabular_experiment(ds,
                                              {{hnn::Variant::hnn, 1},
                                               {hnn::Variant::mlp_res, 1},
                                               {hnn::Variant::mlp_hnn, 1},
                                               {hnn::Variant::mlp, 1}},
                                              cfg);
    ASSERT_EQ(result.rows.size(), 4u);
    for (const auto& row : result.rows)
        EXPECT_GT(row.r2, 0.99) << to_string(row.variant);
    EXPECT_EQ(result.n_train + result.n_test, n);
}

TEST(Experiment, RequiresTarget) {
    hnn::Dataset ds;
    ds.names = {"a", "b", "c", "d"};
    ds.values = Eigen::MatrixXd::Random(50, 4);
    hnn::ExperimentConfig cfg;
    EXPECT_THROW(hnn::run_tabular_experiment(ds, {{hnn::Variant::hnn, 1}}, cfg),
                 hnn::Error);
}

} // namespace
