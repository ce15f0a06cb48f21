// End-to-end acceptance suite. Each test prints one [CRITERION n] line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include <gtest/gtest.h>

#include "hnn/bench.hpp"
#include "hnn/common.hpp"
#include "hnn/dataset.hpp"
#include "hnn/forecaster.hpp"
#include "hnn/homology.hpp"
#include "hnn/metrics.hpp"
#include "hnn/model.hpp"
#include "hnn/similarity.hpp"
#include "hnn/tmfg.hpp"
#include "hnn/train.hpp"
#include "oracles.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void criterion(int idx, const std::string& desc) {
    std::printf("[CRITERION %d] %s: %s\n", idx, desc.c_str(),
                ::testing::Test::HasFailure() ? "FAIL" : "PASS");
    std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// 1. TMFG structural sweep
// ---------------------------------------------------------------------------

TEST(Acceptance, C1TmfgStructuralSuite) {
    for (int p : {4, 5, 10, 50}) {
        for (int rep = 0; rep < 50; ++rep) {
            auto sim = oracle::random_similarity(p, 10000ull * p + rep);
            auto [g, trace] = hnn::tmfg_construct(sim);
            auto v = hnn::verify_tmfg(g);
            ASSERT_TRUE(v.is_tmfg) << "p=" << p << " rep=" << rep;
            ASSERT_EQ(v.edge_count, 3 * p - 6);
            ASSERT_EQ(v.n_tetrahedra, p - 3);
            ASSERT_EQ(v.n_triangles, 3 * p - 8);
            ASSERT_TRUE(v.chordal);
        }
    }
    const auto t0 = Clock::now();
    for (int rep = 0; rep < 50; ++rep) {
        auto sim = oracle::random_similarity(137, 999000ull + rep);
        auto [g, trace] = hnn::tmfg_construct(sim);
        auto v = hnn::verify_tmfg(g);
        ASSERT_TRUE(v.is_tmfg) << "p=137 rep=" << rep;
    }
    const double elapsed = seconds_since(t0);
    EXPECT_LT(elapsed, 5.0) << "p=137 batch took " << elapsed << "s";
    criterion(1, "TMFG structural suite (3p-6 edges, census, chordality, <5s at p=137)");
}

// ---------------------------------------------------------------------------
// 2. seven-vertex fixture
// ---------------------------------------------------------------------------

TEST(Acceptance, C2SevenVertexFixture) {
    auto g = oracle::seven_vertex_fixture();
    auto h = hnn::hasse_from_graph(g);
    EXPECT_EQ(h.layer_sizes(), (std::vector<int>{7, 11, 6, 1}));

    auto cliques = hnn::maximal_cliques(g);
    EXPECT_EQ(cliques.size(), 4u);

    auto tree = hnn::clique_tree(cliques, g);
    EXPECT_EQ(tree.tree_edges.size(), 3u);
    ASSERT_EQ(tree.separators.size(), 2u);
    EXPECT_EQ(tree.separators[0].vertices, (std::vector<int>{3}));
    EXPECT_EQ(tree.separators[0].multiplicity, 1);
    EXPECT_EQ(tree.separators[1].vertices, (std::vector<int>{3, 5}));
    EXPECT_EQ(tree.separators[1].multiplicity, 2);
    criterion(2, "fixture graph: layers [7,11,6,1], 4 cliques, separators {3}x1 {3,5}x2");
}

// ---------------------------------------------------------------------------
// 3. gradient correctness
// ---------------------------------------------------------------------------

TEST(Acceptance, C3GradientCorrectness) {
    int checked = 0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const int p = 4 + static_cast<int>(seed % 7);
        auto sim = oracle::random_similarity(p, 500 + seed);
        auto [g, trace] = hnn::tmfg_construct(sim);
        auto d = hnn::hasse_from_graph(g);
        hnn::SparseNet net(hnn::hasse_topology(d), hnn::Activation::tanh,
                           hnn::ReadoutMode::all_layers, 1);
        hnn::Rng rng(900 + seed);
        for (auto& w : net.params()) w = rng.uniform(-0.7, 0.7);

        const int B = 2 + static_cast<int>(seed % 3);
        Eigen::MatrixXd x(B, p), y(B, 1);
        for (int b = 0; b < B; ++b) {
            for (int j = 0; j < p; ++j) x(b, j) = rng.normal();
            y(b, 0) = rng.normal();
        }
        hnn::SparseNet::Cache cache;
        Eigen::MatrixXd pred = net.forward(x, &cache);
        auto analytic = net.backward(cache, hnn::mse_grad(pred, y));
        auto numeric = hnn::finite_diff_grad(net, x, y, 1e-5);
        ASSERT_LT(hnn::max_rel_error(analytic, numeric), 1e-4) << "seed " << seed;
        ++checked;
    }
    EXPECT_GE(checked, 20);

    // end-to-end composite on a 4-series toy
    hnn::Rng srng(4242);
    hnn::MultivariateSeries s;
    s.values.resize(4, 300);
    for (int t = 0; t < 300; ++t)
        for (int j = 0; j < 4; ++j)
            s.values(j, t) = std::sin(0.3 * t + j) + 0.3 * srng.normal();
    for (int j = 0; j < 4; ++j) s.names.push_back("s" + std::to_string(j));
    auto w = hnn::make_windows(s, 4, 2, 0.6, 0.2);

    hnn::Dataset view;
    view.names = s.names;
    view.values = s.values.transpose();
    auto sim = hnn::pearson_similarity(view, hnn::SimilarityVariant::absolute_corr);
    auto [g, trace] = hnn::tmfg_construct(sim);
    auto d = hnn::hasse_from_graph(g);
    hnn::SparseNet net(hnn::hasse_topology(d), hnn::Activation::tanh,
                       hnn::ReadoutMode::all_layers, 4);
    hnn::Forecaster model(4, 4, 3, std::move(net));
    model.init_params(7);

    std::vector<int> batch(w.train_starts.begin(), w.train_starts.begin() + 4);
    std::vector<double> analytic;
    model.loss_and_grad(w, batch, &analytic);
    std::vector<double> theta = model.get_params();
    auto numeric = hnn::finite_diff(
        theta,
        [&]() {
            model.set_params(theta);
            return model.loss_and_grad(w, batch, nullptr);
        },
        1e-5);
    model.set_params(theta);
    EXPECT_LT(hnn::max_rel_error(analytic, numeric), 1e-4);
    criterion(3, "backward matches finite differences (20 HNN triples + composite)");
}

// ---------------------------------------------------------------------------
// 4. sparse-dense equivalence
// ---------------------------------------------------------------------------

TEST(Acceptance, C4SparseDenseEquivalence) {
    for (int p = 4; p <= 12; ++p) {
        auto sim = oracle::random_similarity(p, 7000 + p);
        auto [g, trace] = hnn::tmfg_construct(sim);
        auto d = hnn::hasse_from_graph(g);
        hnn::SparseNet net(hnn::hasse_topology(d), hnn::Activation::relu,
                           hnn::ReadoutMode::all_layers, 1);
        hnn::Rng rng(7100 + p);
        for (auto& w : net.params()) w = rng.uniform(-1.0, 1.0);
        auto mask = oracle::densify(net);

        Eigen::MatrixXd x(100, p);
        for (int b = 0; b < 100; ++b)
            for (int j = 0; j < p; ++j) x(b, j) = rng.normal();
        Eigen::MatrixXd ys = net.forward(x);
        Eigen::MatrixXd yd = oracle::dense_forward(mask, net.topology().layer_sizes, x);
        for (int b = 0; b < 100; ++b)
            ASSERT_EQ(ys(b, 0), yd(b, 0)) << "p=" << p << " sample " << b;
    }
    criterion(4, "sparse forward equals zero-masked dense forward, exact 64-bit");
}

// ---------------------------------------------------------------------------
// 5. ablation ordering on planted-structure synthetics
// ---------------------------------------------------------------------------

// Ten draws share one planted graph so the datasets are equally hard; the
// target mixes a linear part with bounded clique-supported nonlinearities
// (a saturating sum and a product interaction per tetrahedron).
hnn::Dataset planted_dataset(int p, int n, uint64_t seed) {
    hnn::Rng rng(seed);
    auto sim = oracle::random_similarity(p, 3105);
    auto [g, trace] = hnn::tmfg_construct(sim);
    const auto cliques = hnn::maximal_cliques(g); // p-3 tetrahedra

    const int n_cliques = static_cast<int>(cliques.size());
    Eigen::MatrixXd x(n, p);
    Eigen::MatrixXd factors(n, n_cliques);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n_cliques; ++c) factors(i, c) = rng.normal();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) x(i, j) = 0.6 * rng.normal();
    for (int c = 0; c < n_cliques; ++c)
        for (int v : cliques[c]) x.col(v) += 0.8 * factors.col(c);

    Eigen::VectorXd beta(p);
    for (int j = 0; j < p; ++j) beta(j) = rng.uniform(-1.0, 1.0);
    Eigen::MatrixXd cw(n_cliques, 4);
    for (int c = 0; c < n_cliques; ++c)
        for (int k = 0; k < 4; ++k) cw(c, k) = rng.uniform() < 0.5 ? -1.0 : 1.0;

    Eigen::VectorXd linear = x * beta;
    Eigen::VectorXd nonlin = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n_cliques; ++c) {
            const auto& cl = cliques[c];
            const double prod = x(i, cl[0]) * x(i, cl[1]) - x(i, cl[2]) * x(i, cl[3]);
            double a = 0;
            for (int k = 0; k < 4; ++k) a += cw(c, k) * x(i, cl[k]);
            nonlin(i) += std::tanh(0.8 * a) + 0.5 * std::tanh(0.5 * prod);
        }
    const double lin_std = std::sqrt((linear.array() - linear.mean()).square().mean());
    const double non_std = std::sqrt((nonlin.array() - nonlin.mean()).square().mean());
    Eigen::VectorXd signal = linear + (1.5 * lin_std / non_std) * nonlin;
    const double sig_std = std::sqrt((signal.array() - signal.mean()).square().mean());
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = signal(i) + 0.1 * sig_std * rng.normal();

    hnn::Dataset ds;
    for (int j = 0; j < p; ++j) ds.names.push_back("x" + std::to_string(j));
    ds.values = x;
    ds.target = y;
    ds.target_name = "y";
    return ds;
}

TEST(Acceptance, C5AblationOrdering) {
    const auto t0 = Clock::now();
    std::vector<double> r2_hnn, r2_mlp_hnn, r2_mlp;
    for (uint64_t k = 0; k < 10; ++k) {
        auto ds = planted_dataset(20, 5000, 100 + k);
        hnn::ExperimentConfig cfg;
        cfg.seed = k;
        cfg.train.batch_size = 128;
        cfg.train.max_epochs = 200;
        cfg.train.patience = 30;
        cfg.grid_lr = {3e-3, 1e-2};
        cfg.grid_multiplier = {1};
        auto result = hnn::run_tabular_experiment(ds,
                                                  {{hnn::Variant::hnn, 1},
                                                   {hnn::Variant::mlp_hnn, 1},
                                                   {hnn::Variant::mlp, 1}},
                                                  cfg);
        for (const auto& row : result.rows) {
            if (row.variant == hnn::Variant::hnn) r2_hnn.push_back(row.r2);
            if (row.variant == hnn::Variant::mlp_hnn) r2_mlp_hnn.push_back(row.r2);
            if (row.variant == hnn::Variant::mlp) r2_mlp.push_back(row.r2);
        }
    }
    const double med_hnn = hnn::quantile(r2_hnn, 0.5);
    const double med_mlp_hnn = hnn::quantile(r2_mlp_hnn, 0.5);
    const double med_mlp = hnn::quantile(r2_mlp, 0.5);
    std::printf("  median R2: hnn=%.4f mlp_hnn=%.4f mlp=%.4f\n", med_hnn,
                med_mlp_hnn, med_mlp);
    EXPECT_GE(med_hnn, med_mlp_hnn);
    EXPECT_GE(med_mlp_hnn, med_mlp);
    EXPECT_GE(med_hnn, 0.8);
    const double elapsed = seconds_since(t0);
    EXPECT_LT(elapsed, 600.0) << "took " << elapsed << "s";
    criterion(5, "ablation ordering hnn >= mlp_hnn >= mlp, hnn median >= 0.8, <10min");
}

// ---------------------------------------------------------------------------
// 6. time-series property suite
// ---------------------------------------------------------------------------

hnn::MultivariateSeries seasonal_ar_series(int n_series, int T, uint64_t seed) {
    hnn::Rng rng(seed);
    hnn::MultivariateSeries s;
    s.values.resize(n_series, T);
    std::vector<double> phase(n_series), amp(n_series), ar(n_series, 0.0);
    for (int j = 0; j < n_series; ++j) {
        phase[j] = rng.uniform(0, 2 * M_PI);
        amp[j] = rng.uniform(0.8, 1.2);
        s.names.push_back("s" + std::to_string(j));
    }
    for (int t = 0; t < T; ++t) {
        const double common = std::sin(2 * M_PI * t / 24.0);
        for (int j = 0; j < n_series; ++j) {
            ar[j] = 0.8 * ar[j] + 0.2 * rng.normal();
            s.values(j, t) = amp[j] * std::sin(2 * M_PI * t / 24.0 + phase[j]) +
                             0.5 * common + 0.3 * ar[j] + 0.05 * rng.normal();
        }
    }
    return s;
}

TEST(Acceptance, C6TimeSeriesPropertySuite) {
    const auto t0 = Clock::now();
    const int P = 24, h = 6;
    auto s = seasonal_ar_series(5, 3000, 616);
    auto w = hnn::make_windows(s, P, h, 0.6, 0.2);

    hnn::Dataset view;
    view.names = s.names;
    const int b1 = static_cast<int>(0.6 * s.length());
    view.values = s.values.leftCols(b1).transpose();
    auto sim = hnn::pearson_similarity(view, hnn::SimilarityVariant::absolute_corr);
    auto [g, trace] = hnn::tmfg_construct(sim);
    auto d = hnn::hasse_from_graph(g);

    hnn::SparseNet net(hnn::hasse_topology(d), hnn::Activation::relu,
                       hnn::ReadoutMode::all_layers, 5);
    hnn::Forecaster model(5, P, 12, std::move(net));
    model.init_params(11);

    hnn::TrainConfig cfg;
    cfg.seed = 12;
    cfg.learning_rate = 5e-3;
    cfg.batch_size = 64;
    cfg.max_epochs = 40;
    cfg.patience = 8;
    auto hist = hnn::train_forecaster(model, w, cfg);

    const Eigen::MatrixXd truth = w.targets(w.test_starts);
    const Eigen::MatrixXd pred = model.predict(w, w.test_starts);
    const double model_rse = hnn::rse(truth, pred);

    const Eigen::MatrixXd persist =
        hnn::persistence_forecast(w.values, w.test_starts, P);
    const double persist_rse = hnn::rse(truth, persist);

    std::printf("  test RSE: model=%.4f persistence=%.4f\n", model_rse, persist_rse);
    EXPECT_LT(model_rse, 1.0);
    EXPECT_LE(model_rse, persist_rse);
    const double elapsed = seconds_since(t0);
    EXPECT_LT(elapsed, 600.0) << "took " << elapsed << "s";
    criterion(6, "seasonal-AR: trained RSE < 1.0 and <= persistence, <10min");
}

// ---------------------------------------------------------------------------
// 7. optional exchange-rates reproduction (skips when data absent)
// ---------------------------------------------------------------------------

std::string find_exchange_rates() {
    std::vector<std::string> candidates = {"data/exchange_rate.txt",
                                           "data/exchange_rate.csv",
                                           "exchange_rate.txt"};
    if (const char* dir = std::getenv("HNN_DATA_DIR")) {
        candidates.insert(candidates.begin(),
                          std::string(dir) + "/exchange_rate.txt");
        candidates.insert(candidates.begin(),
                          std::string(dir) + "/exchange_rate.csv");
    }
    for (const auto& c : candidates)
        if (std::filesystem::exists(c)) return c;
    return "";
}

TEST(Acceptance, C7OptionalExchangeRates) {
    const std::string path = find_exchange_rates();
    if (path.empty()) {
        std::printf("[CRITERION 7] optional exchange-rates reproduction: SKIP "
                    "(dataset not present)\n");
        GTEST_SKIP() << "exchange-rates dataset not available";
    }
    auto s = hnn::load_series(path);
    EXPECT_EQ(s.n_series(), 8);
    EXPECT_EQ(s.length(), 7588);

    auto w = hnn::make_windows(s, 24, 3, 0.6, 0.2);
    hnn::Dataset view;
    view.names = s.names;
    const int b1 = static_cast<int>(0.6 * s.length());
    view.values = s.values.leftCols(b1).transpose();
    auto sim = hnn::pearson_similarity(view, hnn::SimilarityVariant::absolute_corr);
    auto [g, trace] = hnn::tmfg_construct(sim);
    auto d = hnn::hasse_from_graph(g);
    hnn::SparseNet net(hnn::hasse_topology(d), hnn::Activation::relu,
                       hnn::ReadoutMode::all_layers, 8);
    hnn::Forecaster model(8, 24, 32, std::move(net));
    model.init_params(1);

    hnn::TrainConfig cfg;
    cfg.seed = 2;
    cfg.learning_rate = 3e-3;
    cfg.batch_size = 128;
    cfg.max_epochs = 30;
    cfg.patience = 6;
    auto hist = hnn::train_forecaster(model, w, cfg);

    const Eigen::MatrixXd truth = w.targets(w.test_starts);
    const Eigen::MatrixXd pred = model.predict(w, w.test_starts);
    const double test_rse = hnn::rse(truth, pred);
    const double test_corr = hnn::corr_metric(truth, pred);
    std::printf("  exchange-rates h=3: RSE=%.4f CORR=%.4f\n", test_rse, test_corr);
    EXPECT_LE(test_rse, 0.05);
    EXPECT_GE(test_corr, 0.90);
    criterion(7, "optional exchange-rates h=3: RSE <= 0.05, CORR >= 0.90");
}

// ---------------------------------------------------------------------------
// 8. parameter economy
// ---------------------------------------------------------------------------

TEST(Acceptance, C8ParameterEconomy) {
    // exchange-rates configuration: 8 series
    auto sim = oracle::random_similarity(8, 88);
    auto [g, trace] = hnn::tmfg_construct(sim);
    auto d = hnn::hasse_from_graph(g);
    auto hnn_total =
        hnn::build_variant(d, {hnn::Variant::hnn, 1}, hnn::Activation::relu, 1)
            .param_breakdown();
    auto mlp_total =
        hnn::build_variant(d, {hnn::Variant::mlp, 1}, hnn::Activation::relu, 1)
            .param_breakdown();
    std::printf("  params: hnn=%ld dense mlp=%ld (layers 8/18/16/5)\n",
                hnn_total.total, mlp_total.total);
    EXPECT_EQ(d.layer_sizes(), (std::vector<int>{8, 18, 16, 5}));
    EXPECT_LT(hnn_total.total, mlp_total.total);
    EXPECT_LT(hnn_total.link_weights, mlp_total.link_weights);
    criterion(8, "HNN unit has fewer parameters than the dense MLP of equal sizes");
}

// ---------------------------------------------------------------------------
// 9. metric identities
// ---------------------------------------------------------------------------

TEST(Acceptance, C9MetricIdentities) {
    hnn::Rng rng(99);
    Eigen::MatrixXd y(40, 3);
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 3; ++j) y(i, j) = rng.normal() * 2 + 1;

    // mean over the whole tensor, accumulated in the same order as rse()
    double m = 0;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 40; ++i) m += y(i, j);
    m /= 120;
    EXPECT_EQ(hnn::rse(y, Eigen::MatrixXd::Constant(40, 3, m)), 1.0);

    Eigen::VectorXd yv = y.col(0);
    double mv = 0;
    for (int i = 0; i < 40; ++i) mv += yv(i);
    mv /= 40;
    EXPECT_EQ(hnn::r2_score(yv, Eigen::VectorXd::Constant(40, mv)), 0.0);

    std::vector<double> before{72, 68, 75, 80, 66, 77, 71, 69, 74, 78};
    std::vector<double> after{70, 65, 74, 76, 66, 73, 70, 68, 73, 75};
    auto res = hnn::paired_t_test(before, after);
    EXPECT_NEAR(res.p, oracle::t_test_p_oracle(res.t, res.df), 1e-4);
    criterion(9, "rse(mean)=1 and r2(mean)=0 exactly; t-test matches oracle");
}

} // namespace
