#include "hnn/bench.hpp"

#include <algorithm>
#include <numeric>

#include "hnn/common.hpp"
#include "hnn/metrics.hpp"
#include "hnn/tmfg.hpp"

namespace hnn {

Variant variant_from_name(const std::string& s) {
    if (s == "hnn") return Variant::hnn;
    if (s == "mlp") return Variant::mlp;
    if (s == "mlp_res") return Variant::mlp_res;
    if (s == "mlp_hnn") return Variant::mlp_hnn;
    throw Error("unknown variant: " + s);
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::hnn: return "hnn";
        case Variant::mlp: return "mlp";
        case Variant::mlp_res: return "mlp_res";
        case Variant::mlp_hnn: return "mlp_hnn";
    }
    return "?";
}

SparseNet build_variant(const HasseDiagram& diagram, const AblationSpec& spec,
                        Activation act, int output_dim) {
    const bool sparse = spec.variant == Variant::hnn || spec.variant == Variant::mlp_hnn;
    const bool residual = spec.variant == Variant::hnn || spec.variant == Variant::mlp_res;
    NetTopology topo;
    if (sparse) {
        topo = hasse_topology(diagram, spec.channel_multiplier);
    } else {
        NetTopology base = hasse_topology(diagram, spec.channel_multiplier);
        topo = dense_topology(base.layer_sizes);
    }
    return SparseNet(std::move(topo), act,
                     residual ? ReadoutMode::all_layers : ReadoutMode::last_layer,
                     output_dim);
}

LinearModel fit_linear(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       double ridge) {
    const Eigen::Index n = x.rows(), k = x.cols();
    if (y.size() != n) throw Error("fit_linear: row mismatch");
    Eigen::MatrixXd a(n, k + 1);
    a.col(0).setOnes();
    a.rightCols(k) = x;

    LinearModel m;
    Eigen::MatrixXd gram = a.transpose() * a;
    Eigen::VectorXd rhs = a.transpose() * y;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::VectorXd theta;
    if (qr.rank() < k + 1) {
        if (ridge <= 0.0)
            throw Error("fit_linear: singular system and ridge disabled");
        log_warn("fit_linear: rank-deficient design matrix, ridge fallback engaged");
        m.ridge_fallback = true;
        const double lam = ridge * gram.trace() / static_cast<double>(k + 1);
        gram.diagonal().array() += lam;
        theta = gram.ldlt().solve(rhs);
    } else {
        theta = gram.ldlt().solve(rhs);
    }
    m.intercept = theta(0);
    m.coef = theta.tail(k);
    return m;
}

Eigen::VectorXd predict(const LinearModel& m, const Eigen::MatrixXd& x) {
    return (x * m.coef).array() + m.intercept;
}

Eigen::MatrixXd persistence_forecast(const Eigen::MatrixXd& series,
                                     const std::vector<int>& window_starts,
                                     int lookback) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(window_starts.size()), series.rows());
    for (size_t s = 0; s < window_starts.size(); ++s)
        out.row(static_cast<Eigen::Index>(s)) =
            series.col(window_starts[s] + lookback - 1).transpose();
    return out;
}

nlohmann::json TabularResult::to_json() const {
    nlohmann::json j;
    j["n_train"] = n_train;
    j["n_test"] = n_test;
    j["p"] = p;
    auto rows_j = nlohmann::json::array();
    for (const auto& r : rows) {
        rows_j.push_back({{"variant", to_string(r.variant)},
                          {"r2", r.r2},
                          {"best_lr", r.best_lr},
                          {"best_multiplier", r.best_multiplier},
                          {"best_valid_loss", r.best_valid_loss},
                          {"params", r.param_total}});
    }
    j["rows"] = rows_j;
    return j;
}

TabularResult run_tabular_experiment(const Dataset& ds,
                                     const std::vector<AblationSpec>& variants,
                                     const ExperimentConfig& cfg) {
    if (!ds.target) throw Error("run_tabular_experiment: dataset has no target");
    const int n = ds.n_rows();
    if (n < 20) throw Error("run_tabular_experiment: dataset too small");

    // single fixed-seed shuffle, then 70/30
    Rng rng(cfg.seed);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_int(0, i)]);
    const int n_test = static_cast<int>(std::round(n * cfg.test_fraction));
    const int n_train_all = n - n_test;
    const int n_valid = std::max(1, static_cast<int>(std::round(n_train_all * cfg.valid_fraction)));
    const int n_train = n_train_all - n_valid;
    if (n_train < 4) throw Error("run_tabular_experiment: training split too small");

    auto take = [&](int begin, int count, const Eigen::MatrixXd& v) {
        Eigen::MatrixXd out(count, v.cols());
        for (int i = 0; i < count; ++i) out.row(i) = v.row(order[begin + i]);
        return out;
    };
    auto take_y = [&](int begin, int count) {
        Eigen::VectorXd out(count);
        for (int i = 0; i < count; ++i) out(i) = (*ds.target)(order[begin + i]);
        return out;
    };

    Dataset train_ds;
    train_ds.names = ds.names;
    train_ds.values = take(0, n_train, ds.values);

    // normalization and the prior graph both come from the training rows only
    auto [train_std, stats] = zscore(train_ds);
    Eigen::MatrixXd x_train = train_std.values;
    Eigen::MatrixXd x_valid = stats.apply(take(n_train, n_valid, ds.values));
    Eigen::MatrixXd x_test = stats.apply(take(n_train_all, n_test, ds.values));

    Eigen::VectorXd y_train_raw = take_y(0, n_train);
    Eigen::VectorXd y_valid_raw = take_y(n_train, n_valid);
    Eigen::VectorXd y_test_raw = take_y(n_train_all, n_test);
    const double y_mean = y_train_raw.mean();
    const double y_std = std::sqrt((y_train_raw.array() - y_mean).square().sum() /
                                   y_train_raw.size());
    if (y_std == 0.0) throw Error("run_tabular_experiment: constant target");
    Eigen::MatrixXd y_train = (y_train_raw.array() - y_mean) / y_std;
    Eigen::MatrixXd y_valid = (y_valid_raw.array() - y_mean) / y_std;

    SimilarityMatrix sim = pearson_similarity(train_std, cfg.similarity);
    auto [graph, trace] = tmfg_construct(sim);
    HasseDiagram diagram = hasse_from_graph(graph);

    TabularResult result;
    result.n_train = n_train_all;
    result.n_test = n_test;
    result.p = static_cast<int>(x_train.cols());

    for (const auto& spec0 : variants) {
        VariantResult best;
        best.variant = spec0.variant;
        double best_valid = std::numeric_limits<double>::infinity();
        bool first = true;
        for (int mult : cfg.grid_multiplier) {
            for (double lr : cfg.grid_lr) {
                AblationSpec spec = spec0;
                spec.channel_multiplier = mult;
                SparseNet net = build_variant(diagram, spec, Activation::relu, 1);
                TrainConfig tc = cfg.train;
                tc.learning_rate = lr;
                net.init_params(tc);
                TrainHistory hist = train(net, x_train, y_train, x_valid, y_valid, tc);
                if (first || hist.best_valid < best_valid) {
                    first = false;
                    best_valid = hist.best_valid;
                    Eigen::VectorXd pred =
                        (net.forward(x_test).col(0).array() * y_std) + y_mean;
                    best.r2 = r2_score(y_test_raw, pred);
                    best.best_lr = lr;
                    best.best_multiplier = mult;
                    best.best_valid_loss = hist.best_valid;
                    best.param_total = net.param_breakdown().total;
                }
            }
        }
        result.rows.push_back(best);
    }
    return result;
}

MetricReport aggregate_scores(const std::string& model,
                              const std::vector<double>& scores) {
    if (scores.empty()) throw Error("aggregate_scores: no scores");
    MetricReport r;
    r.model = model;
    r.n = static_cast<int>(scores.size());
    r.mean = std::accumulate(scores.begin(), scores.end(), 0.0) / r.n;
    r.q10 = quantile(scores, 0.10);
    r.q50 = quantile(scores, 0.50);
    r.q90 = quantile(scores, 0.90);
    return r;
}

} // namespace hnn
