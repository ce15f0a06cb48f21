#ifndef HNN_BENCH_HPP
#define HNN_BENCH_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "hnn/dataset.hpp"
#include "hnn/homology.hpp"
#include "hnn/model.hpp"
#include "hnn/similarity.hpp"
#include "hnn/train.hpp"
#include "json.hpp"

namespace hnn {

// Ablation family around the HNN unit:
//   hnn     - Hasse wiring, residual readout over all layers
//   mlp_hnn - Hasse wiring, readout over the top layer only
//   mlp_res - dense wiring of the same layer sizes, residual readout
//   mlp     - dense wiring, top-layer readout
enum class Variant { hnn, mlp, mlp_res, mlp_hnn };

Variant variant_from_name(const std::string& s);
std::string to_string(Variant v);

struct AblationSpec {
    Variant variant = Variant::hnn;
    int channel_multiplier = 1;
};

SparseNet build_variant(const HasseDiagram& diagram, const AblationSpec& spec,
                        Activation act, int output_dim);

// --- baselines ---------------------------------------------------------

// Least squares by normal equations; falls back to ridge (with a warning)
// when the design matrix is rank deficient.
struct LinearModel {
    Eigen::VectorXd coef;
    double intercept = 0.0;
    bool ridge_fallback = false;
};

LinearModel fit_linear(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       double ridge = 1e-6);
Eigen::VectorXd predict(const LinearModel& m, const Eigen::MatrixXd& x);

// Persistence forecast: the value observed at the end of each window.
// windows: sample-major list of (n_series x P) blocks flattened by the
// caller; here we just need the last observed column per sample.
Eigen::MatrixXd persistence_forecast(const Eigen::MatrixXd& series,
                                     const std::vector<int>& window_starts,
                                     int lookback);

// --- experiment harness -------------------------------------------------

struct ExperimentConfig {
    double test_fraction = 0.3;  // 70/30 split
    double valid_fraction = 0.2; // carved out of the training part
    uint64_t seed = 0;
    TrainConfig train;
    std::vector<double> grid_lr = {3e-3, 1e-2};
    std::vector<int> grid_multiplier = {1};
    SimilarityVariant similarity = SimilarityVariant::absolute_corr;
};

struct VariantResult {
    Variant variant;
    double r2 = 0.0;
    double best_lr = 0.0;
    int best_multiplier = 1;
    double best_valid_loss = 0.0;
    long param_total = 0;
};

struct TabularResult {
    std::vector<VariantResult> rows;
    int n_train = 0, n_test = 0, p = 0;
    nlohmann::json to_json() const;
};

// Shuffle once with the config seed, split 70/30, build the graph from the
// training split only, then train every requested variant over the small
// declared grid and report held-out R2.
TabularResult run_tabular_experiment(const Dataset& ds,
                                     const std::vector<AblationSpec>& variants,
                                     const ExperimentConfig& cfg);

// Aggregate scores across datasets: mean plus 10/50/90 quantiles.
struct MetricReport {
    std::string model;
    double mean = 0.0, q10 = 0.0, q50 = 0.0, q90 = 0.0;
    int n = 0;
};

MetricReport aggregate_scores(const std::string& model,
                              const std::vector<double>& scores);

} // namespace hnn

#endif
