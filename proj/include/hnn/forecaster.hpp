#ifndef HNN_FORECASTER_HPP
#define HNN_FORECASTER_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hnn/lstm.hpp"
#include "hnn/model.hpp"
#include "hnn/train.hpp"

namespace hnn {

struct MultivariateSeries {
    std::vector<std::string> names;
    Eigen::MatrixXd values; // n_series x T
    std::string sample_rate;

    int n_series() const { return static_cast<int>(values.rows()); }
    int length() const { return static_cast<int>(values.cols()); }
};

// One row per timestep, comma or whitespace separated (auto-detected).
MultivariateSeries load_series(const std::string& path);

// Windowed view of a series: a sample starting at t covers inputs
// [t, t+P) and the target column t+P-1+h. All T-P-h+1 windows are kept and
// partitioned chronologically by target index, so a training sample never
// reads a timestep at or past the first boundary. Per-series standardization
// is fit on the training segment only.
struct WindowedSeries {
    int lookback = 0;
    int horizon = 0;
    Eigen::MatrixXd values; // standardized, n_series x T
    Eigen::VectorXd mean, stddev;
    std::vector<int> train_starts, valid_starts, test_starts;

    int n_series() const { return static_cast<int>(values.rows()); }
    Eigen::MatrixXd window(int start) const {
        return values.block(0, start, values.rows(), lookback);
    }
    Eigen::VectorXd target(int start) const {
        return values.col(start + lookback - 1 + horizon);
    }
    // targets for a whole partition, sample-major (n x n_series)
    Eigen::MatrixXd targets(const std::vector<int>& starts) const;
};

WindowedSeries make_windows(const MultivariateSeries& s, int lookback, int horizon,
                            double train_frac = 0.6, double valid_frac = 0.2);

// LSTM-HNN composite: the shared LSTM encodes each series of a window, a
// shared linear projection reduces every hidden state to a scalar, the HNN
// aggregates the n_series scalars, and per-series rows of the HNN readout
// emit one forecast per series.
class Forecaster {
public:
    Forecaster(int n_series, int lookback, int hidden, SparseNet hnn);

    int n_series() const { return n_series_; }
    int lookback() const { return lookback_; }
    const LstmEncoder& lstm() const { return lstm_; }
    SparseNet& hnn() { return hnn_; }
    const SparseNet& hnn() const { return hnn_; }
    Eigen::VectorXd& projection() { return proj_w_; }
    double& projection_bias() { return proj_b_; }

    void init_params(uint64_t seed);

    long param_count() const;
    std::vector<double> get_params() const;
    void set_params(const std::vector<double>& flat);

    // window is n_series x lookback; returns one forecast per series
    Eigen::VectorXd forward(const Eigen::MatrixXd& window) const;

    // Mean squared error over a batch of samples and its parameter gradient,
    // laid out as get_params(): [lstm | proj_w | proj_b | hnn].
    double loss_and_grad(const WindowedSeries& data, const std::vector<int>& starts,
                         std::vector<double>* grad) const;

    // forecasts for a whole partition, sample-major (n x n_series)
    Eigen::MatrixXd predict(const WindowedSeries& data,
                            const std::vector<int>& starts) const;

private:
    int n_series_, lookback_;
    LstmEncoder lstm_;
    Eigen::VectorXd proj_w_;
    double proj_b_ = 0.0;
    SparseNet hnn_;
};

struct ForecastHistory {
    std::vector<double> train_loss;
    std::vector<double> valid_rse;
    int best_epoch = -1;
    double best_valid = 0.0;
};

// Joint end-to-end training of LSTM, projection and HNN with early stopping
// on validation RSE. Deterministic under the config seed.
ForecastHistory train_forecaster(Forecaster& model, const WindowedSeries& data,
                                 const TrainConfig& cfg);

} // namespace hnn

#endif
