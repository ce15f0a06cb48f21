#include "hnn/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "hnn/common.hpp"
#include "hnn/metrics.hpp"

namespace hnn {

MultivariateSeries load_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        const bool comma = line.find(',') != std::string::npos;
        std::string cell;
        std::istringstream ls(line);
        while (comma ? static_cast<bool>(std::getline(ls, cell, ','))
                     : static_cast<bool>(ls >> cell)) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || !std::isfinite(v))
                throw Error("series parse failure at line " + std::to_string(line_no) +
                            ": \"" + cell + "\"");
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw Error("series parse failure: ragged line " + std::to_string(line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error("empty series file: " + path);

    MultivariateSeries s;
    const int n_series = static_cast<int>(rows.front().size());
    const int T = static_cast<int>(rows.size());
    s.values.resize(n_series, T);
    for (int t = 0; t < T; ++t)
        for (int j = 0; j < n_series; ++j) s.values(j, t) = rows[t][j];
    for (int j = 0; j < n_series; ++j) s.names.push_back("s" + std::to_string(j + 1));
    return s;
}

Eigen::MatrixXd WindowedSeries::targets(const std::vector<int>& starts) const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(starts.size()), values.rows());
    for (size_t i = 0; i < starts.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = target(starts[i]).transpose();
    return out;
}

WindowedSeries make_windows(const MultivariateSeries& s, int lookback, int horizon,
                            double train_frac, double valid_frac) {
    const int T = s.length();
    if (lookback < 1 || horizon < 1) throw Error("make_windows: bad lookback/horizon");
    if (T < lookback + horizon + 10) throw Error("make_windows: series too short");
    if (train_frac <= 0 || valid_frac < 0 || train_frac + valid_frac >= 1.0)
        throw Error("make_windows: bad split fractions");

    const int b1 = static_cast<int>(train_frac * T);
    const int b2 = static_cast<int>((train_frac + valid_frac) * T);

    WindowedSeries w;
    w.lookback = lookback;
    w.horizon = horizon;

    // per-series standardization fit on the training segment only
    const int n = s.n_series();
    w.mean.resize(n);
    w.stddev.resize(n);
    for (int j = 0; j < n; ++j) {
        const auto seg = s.values.row(j).head(b1);
        const double m = seg.mean();
        double sd = std::sqrt((seg.array() - m).square().sum() / b1);
        if (sd == 0.0) {
            log_warn("make_windows: series " + std::to_string(j) +
                     " constant over the training segment; std clamped to 1");
            sd = 1.0;
        }
        w.mean(j) = m;
        w.stddev(j) = sd;
    }
    w.values = (s.values.colwise() - w.mean).array().colwise() / w.stddev.array();

    // every window is kept (T - P - h + 1 in total) and assigned by its
    // target index, so training samples read only pre-boundary timesteps
    for (int t = 0; t + lookback - 1 + horizon < T; ++t) {
        const int e = t + lookback - 1 + horizon;
        if (e < b1)
            w.train_starts.push_back(t);
        else if (e < b2)
            w.valid_starts.push_back(t);
        else
            w.test_starts.push_back(t);
    }
    if (w.train_starts.empty() || w.test_starts.empty())
        throw Error("make_windows: series too short for the requested split");
    return w;
}

Forecaster::Forecaster(int n_series, int lookback, int hidden, SparseNet hnn)
    : n_series_(n_series), lookback_(lookback), lstm_(hidden),
      proj_w_(Eigen::VectorXd::Zero(hidden)), hnn_(std::move(hnn)) {
    if (hnn_.input_dim() != n_series)
        throw Error("Forecaster: HNN layer 0 size " +
                    std::to_string(hnn_.input_dim()) +
                    " does not match series count " + std::to_string(n_series));
    if (hnn_.output_dim() != n_series)
        throw Error("Forecaster: HNN output dim must equal series count");
}

void Forecaster::init_params(uint64_t seed) {
    Rng rng(seed);
    lstm_.init_params(rng);
    const double bound = std::sqrt(6.0 / (lstm_.hidden() + 1));
    for (int i = 0; i < proj_w_.size(); ++i) proj_w_(i) = rng.uniform(-bound, bound);
    proj_b_ = 0.0;
    TrainConfig hnn_cfg;
    hnn_cfg.seed = rng.raw();
    hnn_.init_params(hnn_cfg);
}

long Forecaster::param_count() const {
    return lstm_.param_count() + proj_w_.size() + 1 + hnn_.param_count();
}

std::vector<double> Forecaster::get_params() const {
    std::vector<double> flat;
    flat.reserve(param_count());
    flat.insert(flat.end(), lstm_.params().begin(), lstm_.params().end());
    flat.insert(flat.end(), proj_w_.data(), proj_w_.data() + proj_w_.size());
    flat.push_back(proj_b_);
    flat.insert(flat.end(), hnn_.params().begin(), hnn_.params().end());
    return flat;
}

void Forecaster::set_params(const std::vector<double>& flat) {
    if (static_cast<long>(flat.size()) != param_count())
        throw Error("set_params: size mismatch");
    size_t off = 0;
    std::copy(flat.begin() + off, flat.begin() + off + lstm_.params().size(),
              lstm_.params().begin());
    off += lstm_.params().size();
    for (int i = 0; i < proj_w_.size(); ++i) proj_w_(i) = flat[off++];
    proj_b_ = flat[off++];
    std::copy(flat.begin() + off, flat.end(), hnn_.params().begin());
}

Eigen::VectorXd Forecaster::forward(const Eigen::MatrixXd& window) const {
    if (window.rows() != n_series_ || window.cols() != lookback_)
        throw Error("Forecaster::forward: window shape mismatch");
    Eigen::MatrixXd z(1, n_series_);
    Eigen::VectorXd row(lookback_);
    for (int s = 0; s < n_series_; ++s) {
        row = window.row(s);
        const Eigen::VectorXd h = lstm_.forward(row.data(), lookback_);
        z(0, s) = proj_w_.dot(h) + proj_b_;
    }
    return hnn_.forward(z).row(0);
}

double Forecaster::loss_and_grad(const WindowedSeries& data,
                                 const std::vector<int>& starts,
                                 std::vector<double>* grad) const {
    if (starts.empty()) throw Error("loss_and_grad: empty sample set");
    const int B = static_cast<int>(starts.size());
    const size_t lstm_n = lstm_.params().size();
    const size_t proj_off = lstm_n;
    const size_t hnn_off = proj_off + proj_w_.size() + 1;
    if (grad) grad->assign(static_cast<size_t>(param_count()), 0.0);

    const double denom = static_cast<double>(B) * n_series_;
    double loss = 0.0;
    Eigen::VectorXd row(lookback_);
    std::vector<LstmEncoder::Cache> caches(static_cast<size_t>(n_series_));
    Eigen::MatrixXd hidden(lstm_.hidden(), n_series_);

    for (int bi = 0; bi < B; ++bi) {
        const Eigen::MatrixXd window = data.window(starts[bi]);
        const Eigen::VectorXd target = data.target(starts[bi]);

        Eigen::MatrixXd z(1, n_series_);
        for (int s = 0; s < n_series_; ++s) {
            row = window.row(s);
            hidden.col(s) = lstm_.forward(row.data(), lookback_,
                                          grad ? &caches[s] : nullptr);
            z(0, s) = proj_w_.dot(hidden.col(s)) + proj_b_;
        }
        SparseNet::Cache hnn_cache;
        const Eigen::MatrixXd pred = hnn_.forward(z, grad ? &hnn_cache : nullptr);
        for (int s = 0; s < n_series_; ++s) {
            const double r = pred(0, s) - target(s);
            loss += r * r / denom;
        }
        if (!grad) continue;

        Eigen::MatrixXd d_out(1, n_series_);
        for (int s = 0; s < n_series_; ++s)
            d_out(0, s) = 2.0 * (pred(0, s) - target(s)) / denom;
        Eigen::MatrixXd d_z;
        const std::vector<double> hnn_grad = hnn_.backward(hnn_cache, d_out, &d_z);
        for (size_t i = 0; i < hnn_grad.size(); ++i)
            (*grad)[hnn_off + i] += hnn_grad[i];

        for (int s = 0; s < n_series_; ++s) {
            const double dz = d_z(0, s);
            if (dz == 0.0) continue;
            for (int j = 0; j < proj_w_.size(); ++j)
                (*grad)[proj_off + j] += dz * hidden(j, s);
            (*grad)[proj_off + proj_w_.size()] += dz;
            lstm_.backward(caches[s], dz * proj_w_, grad->data());
        }
    }
    return loss;
}

Eigen::MatrixXd Forecaster::predict(const WindowedSeries& data,
                                    const std::vector<int>& starts) const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(starts.size()), n_series_);
    for (size_t i = 0; i < starts.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = forward(data.window(starts[i]));
    return out;
}

ForecastHistory train_forecaster(Forecaster& model, const WindowedSeries& data,
                                 const TrainConfig& cfg) {
    if (data.train_starts.empty() || data.valid_starts.empty())
        throw Error("train_forecaster: empty train or validation partition");

    std::vector<double> theta = model.get_params();
    Optimizer opt(cfg, theta.size());
    Rng rng(cfg.seed);
    std::vector<int> order = data.train_starts;

    ForecastHistory hist;
    std::vector<double> best_params = theta;
    double best_valid = std::numeric_limits<double>::infinity();
    int best_epoch = -1;
    int since_best = 0;
    const Eigen::MatrixXd valid_truth = data.targets(data.valid_starts);

    std::vector<double> grad;
    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
            std::swap(order[i], order[rng.uniform_int(0, i)]);

        double epoch_loss = 0.0;
        int n_batches = 0;
        for (size_t start = 0; start < order.size();
             start += static_cast<size_t>(cfg.batch_size)) {
            const size_t end = std::min(order.size(), start + cfg.batch_size);
            std::vector<int> batch(order.begin() + start, order.begin() + end);
            const double loss = model.loss_and_grad(data, batch, &grad);
            if (!std::isfinite(loss))
                throw Error("train_forecaster: loss diverged (non-finite) at epoch " +
                            std::to_string(epoch));
            epoch_loss += loss;
            ++n_batches;
            opt.step(theta, grad);
            model.set_params(theta);
        }

        const double valid = rse(valid_truth, model.predict(data, data.valid_starts));
        if (!std::isfinite(valid))
            throw Error("train_forecaster: validation diverged at epoch " +
                        std::to_string(epoch));
        hist.train_loss.push_back(epoch_loss / n_batches);
        hist.valid_rse.push_back(valid);

        if (valid < best_valid) {
            best_valid = valid;
            best_epoch = epoch;
            best_params = theta;
            since_best = 0;
        } else if (++since_best > cfg.patience) {
            break;
        }
    }

    model.set_params(best_params);
    hist.best_epoch = best_epoch;
    hist.best_valid = best_valid;
    return hist;
}

} // namespace hnn
