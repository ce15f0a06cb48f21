#include "hnn/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hnn/common.hpp"

namespace hnn {

std::string TrainHistory::to_csv() const {
    std::ostringstream os;
    os << "epoch,train_loss,valid_loss\n";
    for (size_t e = 0; e < train_loss.size(); ++e)
        os << e << "," << train_loss[e] << "," << valid_loss[e] << "\n";
    return os.str();
}

Optimizer::Optimizer(const TrainConfig& cfg, size_t n_params)
    : kind_(cfg.optimizer), lr_(cfg.learning_rate), beta1_(cfg.beta1),
      beta2_(cfg.beta2) {
    if (lr_ <= 0.0) throw Error("optimizer: learning rate must be > 0");
    if (kind_ == TrainConfig::Opt::adam) {
        m_.assign(n_params, 0.0);
        v_.assign(n_params, 0.0);
    }
}

void Optimizer::step(std::vector<double>& params, const std::vector<double>& grads) {
    if (params.size() != grads.size())
        throw Error("optimizer: gradient size mismatch");
    if (kind_ == TrainConfig::Opt::sgd) {
        for (size_t i = 0; i < params.size(); ++i) params[i] -= lr_ * grads[i];
        return;
    }
    ++t_;
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (size_t i = 0; i < params.size(); ++i) {
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grads[i];
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grads[i] * grads[i];
        params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + 1e-8);
    }
}

TrainHistory train(SparseNet& net, const Eigen::MatrixXd& x_train,
                   const Eigen::MatrixXd& y_train, const Eigen::MatrixXd& x_valid,
                   const Eigen::MatrixXd& y_valid, const TrainConfig& cfg) {
    const int n = static_cast<int>(x_train.rows());
    if (n == 0 || x_valid.rows() == 0) throw Error("train: empty split");
    if (y_train.rows() != n || y_valid.rows() != x_valid.rows())
        throw Error("train: feature/target row mismatch");
    if (cfg.batch_size < 1) throw Error("train: batch size must be >= 1");

    Optimizer opt(cfg, net.params().size());
    Rng rng(cfg.seed);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    TrainHistory hist;
    std::vector<double> best_params = net.params();
    double best_valid = std::numeric_limits<double>::infinity();
    int best_epoch = -1;
    int since_best = 0;

    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        // Fisher-Yates with the config RNG keeps batch order reproducible
        for (int i = n - 1; i > 0; --i)
            std::swap(order[i], order[rng.uniform_int(0, i)]);

        double epoch_loss = 0.0;
        int n_batches = 0;
        for (int start = 0; start < n; start += cfg.batch_size) {
            const int b = std::min(cfg.batch_size, n - start);
            Eigen::MatrixXd xb(b, x_train.cols());
            Eigen::MatrixXd yb(b, y_train.cols());
            for (int i = 0; i < b; ++i) {
                xb.row(i) = x_train.row(order[start + i]);
                yb.row(i) = y_train.row(order[start + i]);
            }
            SparseNet::Cache cache;
            Eigen::MatrixXd pred = net.forward(xb, &cache);
            const double loss = mse_loss(pred, yb);
            if (!std::isfinite(loss))
                throw Error("train: loss diverged (non-finite) at epoch " +
                            std::to_string(epoch));
            epoch_loss += loss;
            ++n_batches;

            std::vector<double> grads = net.backward(cache, mse_grad(pred, yb));
            if (cfg.l2 > 0.0) {
                for (size_t i = 0; i < grads.size(); ++i)
                    if (net.is_weight_index(i))
                        grads[i] += 2.0 * cfg.l2 * net.params()[i];
            }
            opt.step(net.params(), grads);
        }

        const double valid = mse_loss(net.forward(x_valid), y_valid);
        if (!std::isfinite(valid))
            throw Error("train: validation loss diverged (non-finite) at epoch " +
                        std::to_string(epoch));
        hist.train_loss.push_back(epoch_loss / n_batches);
        hist.valid_loss.push_back(valid);

        if (valid < best_valid) {
            best_valid = valid;
            best_epoch = epoch;
            best_params = net.params();
            since_best = 0;
        } else if (++since_best > cfg.patience) {
            break;
        }
    }

    net.params() = best_params;
    hist.best_epoch = best_epoch;
    hist.best_valid = best_valid;
    return hist;
}

std::vector<double> finite_diff(std::vector<double>& params,
                                const std::function<double()>& loss, double eps) {
    if (eps <= 0.0) throw Error("finite_diff: eps must be > 0");
    std::vector<double> g(params.size());
    for (size_t i = 0; i < params.size(); ++i) {
        const double saved = params[i];
        params[i] = saved + eps;
        const double up = loss();
        params[i] = saved - eps;
        const double down = loss();
        params[i] = saved;
        g[i] = (up - down) / (2.0 * eps);
    }
    return g;
}

std::vector<double> finite_diff_grad(SparseNet& net, const Eigen::MatrixXd& x,
                                     const Eigen::MatrixXd& y, double eps) {
    return finite_diff(
        net.params(), [&]() { return mse_loss(net.forward(x), y); }, eps);
}

double max_rel_error(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw Error("max_rel_error: size mismatch");
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double denom = std::max(1.0, std::fabs(b[i]));
        worst = std::max(worst, std::fabs(a[i] - b[i]) / denom);
    }
    return worst;
}

} // namespace hnn
