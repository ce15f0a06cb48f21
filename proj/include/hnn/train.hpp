#ifndef HNN_TRAIN_HPP
#define HNN_TRAIN_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "hnn/model.hpp"

namespace hnn {

struct TrainHistory {
    std::vector<double> train_loss; // mean batch MSE per epoch
    std::vector<double> valid_loss; // full validation MSE per epoch
    int best_epoch = -1;
    double best_valid = 0.0;

    std::string to_csv() const;
};

// Adam / SGD over a flat parameter vector.
class Optimizer {
public:
    Optimizer(const TrainConfig& cfg, size_t n_params);
    void step(std::vector<double>& params, const std::vector<double>& grads);

private:
    TrainConfig::Opt kind_;
    double lr_, beta1_, beta2_;
    long t_ = 0;
    std::vector<double> m_, v_;
};

// Mini-batch MSE training with early stopping on validation loss. The model
// keeps the parameters of the best validation epoch. Deterministic for a
// fixed seed (batch order is drawn from the config seed). Throws when the
// loss stops being finite, naming the epoch.
TrainHistory train(SparseNet& net, const Eigen::MatrixXd& x_train,
                   const Eigen::MatrixXd& y_train, const Eigen::MatrixXd& x_valid,
                   const Eigen::MatrixXd& y_valid, const TrainConfig& cfg);

// Central finite differences of an arbitrary scalar loss over a flat
// parameter vector; the gradient-check oracle.
std::vector<double> finite_diff(std::vector<double>& params,
                                const std::function<double()>& loss, double eps);

// Convenience wrapper: d MSE(net(x), y) / d params.
std::vector<double> finite_diff_grad(SparseNet& net, const Eigen::MatrixXd& x,
                                     const Eigen::MatrixXd& y, double eps);

// max_i |a_i - b_i| / max(1, |b_i|)
double max_rel_error(const std::vector<double>& a, const std::vector<double>& b);

} // namespace hnn

#endif
