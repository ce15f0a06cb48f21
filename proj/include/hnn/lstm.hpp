#ifndef HNN_LSTM_HPP
#define HNN_LSTM_HPP

#include <Eigen/Dense>
#include <vector>

namespace hnn {

class Rng;

// Single-layer LSTM over a scalar input stream, shared across all series of
// a multivariate sample. Gate order is [input, forget, output, cell].
// Parameters are flat: W (4H x (1+H), column-major, acting on [x; h]) then
// the bias (4H).
class LstmEncoder {
public:
    explicit LstmEncoder(int hidden);

    int hidden() const { return hidden_; }
    long param_count() const { return static_cast<long>(params_.size()); }
    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }

    // Glorot-uniform weights, zero bias, deterministic draw order.
    void init_params(Rng& rng);

    struct Cache {
        int steps = 0;
        Eigen::MatrixXd z;      // (1+H) x P, the [x; h_prev] inputs
        Eigen::MatrixXd gates;  // 4H x P, post-nonlinearity [i; f; o; g]
        Eigen::MatrixXd c;      // H x P, cell states
        Eigen::MatrixXd tanh_c; // H x P
    };

    // Runs the recurrence over window[0..len), starting from zero states, and
    // returns the final hidden state.
    Eigen::VectorXd forward(const double* window, int len, Cache* cache = nullptr) const;

    // Accumulates parameter gradients for d(loss)/d(h_final) into grad
    // (length param_count()). Returns nothing else: inputs are data.
    void backward(const Cache& cache, const Eigen::VectorXd& d_h_final,
                  double* grad) const;

private:
    int hidden_;
    std::vector<double> params_;
};

} // namespace hnn

#endif
