#include "hnn/lstm.hpp"

#include <cmath>

#include "hnn/common.hpp"

namespace hnn {

namespace {
inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
} // namespace

LstmEncoder::LstmEncoder(int hidden) : hidden_(hidden) {
    if (hidden < 1) throw Error("LstmEncoder: hidden size must be >= 1");
    params_.assign(static_cast<size_t>(4 * hidden) * (1 + hidden) + 4 * hidden, 0.0);
}

void LstmEncoder::init_params(Rng& rng) {
    const int rows = 4 * hidden_, cols = 1 + hidden_;
    const double bound = std::sqrt(6.0 / (rows + cols));
    for (int i = 0; i < rows * cols; ++i) params_[i] = rng.uniform(-bound, bound);
    for (int i = 0; i < rows; ++i) params_[rows * cols + i] = 0.0;
}

Eigen::VectorXd LstmEncoder::forward(const double* window, int len,
                                     Cache* cache) const {
    const int H = hidden_;
    Eigen::Map<const Eigen::MatrixXd> W(params_.data(), 4 * H, 1 + H);
    Eigen::Map<const Eigen::VectorXd> b(params_.data() + W.size(), 4 * H);

    Cache local;
    Cache& c = cache ? *cache : local;
    c.steps = len;
    c.z.resize(1 + H, len);
    c.gates.resize(4 * H, len);
    c.c.resize(H, len);
    c.tanh_c.resize(H, len);

    Eigen::VectorXd h = Eigen::VectorXd::Zero(H);
    Eigen::VectorXd cell = Eigen::VectorXd::Zero(H);
    Eigen::VectorXd z(1 + H), a(4 * H);
    for (int t = 0; t < len; ++t) {
        z(0) = window[t];
        z.tail(H) = h;
        c.z.col(t) = z;
        a = W * z + b;
        for (int j = 0; j < H; ++j) {
            const double i_g = sigmoid(a(j));
            const double f_g = sigmoid(a(H + j));
            const double o_g = sigmoid(a(2 * H + j));
            const double g_g = std::tanh(a(3 * H + j));
            c.gates(j, t) = i_g;
            c.gates(H + j, t) = f_g;
            c.gates(2 * H + j, t) = o_g;
            c.gates(3 * H + j, t) = g_g;
            cell(j) = f_g * cell(j) + i_g * g_g;
            const double tc = std::tanh(cell(j));
            c.c(j, t) = cell(j);
            c.tanh_c(j, t) = tc;
            h(j) = o_g * tc;
        }
    }
    return h;
}

void LstmEncoder::backward(const Cache& cache, const Eigen::VectorXd& d_h_final,
                           double* grad) const {
    const int H = hidden_;
    const int P = cache.steps;
    Eigen::Map<const Eigen::MatrixXd> W(params_.data(), 4 * H, 1 + H);
    Eigen::Map<Eigen::MatrixXd> dW(grad, 4 * H, 1 + H);
    Eigen::Map<Eigen::VectorXd> db(grad + W.size(), 4 * H);

    Eigen::VectorXd dh = d_h_final;
    Eigen::VectorXd dc = Eigen::VectorXd::Zero(H);
    Eigen::VectorXd da(4 * H);
    for (int t = P - 1; t >= 0; --t) {
        for (int j = 0; j < H; ++j) {
            const double i_g = cache.gates(j, t);
            const double f_g = cache.gates(H + j, t);
            const double o_g = cache.gates(2 * H + j, t);
            const double g_g = cache.gates(3 * H + j, t);
            const double tc = cache.tanh_c(j, t);
            const double c_prev = t > 0 ? cache.c(j, t - 1) : 0.0;

            const double do_g = dh(j) * tc;
            double dcell = dc(j) + dh(j) * o_g * (1.0 - tc * tc);
            const double di_g = dcell * g_g;
            const double dg_g = dcell * i_g;
            const double df_g = dcell * c_prev;
            dc(j) = dcell * f_g;

            da(j) = di_g * i_g * (1.0 - i_g);
            da(H + j) = df_g * f_g * (1.0 - f_g);
            da(2 * H + j) = do_g * o_g * (1.0 - o_g);
            da(3 * H + j) = dg_g * (1.0 - g_g * g_g);
        }
        dW.noalias() += da * cache.z.col(t).transpose();
        db += da;
        dh.noalias() = W.rightCols(H).transpose() * da; // d h_{t-1}
    }
}

} // namespace hnn
