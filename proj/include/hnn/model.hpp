#ifndef HNN_MODEL_HPP
#define HNN_MODEL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "hnn/homology.hpp"

namespace hnn {

enum class Activation { relu, tanh, identity };
enum class ReadoutMode { all_layers, last_layer };

Activation activation_from_string(const std::string& s);
std::string to_string(Activation a);

// Feed-forward wiring: neurons per layer plus explicit links between
// consecutive layers. links[d] feeds layer d+1; per destination neuron the
// source indices are stored CSR-style, ascending.
struct NetTopology {
    struct LinkLayer {
        std::vector<int> offsets; // size = dest layer size + 1
        std::vector<int> src;     // ascending within each destination neuron
    };
    std::vector<int> layer_sizes;
    std::vector<LinkLayer> links;

    long n_link_weights() const;
    long n_biases() const; // layers d >= 1
    long n_neurons() const;
    // inter-layer weight count of the dense net with the same layer sizes
    long dense_link_weights() const;
};

// One neuron per Hasse node; the up-links of the diagram are the links.
// channel_multiplier > 1 widens every hidden node into that many neurons
// (layer 0 keeps one neuron per vertex).
NetTopology hasse_topology(const HasseDiagram& d, int channel_multiplier = 1);

// All-to-all between consecutive layers.
NetTopology dense_topology(const std::vector<int>& layer_sizes);

struct TrainConfig {
    double learning_rate = 1e-3;
    enum class Opt { sgd, adam };
    Opt optimizer = Opt::adam;
    int batch_size = 32;
    int max_epochs = 200;
    int patience = 20;
    uint64_t seed = 0;
    enum class Init { glorot_uniform, zeros };
    Init init = Init::glorot_uniform;
    double l2 = 0.0;
    double beta1 = 0.9;
    double beta2 = 0.999;
};

// Sparse feed-forward unit. Layer-0 neurons pass the input through; every
// deeper neuron applies the activation to bias + weighted sum over its
// linked sources. The readout is linear, over all neurons (all_layers,
// residual connections) or over the top layer only (last_layer).
//
// Parameters live in one flat vector: link weights (by layer, destination
// neuron, link), then biases (layers >= 1), then readout weights (by output
// row, neuron in canonical layer order), then readout biases.
class SparseNet {
public:
    SparseNet(NetTopology topo, Activation act, ReadoutMode mode, int output_dim);

    // Glorot-uniform per neuron over its incident links; biases zero.
    // Deterministic for a fixed seed.
    void init_params(const TrainConfig& cfg);

    struct Cache {
        int batch = 0;
        // act[d] and pre[d] are batch-major: index = sample * layer_size + j.
        std::vector<std::vector<double>> act;
        std::vector<std::vector<double>> pre; // pre[0] unused
    };

    // x is batch x layer0; returns batch x output_dim.
    Eigen::MatrixXd forward(const Eigen::MatrixXd& x, Cache* cache = nullptr) const;

    // Reverse-mode gradients for every parameter; d_out is batch x output_dim.
    // When d_input is given it receives d loss / d layer-0 activations
    // (batch x layer0), for composing with upstream encoders.
    std::vector<double> backward(const Cache& cache, const Eigen::MatrixXd& d_out,
                                 Eigen::MatrixXd* d_input = nullptr) const;

    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }

    struct ParamBreakdown {
        long link_weights = 0;
        long biases = 0;
        long readout_weights = 0;
        long readout_bias = 0;
        long total = 0;
        long dense_link_weights = 0; // dense net with the same layer sizes
    };
    ParamBreakdown param_breakdown() const;
    long param_count() const { return static_cast<long>(params_.size()); }

    const NetTopology& topology() const { return topo_; }
    Activation activation() const { return act_; }
    void set_activation(Activation a) { act_ = a; }
    ReadoutMode readout_mode() const { return mode_; }
    int output_dim() const { return output_dim_; }
    int input_dim() const { return topo_.layer_sizes.front(); }

    // flat-parameter indices, used by tests and serialization
    size_t bias_offset() const { return b_off_; }
    size_t readout_offset() const { return r_off_; }
    size_t readout_bias_offset() const { return rb_off_; }
    long readout_scope() const { return n_readout_; } // neurons seen by readout
    bool is_weight_index(size_t i) const {
        return i < b_off_ || (i >= r_off_ && i < rb_off_);
    }

private:
    NetTopology topo_;
    Activation act_;
    ReadoutMode mode_;
    int output_dim_;
    std::vector<double> params_;
    size_t b_off_, r_off_, rb_off_;
    long n_readout_;
    std::vector<size_t> layer_w_off_;  // first link-weight index per link layer
    std::vector<size_t> layer_b_off_;  // first bias index per layer >= 1
};

// A Hasse diagram compiled into a trainable unit, keeping the diagram and a
// structural fingerprint so checkpoints can refuse mismatched graphs.
struct HnnModel {
    HasseDiagram diagram;
    SparseNet net;
    uint64_t diagram_hash = 0;
};

HnnModel init_model(const HasseDiagram& d, const TrainConfig& cfg,
                    Activation act = Activation::relu, int output_dim = 1,
                    int channel_multiplier = 1);

// Mean squared error over every output entry, and its output gradient.
double mse_loss(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target);
Eigen::MatrixXd mse_grad(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target);

} // namespace hnn

#endif
