#include "hnn/model.hpp"

#include <algorithm>
#include <cmath>

#include "hnn/common.hpp"

namespace hnn {

Activation activation_from_string(const std::string& s) {
    if (s == "relu") return Activation::relu;
    if (s == "tanh") return Activation::tanh;
    if (s == "identity") return Activation::identity;
    throw Error("unknown activation: " + s);
}

std::string to_string(Activation a) {
    switch (a) {
        case Activation::relu: return "relu";
        case Activation::tanh: return "tanh";
        case Activation::identity: return "identity";
    }
    return "?";
}

long NetTopology::n_link_weights() const {
    long n = 0;
    for (const auto& l : links) n += static_cast<long>(l.src.size());
    return n;
}

long NetTopology::n_biases() const {
    long n = 0;
    for (size_t d = 1; d < layer_sizes.size(); ++d) n += layer_sizes[d];
    return n;
}

long NetTopology::n_neurons() const {
    long n = 0;
    for (int s : layer_sizes) n += s;
    return n;
}

long NetTopology::dense_link_weights() const {
    long n = 0;
    for (size_t d = 0; d + 1 < layer_sizes.size(); ++d)
        n += static_cast<long>(layer_sizes[d]) * layer_sizes[d + 1];
    return n;
}

NetTopology hasse_topology(const HasseDiagram& diagram, int channel_multiplier) {
    if (channel_multiplier < 1)
        throw Error("hasse_topology: channel multiplier must be >= 1");
    const int c = channel_multiplier;
    NetTopology topo;
    const int D = diagram.n_layers() - 1;
    for (int d = 0; d <= D; ++d)
        topo.layer_sizes.push_back(diagram.layer_size(d) * (d == 0 ? 1 : c));

    for (int d = 1; d <= D; ++d) {
        const int cin = d == 1 ? 1 : c;
        NetTopology::LinkLayer layer;
        layer.offsets.push_back(0);
        for (int node = 0; node < diagram.layer_size(d); ++node) {
            const auto& facets = diagram.down_links[d][node]; // ascending
            for (int ch = 0; ch < c; ++ch) {
                for (int f : facets)
                    for (int k = 0; k < cin; ++k)
                        layer.src.push_back(f * cin + k);
                layer.offsets.push_back(static_cast<int>(layer.src.size()));
            }
        }
        topo.links.push_back(std::move(layer));
    }
    return topo;
}

NetTopology dense_topology(const std::vector<int>& layer_sizes) {
    NetTopology topo;
    topo.layer_sizes = layer_sizes;
    for (size_t d = 0; d + 1 < layer_sizes.size(); ++d) {
        NetTopology::LinkLayer layer;
        layer.offsets.push_back(0);
        for (int node = 0; node < layer_sizes[d + 1]; ++node) {
            for (int s = 0; s < layer_sizes[d]; ++s) layer.src.push_back(s);
            layer.offsets.push_back(static_cast<int>(layer.src.size()));
        }
        topo.links.push_back(std::move(layer));
    }
    return topo;
}

SparseNet::SparseNet(NetTopology topo, Activation act, ReadoutMode mode,
                     int output_dim)
    : topo_(std::move(topo)), act_(act), mode_(mode), output_dim_(output_dim) {
    if (topo_.layer_sizes.empty()) throw Error("SparseNet: empty topology");
    if (output_dim_ < 1) throw Error("SparseNet: output_dim must be >= 1");
    if (topo_.links.size() + 1 != topo_.layer_sizes.size())
        throw Error("SparseNet: link layer count does not match layer count");

    size_t off = 0;
    for (size_t d = 0; d < topo_.links.size(); ++d) {
        layer_w_off_.push_back(off);
        off += topo_.links[d].src.size();
    }
    b_off_ = off;
    for (size_t d = 1; d < topo_.layer_sizes.size(); ++d) {
        layer_b_off_.push_back(off);
        off += static_cast<size_t>(topo_.layer_sizes[d]);
    }
    r_off_ = off;
    n_readout_ = mode_ == ReadoutMode::all_layers ? topo_.n_neurons()
                                                  : topo_.layer_sizes.back();
    off += static_cast<size_t>(n_readout_) * output_dim_;
    rb_off_ = off;
    off += static_cast<size_t>(output_dim_);
    params_.assign(off, 0.0);
}

void SparseNet::init_params(const TrainConfig& cfg) {
    std::fill(params_.begin(), params_.end(), 0.0);
    if (cfg.init == TrainConfig::Init::zeros) return;

    Rng rng(cfg.seed);
    // per-neuron Glorot bound from the sparse fans: fan_in = incoming links,
    // fan_out = outgoing links into the next layer
    std::vector<std::vector<int>> out_deg(topo_.layer_sizes.size());
    for (size_t d = 0; d < topo_.layer_sizes.size(); ++d)
        out_deg[d].assign(topo_.layer_sizes[d], 0);
    for (size_t d = 0; d < topo_.links.size(); ++d)
        for (int s : topo_.links[d].src) ++out_deg[d][s];

    size_t w = 0;
    for (size_t d = 0; d < topo_.links.size(); ++d) {
        const auto& links = topo_.links[d];
        const int n_dest = topo_.layer_sizes[d + 1];
        for (int node = 0; node < n_dest; ++node) {
            const int fan_in = links.offsets[node + 1] - links.offsets[node];
            const int fan_out = out_deg[d + 1][node];
            const double bound = std::sqrt(6.0 / std::max(1, fan_in + fan_out));
            for (int k = links.offsets[node]; k < links.offsets[node + 1]; ++k)
                params_[w++] = rng.uniform(-bound, bound);
        }
    }
    // biases stay zero
    const double rbound = std::sqrt(6.0 / std::max<long>(1, n_readout_ + output_dim_));
    for (size_t i = r_off_; i < rb_off_; ++i) params_[i] = rng.uniform(-rbound, rbound);
}

namespace {
inline double apply_act(Activation a, double x) {
    switch (a) {
        case Activation::relu: return x > 0.0 ? x : 0.0;
        case Activation::tanh: return std::tanh(x);
        case Activation::identity: return x;
    }
    return x;
}
inline double act_deriv(Activation a, double pre, double act) {
    switch (a) {
        case Activation::relu: return pre > 0.0 ? 1.0 : 0.0;
        case Activation::tanh: return 1.0 - act * act;
        case Activation::identity: return 1.0;
    }
    return 1.0;
}
} // namespace

Eigen::MatrixXd SparseNet::forward(const Eigen::MatrixXd& x, Cache* cache) const {
    const int B = static_cast<int>(x.rows());
    const int D = static_cast<int>(topo_.links.size());
    if (static_cast<int>(x.cols()) != topo_.layer_sizes[0])
        throw Error("forward: input width " + std::to_string(x.cols()) +
                    " does not match layer 0 size " +
                    std::to_string(topo_.layer_sizes[0]));
    if (!x.allFinite()) throw Error("forward: non-finite input");

    Cache local;
    Cache& c = cache ? *cache : local;
    c.batch = B;
    c.act.assign(D + 1, {});
    c.pre.assign(D + 1, {});
    c.act[0].resize(static_cast<size_t>(B) * topo_.layer_sizes[0]);
    for (int b = 0; b < B; ++b)
        for (int j = 0; j < topo_.layer_sizes[0]; ++j)
            c.act[0][static_cast<size_t>(b) * topo_.layer_sizes[0] + j] = x(b, j);

    for (int d = 0; d < D; ++d) {
        const auto& links = topo_.links[d];
        const int n_in = topo_.layer_sizes[d];
        const int n_out = topo_.layer_sizes[d + 1];
        const double* w = params_.data() + layer_w_off_[d];
        const double* bias = params_.data() + layer_b_off_[d];
        c.pre[d + 1].resize(static_cast<size_t>(B) * n_out);
        c.act[d + 1].resize(static_cast<size_t>(B) * n_out);
        for (int b = 0; b < B; ++b) {
            const double* in = c.act[d].data() + static_cast<size_t>(b) * n_in;
            double* pre = c.pre[d + 1].data() + static_cast<size_t>(b) * n_out;
            double* out = c.act[d + 1].data() + static_cast<size_t>(b) * n_out;
            for (int node = 0; node < n_out; ++node) {
                double acc = bias[node];
                for (int k = links.offsets[node]; k < links.offsets[node + 1]; ++k)
                    acc += w[k] * in[links.src[k]];
                pre[node] = acc;
                out[node] = apply_act(act_, acc);
            }
        }
    }

    // linear readout over the canonical neuron order
    Eigen::MatrixXd y(B, output_dim_);
    const double* R = params_.data() + r_off_;
    const double* rb = params_.data() + rb_off_;
    const int first_layer = mode_ == ReadoutMode::all_layers ? 0 : D;
    for (int b = 0; b < B; ++b) {
        for (int o = 0; o < output_dim_; ++o) {
            double acc = rb[o];
            const double* row = R + static_cast<size_t>(o) * n_readout_;
            long n = 0;
            for (int d = first_layer; d <= D; ++d) {
                const int sz = topo_.layer_sizes[d];
                const double* a = c.act[d].data() + static_cast<size_t>(b) * sz;
                for (int j = 0; j < sz; ++j) acc += row[n++] * a[j];
            }
            y(b, o) = acc;
        }
    }
    return y;
}

std::vector<double> SparseNet::backward(const Cache& c, const Eigen::MatrixXd& d_out,
                                        Eigen::MatrixXd* d_input) const {
    const int B = c.batch;
    const int D = static_cast<int>(topo_.links.size());
    if (static_cast<int>(d_out.rows()) != B ||
        static_cast<int>(d_out.cols()) != output_dim_)
        throw Error("backward: output gradient shape mismatch");
    if (static_cast<int>(c.act.size()) != D + 1)
        throw Error("backward: cache does not match model");
    for (int d = 0; d <= D; ++d)
        if (c.act[d].size() != static_cast<size_t>(B) * topo_.layer_sizes[d])
            throw Error("backward: cache layer size mismatch");

    std::vector<double> grads(params_.size(), 0.0);
    std::vector<std::vector<double>> d_act(D + 1);
    for (int d = 0; d <= D; ++d)
        d_act[d].assign(static_cast<size_t>(B) * topo_.layer_sizes[d], 0.0);

    // readout
    const double* R = params_.data() + r_off_;
    const int first_layer = mode_ == ReadoutMode::all_layers ? 0 : D;
    for (int b = 0; b < B; ++b) {
        for (int o = 0; o < output_dim_; ++o) {
            const double g = d_out(b, o);
            if (g == 0.0) continue;
            grads[rb_off_ + o] += g;
            const double* row = R + static_cast<size_t>(o) * n_readout_;
            double* grow = grads.data() + r_off_ + static_cast<size_t>(o) * n_readout_;
            long n = 0;
            for (int d = first_layer; d <= D; ++d) {
                const int sz = topo_.layer_sizes[d];
                const double* a = c.act[d].data() + static_cast<size_t>(b) * sz;
                double* da = d_act[d].data() + static_cast<size_t>(b) * sz;
                for (int j = 0; j < sz; ++j) {
                    grow[n] += g * a[j];
                    da[j] += row[n] * g;
                    ++n;
                }
            }
        }
    }

    // chain through the sparse layers, top down
    for (int d = D; d >= 1; --d) {
        const auto& links = topo_.links[d - 1];
        const int n_in = topo_.layer_sizes[d - 1];
        const int n_out = topo_.layer_sizes[d];
        const double* w = params_.data() + layer_w_off_[d - 1];
        double* gw = grads.data() + layer_w_off_[d - 1];
        double* gb = grads.data() + layer_b_off_[d - 1];
        for (int b = 0; b < B; ++b) {
            const double* in = c.act[d - 1].data() + static_cast<size_t>(b) * n_in;
            const double* pre = c.pre[d].data() + static_cast<size_t>(b) * n_out;
            const double* act = c.act[d].data() + static_cast<size_t>(b) * n_out;
            const double* da = d_act[d].data() + static_cast<size_t>(b) * n_out;
            double* da_in = d_act[d - 1].data() + static_cast<size_t>(b) * n_in;
            for (int node = 0; node < n_out; ++node) {
                const double dpre = da[node] * act_deriv(act_, pre[node], act[node]);
                if (dpre == 0.0) continue;
                gb[node] += dpre;
                for (int k = links.offsets[node]; k < links.offsets[node + 1]; ++k) {
                    gw[k] += dpre * in[links.src[k]];
                    da_in[links.src[k]] += w[k] * dpre;
                }
            }
        }
    }

    if (d_input) {
        const int n0 = topo_.layer_sizes[0];
        d_input->resize(B, n0);
        for (int b = 0; b < B; ++b)
            for (int j = 0; j < n0; ++j)
                (*d_input)(b, j) = d_act[0][static_cast<size_t>(b) * n0 + j];
    }
    return grads;
}

SparseNet::ParamBreakdown SparseNet::param_breakdown() const {
    ParamBreakdown b;
    b.link_weights = topo_.n_link_weights();
    b.biases = topo_.n_biases();
    b.readout_weights = n_readout_ * output_dim_;
    b.readout_bias = output_dim_;
    b.total = b.link_weights + b.biases + b.readout_weights + b.readout_bias;
    b.dense_link_weights = topo_.dense_link_weights();
    return b;
}

HnnModel init_model(const HasseDiagram& d, const TrainConfig& cfg, Activation act,
                    int output_dim, int channel_multiplier) {
    if (d.n_layers() == 0 || d.layer_size(0) == 0)
        throw Error("init_model: empty diagram");
    SparseNet net(hasse_topology(d, channel_multiplier), act,
                  ReadoutMode::all_layers, output_dim);
    net.init_params(cfg);
    return HnnModel{d, std::move(net), d.structure_hash()};
}

double mse_loss(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target) {
    if (pred.rows() != target.rows() || pred.cols() != target.cols())
        throw Error("mse_loss: shape mismatch");
    return (pred - target).squaredNorm() /
           static_cast<double>(pred.rows() * pred.cols());
}

Eigen::MatrixXd mse_grad(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target) {
    return 2.0 * (pred - target) / static_cast<double>(pred.rows() * pred.cols());
}

} // namespace hnn
