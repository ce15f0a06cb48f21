#ifndef HNN_CHECKPOINT_HPP
#define HNN_CHECKPOINT_HPP

#include <string>

#include "hnn/bench.hpp"
#include "hnn/dataset.hpp"
#include "hnn/forecaster.hpp"
#include "hnn/model.hpp"
#include "json.hpp"

namespace hnn {

// Versioned JSON checkpoints. Every checkpoint embeds the Hasse diagram and
// its structural hash; loading recomputes the hash and refuses a mismatch.

struct TabularModelBundle {
    HasseDiagram diagram;
    AblationSpec spec;
    Activation act = Activation::relu;
    SparseNet net;
    NormalizationStats stats;
    double y_mean = 0.0, y_std = 1.0;
    std::string target_name;
};

nlohmann::json tabular_to_json(const TabularModelBundle& b);
TabularModelBundle tabular_from_json(const nlohmann::json& j);

struct ForecasterBundle {
    HasseDiagram diagram;
    Forecaster model;
    int lookback = 0, horizon = 0;
    double train_frac = 0.6, valid_frac = 0.2;
    Eigen::VectorXd series_mean, series_std;
};

nlohmann::json forecaster_to_json(const ForecasterBundle& b);
ForecasterBundle forecaster_from_json(const nlohmann::json& j);

void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

// Run manifest: everything needed to replay a run bit-identically.
struct RunManifest {
    std::string command;
    uint64_t seed = 0;
    nlohmann::json config;
    std::string dataset_path;
    std::string dataset_hash;
    nlohmann::json outputs;
    nlohmann::json metrics;

    nlohmann::json to_json() const;
};

void write_manifest(const RunManifest& m, const std::string& path);

} // namespace hnn

#endif
