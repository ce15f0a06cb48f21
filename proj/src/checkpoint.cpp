#include "hnn/checkpoint.hpp"

#include <fstream>

#include "hnn/common.hpp"

namespace hnn {

namespace {

constexpr int kFormatVersion = 1;

nlohmann::json vec_to_json(const std::vector<double>& v) { return v; }

nlohmann::json eigen_to_json(const Eigen::VectorXd& v) {
    std::vector<double> out(v.data(), v.data() + v.size());
    return out;
}

Eigen::VectorXd eigen_from_json(const nlohmann::json& j) {
    auto v = j.get<std::vector<double>>();
    return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

HasseDiagram checked_diagram(const nlohmann::json& j) {
    HasseDiagram d = HasseDiagram::from_json(j.at("diagram"));
    const std::string stored = j.at("diagram_hash").get<std::string>();
    if (hex64(d.structure_hash()) != stored)
        throw Error("checkpoint: diagram hash mismatch (model was trained on a "
                    "different graph)");
    return d;
}

nlohmann::json stats_to_json(const NormalizationStats& s) {
    nlohmann::json j;
    j["names"] = s.names;
    j["kept"] = s.kept;
    j["mean"] = eigen_to_json(s.mean);
    j["std"] = eigen_to_json(s.stddev);
    j["dropped"] = s.dropped;
    return j;
}

NormalizationStats stats_from_json(const nlohmann::json& j) {
    NormalizationStats s;
    s.names = j.at("names").get<std::vector<std::string>>();
    s.kept = j.at("kept").get<std::vector<int>>();
    s.mean = eigen_from_json(j.at("mean"));
    s.stddev = eigen_from_json(j.at("std"));
    s.dropped = j.at("dropped").get<std::vector<std::string>>();
    return s;
}

} // namespace

nlohmann::json tabular_to_json(const TabularModelBundle& b) {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "tabular";
    j["diagram"] = b.diagram.to_json();
    j["diagram_hash"] = hex64(b.diagram.structure_hash());
    j["variant"] = to_string(b.spec.variant);
    j["channel_multiplier"] = b.spec.channel_multiplier;
    j["activation"] = to_string(b.act);
    j["params"] = vec_to_json(b.net.params());
    j["normalization"] = stats_to_json(b.stats);
    j["target"] = {{"name", b.target_name}, {"mean", b.y_mean}, {"std", b.y_std}};
    return j;
}

TabularModelBundle tabular_from_json(const nlohmann::json& j) {
    if (j.at("format_version").get<int>() != kFormatVersion)
        throw Error("checkpoint: unsupported format version");
    if (j.at("kind").get<std::string>() != "tabular")
        throw Error("checkpoint: not a tabular model");
    HasseDiagram diagram = checked_diagram(j);
    AblationSpec spec;
    spec.variant = variant_from_name(j.at("variant").get<std::string>());
    spec.channel_multiplier = j.at("channel_multiplier").get<int>();
    Activation act = activation_from_string(j.at("activation").get<std::string>());
    SparseNet net = build_variant(diagram, spec, act, 1);
    auto params = j.at("params").get<std::vector<double>>();
    if (params.size() != net.params().size())
        throw Error("checkpoint: parameter count mismatch");
    net.params() = params;
    TabularModelBundle b{std::move(diagram), spec, act, std::move(net),
                         stats_from_json(j.at("normalization")),
                         j.at("target").at("mean").get<double>(),
                         j.at("target").at("std").get<double>(),
                         j.at("target").at("name").get<std::string>()};
    return b;
}

nlohmann::json forecaster_to_json(const ForecasterBundle& b) {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "forecaster";
    j["diagram"] = b.diagram.to_json();
    j["diagram_hash"] = hex64(b.diagram.structure_hash());
    j["n_series"] = b.model.n_series();
    j["lookback"] = b.lookback;
    j["horizon"] = b.horizon;
    j["train_frac"] = b.train_frac;
    j["valid_frac"] = b.valid_frac;
    j["hidden"] = b.model.lstm().hidden();
    j["activation"] = to_string(b.model.hnn().activation());
    j["params"] = b.model.get_params();
    j["series_mean"] = eigen_to_json(b.series_mean);
    j["series_std"] = eigen_to_json(b.series_std);
    return j;
}

ForecasterBundle forecaster_from_json(const nlohmann::json& j) {
    if (j.at("format_version").get<int>() != kFormatVersion)
        throw Error("checkpoint: unsupported format version");
    if (j.at("kind").get<std::string>() != "forecaster")
        throw Error("checkpoint: not a forecaster model");
    HasseDiagram diagram = checked_diagram(j);
    const int n_series = j.at("n_series").get<int>();
    const int lookback = j.at("lookback").get<int>();
    const int hidden = j.at("hidden").get<int>();
    Activation act = activation_from_string(j.at("activation").get<std::string>());
    SparseNet net(hasse_topology(diagram), act, ReadoutMode::all_layers, n_series);
    Forecaster model(n_series, lookback, hidden, std::move(net));
    model.set_params(j.at("params").get<std::vector<double>>());
    ForecasterBundle b{std::move(diagram),
                       std::move(model),
                       lookback,
                       j.at("horizon").get<int>(),
                       j.at("train_frac").get<double>(),
                       j.at("valid_frac").get<double>(),
                       eigen_from_json(j.at("series_mean")),
                       eigen_from_json(j.at("series_std"))};
    return b;
}

void save_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw Error("write failed: " + path);
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("invalid json in " + path + ": " + e.what());
    }
    return j;
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["manifest_version"] = 1;
    j["command"] = command;
    j["seed"] = seed;
    j["config"] = config;
    j["dataset"] = {{"path", dataset_path}, {"hash", dataset_hash}};
    j["outputs"] = outputs;
    j["metrics"] = metrics;
    return j;
}

void write_manifest(const RunManifest& m, const std::string& path) {
    save_json(m.to_json(), path);
}

} // namespace hnn
