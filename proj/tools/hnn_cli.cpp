// Command-line front end: graph building, tabular and time-series training
// and evaluation, and report assembly from run manifests.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hnn/bench.hpp"
#include "hnn/checkpoint.hpp"
#include "hnn/common.hpp"
#include "hnn/dataset.hpp"
#include "hnn/forecaster.hpp"
#include "hnn/homology.hpp"
#include "hnn/metrics.hpp"
#include "hnn/similarity.hpp"
#include "hnn/tmfg.hpp"
#include "hnn/train.hpp"

namespace {

using hnn::Error;

// flag/option misuse distinct from runtime failures; exits 2
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key=value config file. Command-line flags win: only options absent
// from argv are filled in. Unknown keys are rejected.
void apply_config_file(CLI::App* cmd, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        const auto a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos || line[a] == '#') continue;
        const auto b = line.find_last_not_of(" \t\r");
        std::string entry = line.substr(a, b - a + 1);
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(ln) +
                             ": expected key=value");
        auto trim = [](std::string s) {
            const auto x = s.find_first_not_of(" \t");
            const auto y = s.find_last_not_of(" \t");
            return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
        };
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        if (key.empty() || key == "config")
            throw UsageError("config line " + std::to_string(ln) + ": bad key");
        CLI::Option* opt = nullptr;
        try {
            opt = cmd->get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            throw UsageError("config: unknown key \"" + key + "\"");
        }
        if (opt->count() == 0) {
            opt->add_result(value);
            opt->run_callback();
        }
    }
}

// resolves against HNN_DATA_DIR when the path does not exist as given
std::string resolve_input(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (const char* dir = std::getenv("HNN_DATA_DIR")) {
        fs::path alt = fs::path(dir) / path;
        if (fs::exists(alt)) return alt.string();
    }
    throw Error("input file not found: " + path);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << text;
}

std::string default_manifest_path(const std::string& out, const std::string& given) {
    return given.empty() ? out + ".manifest.json" : given;
}

struct TrainFlags {
    double lr = 1e-3;
    std::string optimizer = "adam";
    int batch = 32;
    int epochs = 200;
    int patience = 20;
    uint64_t seed = 0;
    double l2 = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--lr", lr, "learning rate");
        cmd->add_option("--optimizer", optimizer, "adam or sgd")
            ->check(CLI::IsMember({"adam", "sgd"}));
        cmd->add_option("--batch", batch, "mini-batch size");
        cmd->add_option("--epochs", epochs, "maximum epochs");
        cmd->add_option("--patience", patience, "early-stop patience");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--l2", l2, "L2 penalty on weights");
    }

    hnn::TrainConfig to_config() const {
        hnn::TrainConfig cfg;
        cfg.learning_rate = lr;
        cfg.optimizer = optimizer == "sgd" ? hnn::TrainConfig::Opt::sgd
                                           : hnn::TrainConfig::Opt::adam;
        cfg.batch_size = batch;
        cfg.max_epochs = epochs;
        cfg.patience = patience;
        cfg.seed = seed;
        cfg.l2 = l2;
        return cfg;
    }

    nlohmann::json to_json() const {
        return {{"lr", lr},         {"optimizer", optimizer}, {"batch", batch},
                {"epochs", epochs}, {"patience", patience},   {"seed", seed},
                {"l2", l2}};
    }
};

// ---------------------------------------------------------------- graph ---

int cmd_graph_build(const std::string& input, bool no_header,
                    const std::string& target, const std::string& variant,
                    const std::string& out, const std::string& similarity_out,
                    const std::string& hasse_out, const std::string& dot_out,
                    const std::string& manifest_out) {
    const std::string path = resolve_input(input);
    hnn::Dataset ds = hnn::load_csv(path, !no_header, target);
    auto [std_ds, stats] = hnn::zscore(ds);
    hnn::SimilarityMatrix sim =
        hnn::pearson_similarity(std_ds, hnn::variant_from_string(variant));
    auto [graph, trace] = hnn::tmfg_construct(sim);
    hnn::HasseDiagram diagram = hnn::hasse_from_graph(graph);

    hnn::save_json(hnn::graph_to_json(graph), out);
    if (!similarity_out.empty()) hnn::save_json(sim.to_json(), similarity_out);
    if (!hasse_out.empty()) hnn::save_json(diagram.to_json(), hasse_out);
    if (!dot_out.empty()) write_text(dot_out, diagram.to_dot());

    hnn::RunManifest m;
    m.command = "graph build";
    m.config = {{"variant", variant}, {"header", !no_header}, {"target", target}};
    m.dataset_path = path;
    m.dataset_hash = hnn::hex64(hnn::hash_file(path));
    m.outputs = {{"graph", out}};
    if (!hasse_out.empty()) m.outputs["hasse"] = hasse_out;
    m.metrics = {{"p", graph.p},
                 {"edges", graph.edge_count()},
                 {"layer_sizes", diagram.layer_sizes()}};
    hnn::write_manifest(m, default_manifest_path(out, manifest_out));

    hnn::log_info("graph: p=" + std::to_string(graph.p) + " edges=" +
                  std::to_string(graph.edge_count()));
    return 0;
}

// -------------------------------------------------------------- tabular ---

int cmd_tabular_train(const std::string& input, const std::string& target,
                      bool no_header, const std::string& variant_name,
                      int multiplier, const std::string& activation,
                      double valid_frac, const TrainFlags& flags,
                      const std::string& out, const std::string& history_out,
                      const std::string& manifest_out) {
    const std::string path = resolve_input(input);
    hnn::Dataset ds = hnn::load_csv(path, !no_header, target);
    if (!ds.target) throw Error("tabular train: --target is required");

    auto [std_ds, stats] = hnn::zscore(ds);
    const int n = std_ds.n_rows();

    hnn::TrainConfig cfg = flags.to_config();
    hnn::Rng rng(cfg.seed);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(0, i)]);
    const int n_valid = std::max(1, static_cast<int>(n * valid_frac));
    const int n_train = n - n_valid;
    if (n_train < 4) throw Error("tabular train: not enough rows");

    Eigen::MatrixXd x_train(n_train, std_ds.n_features());
    Eigen::MatrixXd x_valid(n_valid, std_ds.n_features());
    Eigen::VectorXd y_train_raw(n_train), y_valid_raw(n_valid);
    for (int i = 0; i < n_train; ++i) {
        x_train.row(i) = std_ds.values.row(order[i]);
        y_train_raw(i) = (*std_ds.target)(order[i]);
    }
    for (int i = 0; i < n_valid; ++i) {
        x_valid.row(i) = std_ds.values.row(order[n_train + i]);
        y_valid_raw(i) = (*std_ds.target)(order[n_train + i]);
    }
    const double y_mean = y_train_raw.mean();
    const double y_std = std::sqrt((y_train_raw.array() - y_mean).square().sum() /
                                   y_train_raw.size());
    if (y_std == 0.0) throw Error("tabular train: constant target");
    Eigen::MatrixXd y_train = (y_train_raw.array() - y_mean) / y_std;
    Eigen::MatrixXd y_valid = (y_valid_raw.array() - y_mean) / y_std;

    // prior graph from training rows only
    hnn::Dataset train_view;
    train_view.names = std_ds.names;
    train_view.values = x_train;
    hnn::SimilarityMatrix sim = hnn::pearson_similarity(
        train_view, hnn::SimilarityVariant::absolute_corr);
    auto [graph, trace] = hnn::tmfg_construct(sim);
    hnn::HasseDiagram diagram = hnn::hasse_from_graph(graph);

    hnn::AblationSpec spec{hnn::variant_from_name(variant_name), multiplier};
    hnn::SparseNet net = hnn::build_variant(
        diagram, spec, hnn::activation_from_string(activation), 1);
    net.init_params(cfg);
    hnn::TrainHistory hist = hnn::train(net, x_train, y_train, x_valid, y_valid, cfg);

    hnn::TabularModelBundle bundle{diagram, spec,
                                   hnn::activation_from_string(activation),
                                   std::move(net), stats, y_mean, y_std,
                                   ds.target_name};
    hnn::save_json(hnn::tabular_to_json(bundle), out);
    if (!history_out.empty()) write_text(history_out, hist.to_csv());

    hnn::RunManifest m;
    m.command = "tabular train";
    m.seed = cfg.seed;
    m.config = flags.to_json();
    m.config["variant"] = variant_name;
    m.config["multiplier"] = multiplier;
    m.config["activation"] = activation;
    m.config["valid_frac"] = valid_frac;
    m.config["target"] = target;
    m.dataset_path = path;
    m.dataset_hash = hnn::hex64(hnn::hash_file(path));
    m.outputs = {{"model", out}};
    m.metrics = {{"best_epoch", hist.best_epoch},
                 {"best_valid_loss", hist.best_valid},
                 {"params", bundle.net.param_breakdown().total}};
    hnn::write_manifest(m, default_manifest_path(out, manifest_out));

    hnn::log_info("trained " + variant_name + ": best valid loss " +
                  std::to_string(hist.best_valid) + " at epoch " +
                  std::to_string(hist.best_epoch));
    return 0;
}

int cmd_tabular_eval(const std::string& model_path, const std::string& input,
                     bool no_header, const std::string& out,
                     const std::string& manifest_out) {
    hnn::TabularModelBundle bundle =
        hnn::tabular_from_json(hnn::load_json(model_path));
    const std::string path = resolve_input(input);
    hnn::Dataset ds = hnn::load_csv(path, !no_header, bundle.target_name);
    if (!ds.target) throw Error("tabular eval: dataset lacks the target column");

    Eigen::MatrixXd x = bundle.stats.apply(ds.values);
    Eigen::VectorXd pred =
        (bundle.net.forward(x).col(0).array() * bundle.y_std) + bundle.y_mean;
    const double r2 = hnn::r2_score(*ds.target, pred);

    nlohmann::json metrics = {{"model", to_string(bundle.spec.variant)},
                              {"r2", r2},
                              {"n", ds.n_rows()}};
    if (!out.empty()) hnn::save_json(metrics, out);

    hnn::RunManifest m;
    m.command = "tabular eval";
    m.config = {{"model", model_path}};
    m.dataset_path = path;
    m.dataset_hash = hnn::hex64(hnn::hash_file(path));
    m.outputs = out.empty() ? nlohmann::json::object() : nlohmann::json{{"metrics", out}};
    m.metrics = metrics;
    hnn::write_manifest(m, default_manifest_path(out.empty() ? model_path : out,
                                                 manifest_out));

    std::cout << "r2 " << r2 << "\n";
    return 0;
}

// ------------------------------------------------------------------- ts ---

int cmd_ts_train(const std::string& input, int lookback, int horizon, int hidden,
                 double train_frac, double valid_frac, const TrainFlags& flags,
                 const std::string& out, const std::string& history_out,
                 const std::string& manifest_out) {
    const std::string path = resolve_input(input);
    hnn::MultivariateSeries series = hnn::load_series(path);
    if (series.n_series() < 4)
        throw Error("ts train: need at least 4 series for the graph filter");
    hnn::WindowedSeries windows =
        hnn::make_windows(series, lookback, horizon, train_frac, valid_frac);

    // graph from training-segment correlations only
    const int b1 = static_cast<int>(train_frac * series.length());
    hnn::Dataset train_view;
    train_view.names = series.names;
    train_view.values = windows.values.leftCols(b1).transpose();
    hnn::SimilarityMatrix sim = hnn::pearson_similarity(
        train_view, hnn::SimilarityVariant::absolute_corr);
    auto [graph, trace] = hnn::tmfg_construct(sim);
    hnn::HasseDiagram diagram = hnn::hasse_from_graph(graph);

    hnn::SparseNet net(hnn::hasse_topology(diagram), hnn::Activation::relu,
                       hnn::ReadoutMode::all_layers, series.n_series());
    hnn::Forecaster model(series.n_series(), lookback, hidden, std::move(net));
    hnn::TrainConfig cfg = flags.to_config();
    model.init_params(cfg.seed);
    hnn::ForecastHistory hist = hnn::train_forecaster(model, windows, cfg);

    hnn::ForecasterBundle bundle{diagram,    std::move(model), lookback,
                                 horizon,    train_frac,       valid_frac,
                                 windows.mean, windows.stddev};
    hnn::save_json(hnn::forecaster_to_json(bundle), out);
    if (!history_out.empty()) {
        std::ostringstream os;
        os << "epoch,train_loss,valid_rse\n";
        for (size_t e = 0; e < hist.train_loss.size(); ++e)
            os << e << "," << hist.train_loss[e] << "," << hist.valid_rse[e] << "\n";
        write_text(history_out, os.str());
    }

    hnn::RunManifest m;
    m.command = "ts train";
    m.seed = cfg.seed;
    m.config = flags.to_json();
    m.config["lookback"] = lookback;
    m.config["horizon"] = horizon;
    m.config["hidden"] = hidden;
    m.config["train_frac"] = train_frac;
    m.config["valid_frac"] = valid_frac;
    m.dataset_path = path;
    m.dataset_hash = hnn::hex64(hnn::hash_file(path));
    m.outputs = {{"model", out}};
    m.metrics = {{"best_epoch", hist.best_epoch}, {"best_valid_rse", hist.best_valid}};
    hnn::write_manifest(m, default_manifest_path(out, manifest_out));

    hnn::log_info("trained forecaster: best valid RSE " +
                  std::to_string(hist.best_valid) + " at epoch " +
                  std::to_string(hist.best_epoch));
    return 0;
}

int cmd_ts_eval(const std::string& model_path, const std::string& input,
                const std::string& out, const std::string& forecast_out,
                const std::string& manifest_out) {
    hnn::ForecasterBundle bundle =
        hnn::forecaster_from_json(hnn::load_json(model_path));
    const std::string path = resolve_input(input);
    hnn::MultivariateSeries series = hnn::load_series(path);
    if (series.n_series() != bundle.model.n_series())
        throw Error("ts eval: series count does not match the model");

    hnn::WindowedSeries windows = hnn::make_windows(
        series, bundle.lookback, bundle.horizon, bundle.train_frac, bundle.valid_frac);
    // evaluate under the normalization stored at training time
    windows.values = (series.values.colwise() - bundle.series_mean)
                         .array()
                         .colwise() /
                     bundle.series_std.array();

    const Eigen::MatrixXd truth = windows.targets(windows.test_starts);
    const Eigen::MatrixXd pred = bundle.model.predict(windows, windows.test_starts);
    const double test_rse = hnn::rse(truth, pred);
    const double test_corr = hnn::corr_metric(truth, pred);

    nlohmann::json metrics = {{"model", "lstm_hnn"},
                              {"horizon", bundle.horizon},
                              {"rse", test_rse},
                              {"corr", test_corr},
                              {"n_test", static_cast<int>(windows.test_starts.size())}};
    if (!out.empty()) hnn::save_json(metrics, out);

    if (!forecast_out.empty()) {
        std::ostringstream os;
        os << "t,series,prediction\n";
        for (size_t i = 0; i < windows.test_starts.size(); ++i) {
            const int t = windows.test_starts[i] + bundle.lookback - 1 + bundle.horizon;
            for (int s = 0; s < bundle.model.n_series(); ++s) {
                const double raw = pred(static_cast<Eigen::Index>(i), s) *
                                       bundle.series_std(s) +
                                   bundle.series_mean(s);
                os << t << "," << s << "," << raw << "\n";
            }
        }
        write_text(forecast_out, os.str());
    }

    hnn::RunManifest m;
    m.command = "ts eval";
    m.config = {{"model", model_path}};
    m.dataset_path = path;
    m.dataset_hash = hnn::hex64(hnn::hash_file(path));
    m.outputs = out.empty() ? nlohmann::json::object() : nlohmann::json{{"metrics", out}};
    m.metrics = metrics;
    hnn::write_manifest(m, default_manifest_path(out.empty() ? model_path : out,
                                                 manifest_out));

    std::cout << "rse " << test_rse << " corr " << test_corr << "\n";
    return 0;
}

// --------------------------------------------------------------- report ---

// lower is better for error-style metrics, higher for scores
bool lower_is_better(const std::string& metric) {
    return metric == "rse" || metric.find("loss") != std::string::npos ||
           metric.find("error") != std::string::npos;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& out_csv,
               const std::string& out_json) {
    // group metric values by model name across run manifests
    std::map<std::string, std::map<std::string, std::vector<double>>> by_model;
    for (const auto& path : inputs) {
        nlohmann::json j = hnn::load_json(path);
        const nlohmann::json metrics = j.contains("metrics") ? j["metrics"] : j;
        std::string model = metrics.value("model", std::string("unknown"));
        for (auto it = metrics.begin(); it != metrics.end(); ++it) {
            if (!it->is_number()) continue;
            if (it.key() == "n" || it.key() == "n_test" || it.key() == "horizon")
                continue;
            by_model[model][it.key()].push_back(it->get<double>());
        }
    }
    if (by_model.empty()) throw Error("report: no numeric metrics found");

    // best model per metric, for the significance column
    std::map<std::string, std::string> best_model;
    for (const auto& [model, metrics] : by_model) {
        for (const auto& [metric, values] : metrics) {
            const double mean = hnn::aggregate_scores(model, values).mean;
            auto it = best_model.find(metric);
            if (it == best_model.end()) {
                best_model[metric] = model;
                continue;
            }
            const double best_mean =
                hnn::aggregate_scores(it->second, by_model[it->second][metric]).mean;
            const bool better = lower_is_better(metric) ? mean < best_mean
                                                        : mean > best_mean;
            if (better) it->second = model;
        }
    }

    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream csv;
    csv << "model,metric,mean,q10,q50,q90,n,best,sig_vs_best\n";
    for (const auto& [model, metrics] : by_model) {
        for (const auto& [metric, values] : metrics) {
            hnn::MetricReport rep = hnn::aggregate_scores(model, values);
            const std::string& best = best_model[metric];
            const bool is_best = model == best;
            // paired t-test against the best model when runs line up
            std::string marker;
            if (!is_best && by_model[best][metric].size() == values.size() &&
                values.size() >= 2) {
                try {
                    auto t = hnn::paired_t_test(values, by_model[best][metric]);
                    marker = hnn::significance_marker(t.p);
                } catch (const Error&) {
                    // zero-variance differences: no marker
                }
            }
            csv << model << "," << metric << "," << rep.mean << "," << rep.q10
                << "," << rep.q50 << "," << rep.q90 << "," << rep.n << ","
                << (is_best ? "yes" : "") << "," << marker << "\n";
            rows.push_back({{"model", model},
                            {"metric", metric},
                            {"mean", rep.mean},
                            {"q10", rep.q10},
                            {"q50", rep.q50},
                            {"q90", rep.q90},
                            {"n", rep.n},
                            {"best", is_best},
                            {"sig_vs_best", marker}});
        }
    }
    if (out_csv.empty())
        std::cout << csv.str();
    else
        write_text(out_csv, csv.str());
    if (!out_json.empty()) hnn::save_json(rows, out_json);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse homological networks: graph filtering, training, evaluation"};
    app.require_subcommand(1);
    std::map<CLI::App*, std::string> config_paths;
    auto add_config = [&config_paths](CLI::App* cmd) {
        cmd->add_option("--config", config_paths[cmd], "flat key=value config file");
    };

    // graph build
    auto* graph = app.add_subcommand("graph", "graph construction");
    graph->require_subcommand(1);
    auto* gbuild = graph->add_subcommand("build", "CSV -> TMFG + Hasse diagram");
    add_config(gbuild);
    std::string g_input, g_target, g_variant = "absolute", g_out;
    std::string g_sim, g_hasse, g_dot, g_manifest;
    bool g_no_header = false;
    gbuild->add_option("--input", g_input, "input CSV")->required();
    gbuild->add_flag("--no-header", g_no_header, "CSV has no header row");
    gbuild->add_option("--target", g_target, "target column to exclude");
    gbuild->add_option("--variant", g_variant, "similarity variant")
        ->check(CLI::IsMember({"absolute", "signed"}));
    gbuild->add_option("--out", g_out, "output graph JSON")->required();
    gbuild->add_option("--similarity", g_sim, "also write the similarity JSON");
    gbuild->add_option("--hasse", g_hasse, "also write the Hasse diagram JSON");
    gbuild->add_option("--dot", g_dot, "also write the Hasse diagram DOT");
    gbuild->add_option("--manifest", g_manifest, "manifest path");

    // tabular
    auto* tab = app.add_subcommand("tabular", "tabular regression");
    tab->require_subcommand(1);
    auto* ttrain = tab->add_subcommand("train", "train a model on a CSV");
    add_config(ttrain);
    std::string t_input, t_target, t_variant = "hnn", t_activation = "relu";
    std::string t_out, t_history, t_manifest;
    bool t_no_header = false;
    int t_multiplier = 1;
    double t_valid_frac = 0.2;
    TrainFlags t_flags;
    ttrain->add_option("--input", t_input, "input CSV")->required();
    ttrain->add_option("--target", t_target, "target column")->required();
    ttrain->add_flag("--no-header", t_no_header, "CSV has no header row");
    ttrain->add_option("--variant", t_variant, "hnn, mlp, mlp_res or mlp_hnn")
        ->check(CLI::IsMember({"hnn", "mlp", "mlp_res", "mlp_hnn"}));
    ttrain->add_option("--multiplier", t_multiplier, "hidden channel multiplier");
    ttrain->add_option("--activation", t_activation, "relu, tanh or identity")
        ->check(CLI::IsMember({"relu", "tanh", "identity"}));
    ttrain->add_option("--valid-frac", t_valid_frac, "validation fraction");
    t_flags.attach(ttrain);
    ttrain->add_option("--out", t_out, "model checkpoint path")->required();
    ttrain->add_option("--history", t_history, "training history CSV");
    ttrain->add_option("--manifest", t_manifest, "manifest path");

    auto* teval = tab->add_subcommand("eval", "evaluate a checkpoint on a CSV");
    add_config(teval);
    std::string e_model, e_input, e_out, e_manifest;
    bool e_no_header = false;
    teval->add_option("--model", e_model, "model checkpoint")->required();
    teval->add_option("--input", e_input, "input CSV")->required();
    teval->add_flag("--no-header", e_no_header, "CSV has no header row");
    teval->add_option("--out", e_out, "metrics JSON path");
    teval->add_option("--manifest", e_manifest, "manifest path");

    // ts
    auto* ts = app.add_subcommand("ts", "multivariate time-series forecasting");
    ts->require_subcommand(1);
    auto* strain = ts->add_subcommand("train", "train the LSTM-HNN composite");
    add_config(strain);
    std::string s_input, s_out, s_history, s_manifest;
    int s_lookback = 24, s_horizon = 3, s_hidden = 64;
    double s_train_frac = 0.6, s_valid_frac = 0.2;
    TrainFlags s_flags;
    strain->add_option("--input", s_input, "series file (rows = timesteps)")->required();
    strain->add_option("--lookback", s_lookback, "window length");
    strain->add_option("--horizon", s_horizon, "forecast horizon");
    strain->add_option("--hidden", s_hidden, "LSTM hidden size");
    strain->add_option("--train-frac", s_train_frac, "training fraction");
    strain->add_option("--valid-frac", s_valid_frac, "validation fraction");
    s_flags.attach(strain);
    strain->add_option("--out", s_out, "model checkpoint path")->required();
    strain->add_option("--history", s_history, "training history CSV");
    strain->add_option("--manifest", s_manifest, "manifest path");

    auto* seval = ts->add_subcommand("eval", "evaluate a forecaster checkpoint");
    add_config(seval);
    std::string v_model, v_input, v_out, v_forecast, v_manifest;
    seval->add_option("--model", v_model, "model checkpoint")->required();
    seval->add_option("--input", v_input, "series file")->required();
    seval->add_option("--out", v_out, "metrics JSON path");
    seval->add_option("--forecast", v_forecast, "forecast CSV path");
    seval->add_option("--manifest", v_manifest, "manifest path");

    // report
    auto* report = app.add_subcommand("report", "aggregate metrics from manifests");
    add_config(report);
    std::vector<std::string> r_inputs;
    std::string r_csv, r_json;
    report->add_option("--inputs", r_inputs, "manifest/metrics JSON files")
        ->required()
        ->expected(-1);
    report->add_option("--out", r_csv, "report CSV path (stdout when omitted)");
    report->add_option("--json", r_json, "report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e); // prints usage, exit 0
        app.exit(e);
        return 2;
    }

    try {
        for (auto& [cmd, path] : config_paths)
            if (cmd->parsed() && !path.empty()) apply_config_file(cmd, path);
        if (gbuild->parsed())
            return cmd_graph_build(g_input, g_no_header, g_target, g_variant, g_out,
                                   g_sim, g_hasse, g_dot, g_manifest);
        if (ttrain->parsed())
            return cmd_tabular_train(t_input, t_target, t_no_header, t_variant,
                                     t_multiplier, t_activation, t_valid_frac,
                                     t_flags, t_out, t_history, t_manifest);
        if (teval->parsed())
            return cmd_tabular_eval(e_model, e_input, e_no_header, e_out, e_manifest);
        if (strain->parsed())
            return cmd_ts_train(s_input, s_lookback, s_horizon, s_hidden,
                                s_train_frac, s_valid_frac, s_flags, s_out,
                                s_history, s_manifest);
        if (seval->parsed())
            return cmd_ts_eval(v_model, v_input, v_out, v_forecast, v_manifest);
        if (report->parsed()) return cmd_report(r_inputs, r_csv, r_json);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
