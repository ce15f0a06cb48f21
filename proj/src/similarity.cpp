#include "hnn/similarity.hpp"

#include <cmath>

#include "hnn/common.hpp"
#include "hnn/dataset.hpp"

namespace hnn {

SimilarityMatrix pearson_similarity(const Dataset& ds, SimilarityVariant variant) {
    const int n = ds.n_rows();
    const int p = ds.n_features();
    if (n < 3) throw Error("pearson_similarity: need at least 3 rows");

    Eigen::MatrixXd centered = ds.values.rowwise() - ds.values.colwise().mean();
    Eigen::VectorXd norms(p);
    for (int j = 0; j < p; ++j) {
        norms(j) = centered.col(j).norm();
        if (norms(j) == 0.0)
            throw Error("pearson_similarity: constant column \"" + ds.names[j] + "\"");
    }

    Eigen::MatrixXd cov = centered.transpose() * centered;
    SimilarityMatrix sim;
    sim.labels = ds.names;
    sim.values.resize(p, p);
    for (int i = 0; i < p; ++i) {
        sim.values(i, i) = 1.0;
        for (int j = i + 1; j < p; ++j) {
            double r = cov(i, j) / (norms(i) * norms(j));
            r = std::clamp(r, -1.0, 1.0);
            if (variant == SimilarityVariant::absolute_corr) r = std::fabs(r);
            sim.values(i, j) = r;
            sim.values(j, i) = r;
        }
    }
    return sim;
}

nlohmann::json SimilarityMatrix::to_json() const {
    nlohmann::json j;
    j["dim"] = dim();
    j["labels"] = labels;
    auto rows = nlohmann::json::array();
    for (int i = 0; i < dim(); ++i) {
        auto row = nlohmann::json::array();
        for (int k = 0; k < dim(); ++k) row.push_back(values(i, k));
        rows.push_back(row);
    }
    j["values"] = rows;
    return j;
}

SimilarityMatrix SimilarityMatrix::from_json(const nlohmann::json& j) {
    SimilarityMatrix sim;
    const int p = j.at("dim").get<int>();
    if (j.contains("labels")) sim.labels = j.at("labels").get<std::vector<std::string>>();
    sim.values.resize(p, p);
    const auto& rows = j.at("values");
    if (static_cast<int>(rows.size()) != p)
        throw Error("similarity json: values row count does not match dim");
    for (int i = 0; i < p; ++i) {
        if (static_cast<int>(rows[i].size()) != p)
            throw Error("similarity json: ragged values matrix");
        for (int k = 0; k < p; ++k) sim.values(i, k) = rows[i][k].get<double>();
    }
    return sim;
}

SimilarityVariant variant_from_string(const std::string& s) {
    if (s == "absolute") return SimilarityVariant::absolute_corr;
    if (s == "signed") return SimilarityVariant::signed_corr;
    throw Error("unknown similarity variant: " + s);
}

std::string to_string(SimilarityVariant v) {
    return v == SimilarityVariant::absolute_corr ? "absolute" : "signed";
}

} // namespace hnn
