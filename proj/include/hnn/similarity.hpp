#ifndef HNN_SIMILARITY_HPP
#define HNN_SIMILARITY_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "json.hpp"

namespace hnn {

struct Dataset;

enum class SimilarityVariant { signed_corr, absolute_corr };

// Symmetric p x p matrix of pairwise dependency weights with unit diagonal.
// Under the absolute variant every entry lies in [0, 1].
struct SimilarityMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;

    int dim() const { return static_cast<int>(values.rows()); }

    nlohmann::json to_json() const;
    static SimilarityMatrix from_json(const nlohmann::json& j);
};

// Pearson correlation between every pair of columns. Requires at least 3 rows
// and no constant columns.
SimilarityMatrix pearson_similarity(const Dataset& ds, SimilarityVariant variant);

SimilarityVariant variant_from_string(const std::string& s);
std::string to_string(SimilarityVariant v);

} // namespace hnn

#endif
