#ifndef HNN_DATASET_HPP
#define HNN_DATASET_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hnn {

// A tabular dataset: named numeric feature columns plus an optional target.
// All values are finite after ingestion; missing or non-numeric cells are
// rejected at load time.
struct Dataset {
    std::vector<std::string> names;   // feature column names
    Eigen::MatrixXd values;           // n_rows x n_features
    std::optional<Eigen::VectorXd> target;
    std::string target_name;

    int n_rows() const { return static_cast<int>(values.rows()); }
    int n_features() const { return static_cast<int>(values.cols()); }
};

// Per-column standardization parameters, fit on one dataset and reusable on
// another with the same original column layout. Constant columns are dropped
// before the stats are recorded, so every stored std is strictly positive.
struct NormalizationStats {
    std::vector<std::string> names;   // kept columns, in order
    std::vector<int> kept;            // indices into the original column order
    Eigen::VectorXd mean;             // per kept column
    Eigen::VectorXd stddev;           // per kept column, > 0
    std::vector<std::string> dropped; // names of dropped constant columns

    // Selects the kept columns of x (original layout) and standardizes them.
    Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
};

// RFC-4180-style CSV: comma separated, optional header row, optional double
// quotes around fields, '.' decimal separator. When target_column is
// non-empty that column is split out of the feature block.
Dataset load_csv(const std::string& path, bool has_header,
                 const std::string& target_column = "");

// Standardizes every column to mean 0 and std 1 (population std, divide by n).
// Constant columns are dropped with a warning; a dataset whose columns are
// all constant is an error.
std::pair<Dataset, NormalizationStats> zscore(const Dataset& ds);

} // namespace hnn

#endif
