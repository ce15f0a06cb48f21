#include "hnn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hnn/common.hpp"

namespace hnn {

namespace {

// Splits one CSV record. Double quotes wrap fields that contain commas;
// doubled quotes inside a quoted field encode a literal quote.
std::vector<std::string> split_record(const std::string& line, int line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) {
        throw Error("csv parse failure: unterminated quote on line " +
                    std::to_string(line_no));
    }
    fields.push_back(cur);
    return fields;
}

double parse_cell(const std::string& cell, int data_row,
                  const std::string& col_name) {
    std::string s = cell;
    // trim surrounding whitespace
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) {
        throw Error("csv parse failure: empty cell at row " +
                    std::to_string(data_row) + ", column \"" + col_name + "\"");
    }
    s = s.substr(a, b - a + 1);
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        throw Error("csv parse failure: cannot parse \"" + s + "\" at row " +
                    std::to_string(data_row) + ", column \"" + col_name + "\"");
    }
    return v;
}

} // namespace

Dataset load_csv(const std::string& path, bool has_header,
                 const std::string& target_column) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);

    std::vector<std::vector<std::string>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == EOF) break; // trailing newline
        rows.push_back(split_record(line, line_no));
    }
    if (rows.empty()) throw Error("empty file: " + path);

    std::vector<std::string> names;
    size_t first_data = 0;
    if (has_header) {
        for (auto& h : rows[0]) names.push_back(h);
        first_data = 1;
        if (rows.size() == 1) throw Error("csv has a header but no data rows: " + path);
    } else {
        for (size_t j = 0; j < rows[0].size(); ++j)
            names.push_back("c" + std::to_string(j + 1));
    }
    const size_t n_cols = names.size();
    const size_t n_rows = rows.size() - first_data;

    int target_idx = -1;
    if (!target_column.empty()) {
        auto it = std::find(names.begin(), names.end(), target_column);
        if (it == names.end())
            throw Error("target column \"" + target_column + "\" not found in " + path);
        target_idx = static_cast<int>(it - names.begin());
    }

    Dataset ds;
    const size_t n_feat = n_cols - (target_idx >= 0 ? 1 : 0);
    ds.values.resize(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_feat));
    Eigen::VectorXd target(n_rows);

    for (size_t r = 0; r < n_rows; ++r) {
        const auto& rec = rows[r + first_data];
        if (rec.size() != n_cols) {
            throw Error("ragged row " + std::to_string(r + 1) + ": expected " +
                        std::to_string(n_cols) + " fields, got " +
                        std::to_string(rec.size()));
        }
        size_t f = 0;
        for (size_t c = 0; c < n_cols; ++c) {
            double v = parse_cell(rec[c], static_cast<int>(r + 1), names[c]);
            if (static_cast<int>(c) == target_idx) {
                target(static_cast<Eigen::Index>(r)) = v;
            } else {
                ds.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f++)) = v;
            }
        }
    }

    for (size_t c = 0; c < n_cols; ++c) {
        if (static_cast<int>(c) == target_idx) continue;
        ds.names.push_back(names[c]);
    }
    if (target_idx >= 0) {
        ds.target = target;
        ds.target_name = target_column;
    }
    return ds;
}

Eigen::MatrixXd NormalizationStats::apply(const Eigen::MatrixXd& x) const {
    Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(kept.size()));
    for (size_t j = 0; j < kept.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) =
            (x.col(kept[j]).array() - mean(static_cast<Eigen::Index>(j))) /
            stddev(static_cast<Eigen::Index>(j));
    }
    return out;
}

std::pair<Dataset, NormalizationStats> zscore(const Dataset& ds) {
    const int n = ds.n_rows();
    const int p = ds.n_features();
    if (n == 0 || p == 0) throw Error("zscore: empty dataset");

    NormalizationStats stats;
    std::vector<double> means, stds;
    for (int j = 0; j < p; ++j) {
        double m = ds.values.col(j).mean();
        double var = (ds.values.col(j).array() - m).square().sum() / n;
        double sd = std::sqrt(var);
        if (sd == 0.0) {
            stats.dropped.push_back(ds.names[j]);
            log_warn("zscore: dropping constant column \"" + ds.names[j] + "\"");
            continue;
        }
        stats.kept.push_back(j);
        stats.names.push_back(ds.names[j]);
        means.push_back(m);
        stds.push_back(sd);
    }
    if (stats.kept.empty()) throw Error("zscore: all columns are constant");

    stats.mean = Eigen::Map<Eigen::VectorXd>(means.data(), static_cast<Eigen::Index>(means.size()));
    stats.stddev = Eigen::Map<Eigen::VectorXd>(stds.data(), static_cast<Eigen::Index>(stds.size()));

    Dataset out;
    out.names = stats.names;
    out.values = stats.apply(ds.values);
    out.target = ds.target;
    out.target_name = ds.target_name;
    return {out, stats};
}

} // namespace hnn
