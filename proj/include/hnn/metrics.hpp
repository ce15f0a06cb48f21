#ifndef HNN_METRICS_HPP
#define HNN_METRICS_HPP

#include <Eigen/Dense>
#include <vector>

namespace hnn {

// Coefficient of determination, 1 - SS_res/SS_tot. Errors on constant truth.
double r2_score(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred);

// Root relative squared error over the whole tensor:
// sqrt(sum (y - yhat)^2) / sqrt(sum (y - mean(y))^2).
// The unconditional mean predictor scores exactly 1.
double rse(const Eigen::MatrixXd& y_true, const Eigen::MatrixXd& y_pred);

// Mean per-series (per-column) Pearson correlation between truth and
// prediction. Series with constant truth or prediction are excluded with a
// warning; errors when nothing remains.
double corr_metric(const Eigen::MatrixXd& y_true, const Eigen::MatrixXd& y_pred);

struct TTestResult {
    double t = 0.0;
    double p = 0.0; // two-sided
    int df = 0;
};

// Two-sided paired t-test on a - b. Errors on zero-variance differences.
TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

// CDF of Student's t with df degrees of freedom, via the regularized
// incomplete beta function (continued fraction, accurate to ~1e-12, well
// inside the documented 1e-8 budget).
double student_t_cdf(double t, int df);
double incomplete_beta(double a, double b, double x);

// Linear-interpolation quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> values, double q);

// Significance markers at the 1% / 0.1% / 0.001% thresholds:
// "*", "**", "***", or "" when not significant.
const char* significance_marker(double p);

} // namespace hnn

#endif
