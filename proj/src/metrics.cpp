#include "hnn/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "hnn/common.hpp"

namespace hnn {

namespace {

// mean by plain left-to-right accumulation; metric identities (mean predictor
// scoring exactly 0 / 1) rely on this being reproducible
double mean_of(const Eigen::VectorXd& v) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += v(i);
    return s / static_cast<double>(v.size());
}

} // namespace

double r2_score(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred) {
    if (y_true.size() != y_pred.size()) throw Error("r2_score: length mismatch");
    if (y_true.size() < 2) throw Error("r2_score: need at least 2 points");
    const double m = mean_of(y_true);
    double ss_res = 0.0, ss_tot = 0.0;
    for (Eigen::Index i = 0; i < y_true.size(); ++i) {
        const double r = y_true(i) - y_pred(i);
        const double d = y_true(i) - m;
        ss_res += r * r;
        ss_tot += d * d;
    }
    if (ss_tot == 0.0) throw Error("r2_score: constant truth");
    return 1.0 - ss_res / ss_tot;
}

double rse(const Eigen::MatrixXd& y_true, const Eigen::MatrixXd& y_pred) {
    if (y_true.rows() != y_pred.rows() || y_true.cols() != y_pred.cols())
        throw Error("rse: shape mismatch");
    double sum = 0.0;
    for (Eigen::Index j = 0; j < y_true.cols(); ++j)
        for (Eigen::Index i = 0; i < y_true.rows(); ++i) sum += y_true(i, j);
    const double m = sum / static_cast<double>(y_true.size());
    double num = 0.0, den = 0.0;
    for (Eigen::Index j = 0; j < y_true.cols(); ++j)
        for (Eigen::Index i = 0; i < y_true.rows(); ++i) {
            const double r = y_true(i, j) - y_pred(i, j);
            const double d = y_true(i, j) - m;
            num += r * r;
            den += d * d;
        }
    if (den == 0.0) throw Error("rse: constant truth");
    return std::sqrt(num) / std::sqrt(den);
}

double corr_metric(const Eigen::MatrixXd& y_true, const Eigen::MatrixXd& y_pred) {
    if (y_true.rows() != y_pred.rows() || y_true.cols() != y_pred.cols())
        throw Error("corr_metric: shape mismatch");
    double total = 0.0;
    int used = 0;
    for (Eigen::Index j = 0; j < y_true.cols(); ++j) {
        const Eigen::VectorXd t = y_true.col(j);
        const Eigen::VectorXd p = y_pred.col(j);
        const Eigen::VectorXd tc = t.array() - t.mean();
        const Eigen::VectorXd pc = p.array() - p.mean();
        const double nt = tc.norm(), np = pc.norm();
        if (nt == 0.0 || np == 0.0) {
            log_warn("corr_metric: series " + std::to_string(j) +
                     " is constant, excluded");
            continue;
        }
        total += tc.dot(pc) / (nt * np);
        ++used;
    }
    if (used == 0) throw Error("corr_metric: all series constant");
    return total / used;
}

TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw Error("paired_t_test: length mismatch");
    const int n = static_cast<int>(a.size());
    if (n < 2) throw Error("paired_t_test: need at least 2 pairs");
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += a[i] - b[i];
    mean /= n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = a[i] - b[i] - mean;
        var += d * d;
    }
    var /= (n - 1);
    if (var == 0.0) throw Error("paired_t_test: zero-variance differences");

    TTestResult res;
    res.df = n - 1;
    res.t = mean / std::sqrt(var / n);
    // two-sided p = I_x(df/2, 1/2) with x = df / (df + t^2)
    const double x = res.df / (res.df + res.t * res.t);
    res.p = incomplete_beta(res.df / 2.0, 0.5, x);
    return res;
}

double incomplete_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0) throw Error("incomplete_beta: x out of range");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    // modified Lentz continued fraction
    auto betacf = [](double a, double b, double x) {
        const int max_iter = 300;
        const double eps = 3e-16, fpmin = 1e-300;
        const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
        double c = 1.0, d = 1.0 - qab * x / qap;
        if (std::fabs(d) < fpmin) d = fpmin;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= max_iter; ++m) {
            const int m2 = 2 * m;
            double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
            d = 1.0 + aa * d;
            if (std::fabs(d) < fpmin) d = fpmin;
            c = 1.0 + aa / c;
            if (std::fabs(c) < fpmin) c = fpmin;
            d = 1.0 / d;
            h *= d * c;
            aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
            d = 1.0 + aa * d;
            if (std::fabs(d) < fpmin) d = fpmin;
            c = 1.0 + aa / c;
            if (std::fabs(c) < fpmin) c = fpmin;
            d = 1.0 / d;
            const double del = d * c;
            h *= del;
            if (std::fabs(del - 1.0) < eps) break;
        }
        return h;
    };

    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, int df) {
    if (df < 1) throw Error("student_t_cdf: df must be >= 1");
    const double x = df / (df + t * t);
    const double half_tail = 0.5 * incomplete_beta(df / 2.0, 0.5, x);
    return t >= 0.0 ? 1.0 - half_tail : half_tail;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw Error("quantile: empty sample");
    if (q < 0.0 || q > 1.0) throw Error("quantile: q out of [0,1]");
    std::sort(values.begin(), values.end());
    const double h = q * (static_cast<double>(values.size()) - 1.0);
    const size_t lo = static_cast<size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

const char* significance_marker(double p) {
    if (p < 0.00001) return "***";
    if (p < 0.001) return "**";
    if (p < 0.01) return "*";
    return "";
}

} // namespace hnn
