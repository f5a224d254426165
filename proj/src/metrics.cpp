#include "streamnet/metrics.hpp"

#include <cmath>
#include <limits>

#include "streamnet/errors.hpp"

namespace streamnet {

namespace {

void check_pair(const Eigen::VectorXd& obs, const Eigen::VectorXd& est) {
    if (obs.size() != est.size()) {
        throw ValidationError("series length mismatch: " + std::to_string(obs.size()) +
                              " vs " + std::to_string(est.size()));
    }
    if (obs.size() < 2) throw ValidationError("series need at least 2 values");
}

double centered_ss(const Eigen::VectorXd& v) {
    return (v.array() - v.mean()).square().sum();
}

} // namespace

double r_squared(const Eigen::VectorXd& obs, const Eigen::VectorXd& est) {
    check_pair(obs, est);
    const double ss_obs = centered_ss(obs);
    const double ss_est = centered_ss(est);
    if (!(ss_obs > 0)) throw ComputationError("observed series has zero variance");
    if (!(ss_est > 0)) throw ComputationError("estimated series has zero variance");
    const double cov = ((obs.array() - obs.mean()) * (est.array() - est.mean())).sum();
    const double r2 = (cov * cov) / (ss_obs * ss_est);
    return std::min(r2, 1.0); // rounding can push an exact fit past 1
}

double nse(const Eigen::VectorXd& obs, const Eigen::VectorXd& est) {
    check_pair(obs, est);
    const double ss_obs = centered_ss(obs);
    if (!(ss_obs > 0)) throw ComputationError("observed series has zero variance");
    const double ss_res = (obs - est).squaredNorm();
    return 1.0 - ss_res / ss_obs;
}

double graph_score(const std::vector<double>& nse_by_rank, double gamma) {
    double total = 0.0;
    for (const double v : nse_by_rank) {
        if (v > gamma) total += v;
    }
    return total;
}

GaugeScoreReport score_and_error(const Eigen::MatrixXd& obs, const Eigen::MatrixXd& est,
                                 double gamma, const std::vector<int>& targets) {
    if (obs.rows() != est.rows() || obs.cols() != est.cols()) {
        throw ValidationError("observed and estimated panels are not aligned");
    }
    if (targets.empty()) throw ValidationError("target set is empty");

    GaugeScoreReport report;
    report.gamma = gamma;
    report.targets = targets;
    report.per_gauge_r2.reserve(targets.size());
    report.per_gauge_score.reserve(targets.size());
    double total = 0.0;
    for (const int j : targets) {
        if (j < 0 || j >= obs.cols()) {
            throw ValidationError("target index " + std::to_string(j) + " out of range");
        }
        double r2 = std::numeric_limits<double>::quiet_NaN();
        double score = 0.0;
        try {
            r2 = r_squared(obs.col(j), est.col(j));
            if (r2 > gamma) score = r2;
        } catch (const ComputationError&) {
            report.rejected.push_back(j); // undefined R2 scores zero
        }
        report.per_gauge_r2.push_back(r2);
        report.per_gauge_score.push_back(score);
        total += score;
    }
    report.total_score = total;
    const double q = static_cast<double>(targets.size());
    report.error = (q - total) / q;
    return report;
}

} // namespace streamnet
