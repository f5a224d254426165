#pragma once

#include <Eigen/Dense>
#include <vector>

namespace streamnet {

// Squared Pearson correlation. Throws ComputationError when either series
// has zero variance (the value is undefined there, not zero).
double r_squared(const Eigen::VectorXd& obs, const Eigen::VectorXd& est);

// Nash-Sutcliffe efficiency: 1 - sum(obs-est)^2 / sum(obs-mean(obs))^2.
double nse(const Eigen::VectorXd& obs, const Eigen::VectorXd& est);

// Sum of NSE values above gamma over an ordered removal ranking.
double graph_score(const std::vector<double>& nse_by_rank, double gamma);

// Thresholded goodness-of-fit over a set of target gauges:
//   score_j = R2_j if R2_j > gamma else 0;  error = (q - sum score) / q.
// Gauges whose R2 is undefined (zero variance on either side) are recorded
// in `rejected` and contribute score 0.
struct GaugeScoreReport {
    std::vector<int> targets;          // scored column indices, size q
    std::vector<double> per_gauge_r2;  // NaN where rejected
    std::vector<double> per_gauge_score;
    std::vector<int> rejected;
    double total_score = 0.0;
    double error = 1.0;
    double gamma = 0.7;
};

GaugeScoreReport score_and_error(const Eigen::MatrixXd& obs, const Eigen::MatrixXd& est,
                                 double gamma, const std::vector<int>& targets);

} // namespace streamnet
