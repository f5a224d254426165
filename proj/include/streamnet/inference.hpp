#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "streamnet/glasso.hpp"
#include "streamnet/graphs.hpp"
#include "streamnet/panel.hpp"

namespace streamnet {

// p x p regression-coefficient matrix with zero diagonal; a(i, j) is the
// weight of donor i when predicting target j, so Z_hat = Z * A.
struct CoefficientMatrix {
    Eigen::MatrixXd a;
};

// Column j of A from the precision matrix: a_ij = -theta_ij / theta_jj for
// i != j. Entries off a constrained pattern stay exactly zero.
CoefficientMatrix coeffs_from_precision(const PrecisionMatrix& theta);

// Donor weights for one target from the covariance route: solve
// S11 * alpha = s12 with row/column `target` removed. Donor order is
// ascending index with the target skipped.
Eigen::VectorXd coeffs_from_covariance(const CovarianceMatrix& s, int target);

Eigen::MatrixXd predict_z(const Eigen::MatrixXd& z, const CoefficientMatrix& a);

// Per-target OLS in log space: intercept plus one slope per donor.
struct OlsModel {
    std::string target;
    std::vector<std::string> donors; // ascending gauge index
    double intercept = 0.0;
    Eigen::VectorXd slopes;          // one per donor
    double residual_variance = 0.0;
};

// Least-squares fit of the target column on its graph donors (plus an
// intercept) over training rows.
OlsModel fit_ols_donors(const LogPanel& y_train, const Graph& g, int target);

// Apply fitted models rowwise to the donor columns of y; the output has one
// column per model, in model order.
LogPanel predict_ols(const std::vector<OlsModel>& models, const LogPanel& y);

// -- Single-donor transfer baselines --------------------------------------

enum class TransferKind { dar, sm, sms, reg };

struct TransferModel {
    TransferKind kind = TransferKind::dar;
    double area_target = 0.0, area_donor = 0.0; // dar
    double mean_target = 0.0, mean_donor = 0.0; // sm, sms
    double std_target = 0.0, std_donor = 0.0;   // sms
    double intercept = 0.0, slope = 0.0;        // reg

    static TransferModel drainage_area_ratio(double area_target, double area_donor);
    static TransferModel scale_mean(double mean_target, double mean_donor);
    static TransferModel scale_mean_std(double mean_target, double std_target,
                                        double mean_donor, double std_donor);
    static TransferModel regression(double intercept, double slope);
};

struct TransferResult {
    Eigen::VectorXd q_hat;
    std::size_t clamped = 0; // negative estimates clamped to zero (sms, reg)
};

TransferResult transfer_baseline(const TransferModel& model, const Eigen::VectorXd& q_donor);

} // namespace streamnet
