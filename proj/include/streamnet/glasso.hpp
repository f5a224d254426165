#pragma once

#include <Eigen/Dense>
#include <optional>

#include "streamnet/graphs.hpp"
#include "streamnet/panel.hpp"

namespace streamnet {

struct SolverSettings {
    // Sweep-level convergence: mean absolute change of the working
    // covariance, relative to the mean off-diagonal |s_ij|. A candidate that
    // meets it is only accepted once its exact stationarity residual is
    // within 10 * tol (scaled up for covariances with entries above one).
    double tol = 1e-6;
    int max_iter = 200;            // outer sweeps
    bool penalize_diagonal = true; // L1 penalty includes the diagonal
};

struct PrecisionMatrix {
    Eigen::MatrixXd theta;   // symmetric positive definite
    double lambda_used = 0.0;
    std::optional<Graph> pattern; // present for constrained solves; theta is
                                  // exactly zero off the pattern
};

// L1-penalized Gaussian log-likelihood estimate of the precision matrix,
// solved by block coordinate descent over columns with an inner lasso
// (cyclic coordinate descent). Column order is fixed ascending, so results
// are deterministic.
PrecisionMatrix glasso_solve(const CovarianceMatrix& s, double lambda,
                             const SolverSettings& settings = {});

// Same estimator restricted to a prescribed sparsity pattern: coordinates
// without an edge in g are frozen at zero. With lambda = 0 this is the
// maximum-likelihood fit under the pattern, i.e. a per-target regression on
// the adjacent donors.
PrecisionMatrix glasso_solve_constrained(const CovarianceMatrix& s, double lambda,
                                         const Graph& g,
                                         const SolverSettings& settings = {});

// Plain inverse with a conditioning guard (reciprocal condition >= 1e-12).
PrecisionMatrix invert_covariance(const CovarianceMatrix& s);

// log det(theta) - tr(s * theta) - lambda * l1(theta). The L1 term includes
// the diagonal iff include_diagonal.
double glasso_objective(const Eigen::MatrixXd& s, const Eigen::MatrixXd& theta,
                        double lambda, bool include_diagonal = true);

} // namespace streamnet
