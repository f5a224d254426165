#include "streamnet/inference.hpp"

#include <cmath>
#include <sstream>

#include "streamnet/errors.hpp"

namespace streamnet {

namespace {

// Symmetric-PD solve with a conditioning guard; used for both normal
// equations and the covariance-route coefficients. The guard is an exact
// eigenvalue ratio because LDLT zero-pivot fallbacks would otherwise turn a
// singular system into a silent least-squares answer.
Eigen::VectorXd guarded_spd_solve(const Eigen::MatrixXd& g, const Eigen::VectorXd& rhs,
                                  const std::string& what) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    if (eig.info() != Eigen::Success) {
        throw ComputationError(what + ": eigendecomposition failed");
    }
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0) || !(lo / hi >= 1e-12)) {
        throw ComputationError(what + ": matrix is singular or near-singular");
    }
    const Eigen::VectorXd x = g.ldlt().solve(rhs);
    if (!x.allFinite()) throw ComputationError(what + ": solution is not finite");
    return x;
}

} // namespace

CoefficientMatrix coeffs_from_precision(const PrecisionMatrix& theta) {
    const Eigen::MatrixXd& t = theta.theta;
    if (t.rows() != t.cols()) throw ValidationError("precision matrix must be square");
    const Eigen::Index p = t.rows();
    CoefficientMatrix out;
    out.a = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        if (!(t(j, j) > 0)) {
            throw ValidationError("precision diagonal must be positive (entry " +
                                  std::to_string(j) + ")");
        }
        for (Eigen::Index i = 0; i < p; ++i) {
            if (i != j) out.a(i, j) = -t(i, j) / t(j, j);
        }
    }
    return out;
}

Eigen::VectorXd coeffs_from_covariance(const CovarianceMatrix& s, int target) {
    const Eigen::MatrixXd& m = s.s;
    if (m.rows() != m.cols()) throw ValidationError("covariance matrix must be square");
    const Eigen::Index p = m.rows();
    if (target < 0 || target >= p) {
        throw ValidationError("target index " + std::to_string(target) + " out of range");
    }
    if (p < 2) throw ValidationError("need at least 2 gauges");

    Eigen::MatrixXd s11(p - 1, p - 1);
    Eigen::VectorXd s12(p - 1);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < p; ++i) {
        if (i == target) continue;
        s12(r) = m(i, target);
        Eigen::Index c = 0;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (j == target) continue;
            s11(r, c++) = m(i, j);
        }
        ++r;
    }
    return guarded_spd_solve(s11, s12, "covariance-route coefficients");
}

Eigen::MatrixXd predict_z(const Eigen::MatrixXd& z, const CoefficientMatrix& a) {
    if (z.cols() != a.a.rows()) {
        throw ValidationError("shape mismatch: data has " + std::to_string(z.cols()) +
                              " columns, coefficients expect " + std::to_string(a.a.rows()));
    }
    return z * a.a;
}

OlsModel fit_ols_donors(const LogPanel& y_train, const Graph& g, int target) {
    const Eigen::Index p = y_train.cols();
    if (g.vertex_count() != static_cast<int>(p)) {
        throw ValidationError("graph has " + std::to_string(g.vertex_count()) +
                              " vertices, panel has " + std::to_string(p));
    }
    if (target < 0 || target >= p) {
        throw ValidationError("target index " + std::to_string(target) + " out of range");
    }
    const std::vector<int> donors = g.neighbors(target);
    const std::string target_id = y_train.gauge_ids[static_cast<std::size_t>(target)];
    if (donors.empty()) {
        throw ValidationError("gauge '" + target_id + "' is isolated: no donors to fit");
    }
    const Eigen::Index n = y_train.rows();
    const auto m = static_cast<Eigen::Index>(donors.size());
    if (n <= m + 1) {
        throw ValidationError("need more than " + std::to_string(m + 1) +
                              " training rows for " + std::to_string(m) + " donors");
    }

    Eigen::MatrixXd x(n, m + 1);
    x.col(0).setOnes();
    for (Eigen::Index c = 0; c < m; ++c) {
        x.col(c + 1) = y_train.values.col(donors[static_cast<std::size_t>(c)]);
    }
    const Eigen::VectorXd y = y_train.values.col(target);

    Eigen::VectorXd beta;
    try {
        beta = guarded_spd_solve(x.transpose() * x, x.transpose() * y, "OLS normal equations");
    } catch (const ComputationError&) {
        std::ostringstream msg;
        msg << "rank-deficient design for target '" << target_id << "'; collinear donors:";
        for (const int d : donors) {
            msg << " '" << y_train.gauge_ids[static_cast<std::size_t>(d)] << "'";
        }
        throw ComputationError(msg.str());
    }

    OlsModel model;
    model.target = target_id;
    for (const int d : donors) {
        model.donors.push_back(y_train.gauge_ids[static_cast<std::size_t>(d)]);
    }
    model.intercept = beta(0);
    model.slopes = beta.tail(m);
    const double ss_res = (y - x * beta).squaredNorm();
    model.residual_variance = ss_res / static_cast<double>(n - m - 1);
    return model;
}

LogPanel predict_ols(const std::vector<OlsModel>& models, const LogPanel& y) {
    LogPanel out;
    out.dates = y.dates;
    out.values.resize(y.rows(), static_cast<Eigen::Index>(models.size()));
    Eigen::Index c = 0;
    for (const auto& model : models) {
        Eigen::VectorXd col = Eigen::VectorXd::Constant(y.rows(), model.intercept);
        if (model.slopes.size() != static_cast<Eigen::Index>(model.donors.size())) {
            throw ValidationError("model for '" + model.target + "' has " +
                                  std::to_string(model.slopes.size()) + " slopes for " +
                                  std::to_string(model.donors.size()) + " donors");
        }
        for (std::size_t d = 0; d < model.donors.size(); ++d) {
            const int dc = y.column_of(model.donors[d]); // throws if donor missing
            col += model.slopes(static_cast<Eigen::Index>(d)) * y.values.col(dc);
        }
        out.gauge_ids.push_back(model.target);
        out.values.col(c++) = col;
    }
    return out;
}

// -- Transfer baselines -----------------------------------------------------

TransferModel TransferModel::drainage_area_ratio(double area_target, double area_donor) {
    if (!(area_target > 0) || !(area_donor > 0)) {
        throw ValidationError("drainage areas must be positive");
    }
    TransferModel m;
    m.kind = TransferKind::dar;
    m.area_target = area_target;
    m.area_donor = area_donor;
    return m;
}

TransferModel TransferModel::scale_mean(double mean_target, double mean_donor) {
    if (mean_donor == 0) throw ValidationError("donor mean must be nonzero");
    TransferModel m;
    m.kind = TransferKind::sm;
    m.mean_target = mean_target;
    m.mean_donor = mean_donor;
    return m;
}

TransferModel TransferModel::scale_mean_std(double mean_target, double std_target,
                                            double mean_donor, double std_donor) {
    if (!(std_donor > 0)) throw ValidationError("donor standard deviation must be positive");
    if (!(std_target > 0)) throw ValidationError("target standard deviation must be positive");
    TransferModel m;
    m.kind = TransferKind::sms;
    m.mean_target = mean_target;
    m.std_target = std_target;
    m.mean_donor = mean_donor;
    m.std_donor = std_donor;
    return m;
}

TransferModel TransferModel::regression(double intercept, double slope) {
    TransferModel m;
    m.kind = TransferKind::reg;
    m.intercept = intercept;
    m.slope = slope;
    return m;
}

TransferResult transfer_baseline(const TransferModel& model, const Eigen::VectorXd& q_donor) {
    TransferResult out;
    switch (model.kind) {
    case TransferKind::dar:
        out.q_hat = (model.area_target / model.area_donor) * q_donor;
        return out;
    case TransferKind::sm:
        out.q_hat = (model.mean_target / model.mean_donor) * q_donor;
        return out;
    case TransferKind::sms:
        out.q_hat = ((model.std_target / model.std_donor) *
                         (q_donor.array() - model.mean_donor) +
                     model.mean_target)
                        .matrix();
        break;
    case TransferKind::reg:
        out.q_hat = (model.intercept + model.slope * q_donor.array()).matrix();
        break;
    }
    for (Eigen::Index i = 0; i < out.q_hat.size(); ++i) {
        if (out.q_hat(i) < 0) {
            out.q_hat(i) = 0.0;
            ++out.clamped;
        }
    }
    return out;
}

} // namespace streamnet
