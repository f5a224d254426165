#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "streamnet/panel.hpp"
#include "streamnet/rng.hpp"

namespace streamnet::testing {

// Box-Muller on top of the portable engine, so fixtures reproduce everywhere.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : rng_(seed) {}

    double uniform01() { return rng_.uniform01(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform01(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = rng_.uniform01();
        while (u1 <= 0.0) u1 = rng_.uniform01();
        const double u2 = rng_.uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t below(std::uint64_t bound) { return rng_.below(bound); }

private:
    PortableRng rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline Eigen::MatrixXd random_matrix(int rows, int cols, TestRng& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
    }
    return m;
}

// Well-conditioned SPD matrix with unit diagonal (correlation-like), the
// shape empirical covariances of standardized data take.
inline Eigen::MatrixXd random_spd(int p, TestRng& rng, double ridge = 0.5) {
    const Eigen::MatrixXd a = random_matrix(p, p, rng);
    Eigen::MatrixXd s = (a * a.transpose()) / static_cast<double>(p);
    s += ridge * Eigen::MatrixXd::Identity(p, p);
    Eigen::VectorXd d = s.diagonal().array().rsqrt();
    s = (d.asDiagonal() * s * d.asDiagonal()).eval();
    return ((s + s.transpose()) / 2.0).eval();
}

// Tridiagonal precision matrix of a chain model; |offdiag| < 0.5 keeps it PD.
inline Eigen::MatrixXd chain_precision(int p, double offdiag = 0.4) {
    Eigen::MatrixXd theta = Eigen::MatrixXd::Identity(p, p);
    for (int i = 0; i + 1 < p; ++i) {
        theta(i, i + 1) = offdiag;
        theta(i + 1, i) = offdiag;
    }
    return theta;
}

// Draw n rows from N(0, theta^-1).
inline Eigen::MatrixXd sample_gaussian(const Eigen::MatrixXd& theta, int n, TestRng& rng) {
    const int p = static_cast<int>(theta.rows());
    const Eigen::MatrixXd sigma =
        theta.llt().solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(sigma).matrixL();
    Eigen::MatrixXd z(n, p);
    Eigen::VectorXd raw(p);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < p; ++c) raw(c) = rng.normal();
        z.row(r) = (l * raw).transpose();
    }
    return z;
}

// Streamflow panel whose log(Q + 1) values are Gaussian with the given
// precision structure: Y = mu + sd * z, Q = exp(Y) - 1 (>= 0 for mu >> sd).
inline StreamflowPanel make_gaussian_panel(const Eigen::MatrixXd& theta, int n,
                                           std::uint64_t seed, double mu = 3.0,
                                           double sd = 0.5) {
    TestRng rng(seed);
    const Eigen::MatrixXd z = sample_gaussian(theta, n, rng);
    StreamflowPanel panel;
    const int p = static_cast<int>(theta.rows());
    panel.values.resize(n, p);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < p; ++c) {
            panel.values(r, c) = std::max(0.0, std::expm1(mu + sd * z(r, c)));
        }
        panel.dates.push_back(Date::from_ymd(1960, 1, 1) + r);
    }
    for (int c = 0; c < p; ++c) panel.gauge_ids.push_back("G" + std::to_string(c));
    return panel;
}

} // namespace streamnet::testing
