#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "streamnet/date.hpp"

namespace streamnet {

// Daily streamflow table: one row per day, one column per gauge, m^3/s.
struct StreamflowPanel {
    std::vector<Date> dates;            // strictly increasing
    std::vector<std::string> gauge_ids; // unique, size p
    Eigen::MatrixXd values;             // n x p, all >= 0

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }

    // Index of a gauge id; throws ValidationError if unknown.
    int column_of(const std::string& id) const;

    StreamflowPanel select_rows(const std::vector<Eigen::Index>& idx) const;
};

struct GaugeMetadata {
    std::string nwsli;
    std::string usgs_staid;
    double latitude = std::numeric_limits<double>::quiet_NaN();
    double longitude = std::numeric_limits<double>::quiet_NaN();
    double drainage_area_km2 = 0.0;

    bool has_coordinates() const;
};

// Elementwise log(Q + 1); zero flow maps to zero and the transform is
// exactly invertible.
struct LogPanel {
    std::vector<Date> dates;
    std::vector<std::string> gauge_ids;
    Eigen::MatrixXd values;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
    int column_of(const std::string& id) const;
    LogPanel select_rows(const std::vector<Eigen::Index>& idx) const;
};

struct ColumnStats {
    double mean = 0.0;
    double stddev = 1.0; // sample standard deviation, n-1 denominator
};

struct StandardizedPanel {
    std::vector<Date> dates;
    std::vector<std::string> gauge_ids;
    Eigen::MatrixXd values;
    std::vector<ColumnStats> stats; // per-column stats used to standardize

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
};

// Row-index split of one panel. Test rows are the chronologically latest
// ceil(n/3); the remaining rows are randomly halved into train/validation.
struct DataSplits {
    std::vector<Eigen::Index> train;
    std::vector<Eigen::Index> val;
    std::vector<Eigen::Index> test;
    std::uint64_t seed = 0;
};

struct CovarianceMatrix {
    Eigen::MatrixXd s; // p x p symmetric PSD
};

struct PanelLoadResult {
    StreamflowPanel panel;
    std::size_t dropped_rows = 0; // rows removed because a selected cell was missing
};

struct BackTransformResult {
    StreamflowPanel panel;
    std::size_t clamped = 0; // negative predictions clamped to zero
};

// -- Ingestion ----------------------------------------------------------

// CSV format: header "date,<id1>,...,<idp>"; ISO dates; empty cell = missing.
// Rows with a missing value among the selected gauges are dropped (counted in
// the result). gauge_subset restricts and orders the columns.
PanelLoadResult load_panel(const std::string& path,
                           const std::optional<std::vector<std::string>>& gauge_subset = std::nullopt);

void write_panel_csv(const std::string& path, const StreamflowPanel& panel);

std::vector<GaugeMetadata> read_metadata_csv(const std::string& path);
void write_metadata_csv(const std::string& path, const std::vector<GaugeMetadata>& meta);

// -- Transforms ---------------------------------------------------------

LogPanel log_transform(const StreamflowPanel& panel);

// Per-column Z-score with sample (n-1) standard deviation; rejects constant
// columns naming the offending gauge.
StandardizedPanel standardize(const LogPanel& y);

// Y = Z * sigma + mu per column.
Eigen::MatrixXd inverse_standardize(const Eigen::MatrixXd& z_hat,
                                    const std::vector<ColumnStats>& stats);

// Q = exp(Y) - 1 elementwise, clamped at zero.
Eigen::MatrixXd back_transform_values(const Eigen::MatrixXd& y_hat,
                                      std::size_t* clamped = nullptr);
BackTransformResult back_transform(const LogPanel& y_hat);

// -- Splitting & covariance ---------------------------------------------

DataSplits split(const StreamflowPanel& panel, std::uint64_t seed);

// S = Z^T Z / (n - 1); assumes columns are centered (true after standardize).
CovarianceMatrix empirical_covariance(const Eigen::MatrixXd& z);
CovarianceMatrix empirical_covariance(const StandardizedPanel& z);

} // namespace streamnet
