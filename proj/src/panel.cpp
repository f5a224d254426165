#include "streamnet/panel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "streamnet/errors.hpp"
#include "streamnet/rng.hpp"

namespace streamnet {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& text, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw IoError("unparseable numeric cell '" + text + "' " + context);
    }
}

template <typename Panel>
int column_of_impl(const Panel& p, const std::string& id) {
    for (std::size_t i = 0; i < p.gauge_ids.size(); ++i) {
        if (p.gauge_ids[i] == id) return static_cast<int>(i);
    }
    throw ValidationError("unknown gauge id '" + id + "'");
}

template <typename Panel>
Panel select_rows_impl(const Panel& p, const std::vector<Eigen::Index>& idx) {
    Panel out;
    out.gauge_ids = p.gauge_ids;
    out.dates.reserve(idx.size());
    out.values.resize(static_cast<Eigen::Index>(idx.size()), p.values.cols());
    Eigen::Index r = 0;
    for (const Eigen::Index i : idx) {
        if (i < 0 || i >= p.values.rows()) throw ValidationError("row index out of range");
        out.dates.push_back(p.dates[static_cast<std::size_t>(i)]);
        out.values.row(r++) = p.values.row(i);
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

int StreamflowPanel::column_of(const std::string& id) const { return column_of_impl(*this, id); }
int LogPanel::column_of(const std::string& id) const { return column_of_impl(*this, id); }

StreamflowPanel StreamflowPanel::select_rows(const std::vector<Eigen::Index>& idx) const {
    return select_rows_impl(*this, idx);
}
LogPanel LogPanel::select_rows(const std::vector<Eigen::Index>& idx) const {
    return select_rows_impl(*this, idx);
}

bool GaugeMetadata::has_coordinates() const {
    return std::isfinite(latitude) && std::isfinite(longitude);
}

// -- Ingestion ------------------------------------------------------------

PanelLoadResult load_panel(const std::string& path,
                           const std::optional<std::vector<std::string>>& gauge_subset) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open panel file '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw IoError("empty panel file '" + path + "'");
    auto header = split_csv_line(line);
    for (auto& h : header) h = strip(h);
    if (header.size() < 2 || header[0] != "date") {
        throw IoError("malformed panel header in '" + path + "': expected 'date,<id>,...'");
    }

    std::vector<std::string> file_ids(header.begin() + 1, header.end());
    for (std::size_t i = 0; i < file_ids.size(); ++i) {
        for (std::size_t j = i + 1; j < file_ids.size(); ++j) {
            if (file_ids[i] == file_ids[j]) {
                throw IoError("duplicate gauge column '" + file_ids[i] + "' in '" + path + "'");
            }
        }
    }

    std::vector<int> take; // file column per selected gauge
    std::vector<std::string> ids;
    if (gauge_subset) {
        for (const auto& want : *gauge_subset) {
            auto it = std::find(file_ids.begin(), file_ids.end(), want);
            if (it == file_ids.end()) {
                throw ValidationError("gauge id '" + want + "' not present in '" + path + "'");
            }
            take.push_back(static_cast<int>(it - file_ids.begin()));
            ids.push_back(want);
        }
    } else {
        ids = file_ids;
        take.resize(ids.size());
        for (std::size_t i = 0; i < take.size(); ++i) take[i] = static_cast<int>(i);
    }
    if (ids.size() < 2) throw ValidationError("panel needs at least 2 gauges, got " +
                                              std::to_string(ids.size()));

    std::vector<Date> dates;
    std::vector<double> flat;
    std::size_t dropped = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw IoError("row " + std::to_string(line_no) + " in '" + path + "' has " +
                          std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(header.size()));
        }
        const Date d = Date::parse(strip(cells[0]));
        if (!dates.empty()) {
            if (d == dates.back()) {
                throw ValidationError("duplicate timestamp " + d.to_string() + " in '" + path + "'");
            }
            if (d < dates.back()) {
                throw ValidationError("timestamps not increasing at " + d.to_string() +
                                      " in '" + path + "'");
            }
        }
        bool missing = false;
        std::vector<double> row(ids.size());
        for (std::size_t c = 0; c < take.size(); ++c) {
            const std::string cell = strip(cells[static_cast<std::size_t>(take[c]) + 1]);
            if (cell.empty()) {
                missing = true;
                break;
            }
            const double v = parse_cell(cell, "at row " + std::to_string(line_no) +
                                                  " of '" + path + "'");
            if (v < 0) {
                throw ValidationError("negative flow " + format_double(v) + " for gauge '" +
                                      ids[c] + "' at " + d.to_string());
            }
            row[c] = v;
        }
        if (missing) {
            ++dropped;
            continue;
        }
        dates.push_back(d);
        flat.insert(flat.end(), row.begin(), row.end());
    }

    if (dates.size() < 2) {
        throw ValidationError("panel '" + path + "' has fewer than 2 usable rows (" +
                              std::to_string(dates.size()) + " kept, " +
                              std::to_string(dropped) + " dropped)");
    }

    PanelLoadResult result;
    result.dropped_rows = dropped;
    result.panel.dates = std::move(dates);
    result.panel.gauge_ids = std::move(ids);
    const auto n = static_cast<Eigen::Index>(result.panel.dates.size());
    const auto p = static_cast<Eigen::Index>(result.panel.gauge_ids.size());
    result.panel.values.resize(n, p);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < p; ++c) {
            result.panel.values(r, c) = flat[static_cast<std::size_t>(r * p + c)];
        }
    }
    return result;
}

void write_panel_csv(const std::string& path, const StreamflowPanel& panel) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "date";
    for (const auto& id : panel.gauge_ids) out << ',' << id;
    out << '\n';
    for (Eigen::Index r = 0; r < panel.rows(); ++r) {
        out << panel.dates[static_cast<std::size_t>(r)].to_string();
        for (Eigen::Index c = 0; c < panel.cols(); ++c) {
            out << ',' << format_double(panel.values(r, c));
        }
        out << '\n';
    }
}

std::vector<GaugeMetadata> read_metadata_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open metadata file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty metadata file '" + path + "'");
    auto header = split_csv_line(line);
    for (auto& h : header) h = strip(h);
    const std::vector<std::string> expected = {"nwsli", "usgs_staid", "lat", "lon", "area_km2"};
    if (header != expected) {
        throw IoError("malformed metadata header in '" + path +
                      "': expected nwsli,usgs_staid,lat,lon,area_km2");
    }
    std::vector<GaugeMetadata> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 5) {
            throw IoError("metadata row " + std::to_string(line_no) + " has " +
                          std::to_string(cells.size()) + " cells, expected 5");
        }
        GaugeMetadata m;
        m.nwsli = strip(cells[0]);
        m.usgs_staid = strip(cells[1]);
        const std::string lat = strip(cells[2]), lon = strip(cells[3]);
        const std::string where = "at row " + std::to_string(line_no) + " of '" + path + "'";
        if (!lat.empty()) m.latitude = parse_cell(lat, where);
        if (!lon.empty()) m.longitude = parse_cell(lon, where);
        m.drainage_area_km2 = parse_cell(strip(cells[4]), where);
        if (std::isfinite(m.latitude) && (m.latitude < -90 || m.latitude > 90)) {
            throw ValidationError("latitude out of range for gauge '" + m.nwsli + "'");
        }
        if (std::isfinite(m.longitude) && (m.longitude < -180 || m.longitude > 180)) {
            throw ValidationError("longitude out of range for gauge '" + m.nwsli + "'");
        }
        if (!(m.drainage_area_km2 > 0)) {
            throw ValidationError("drainage area must be positive for gauge '" + m.nwsli + "'");
        }
        out.push_back(std::move(m));
    }
    return out;
}

void write_metadata_csv(const std::string& path, const std::vector<GaugeMetadata>& meta) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "nwsli,usgs_staid,lat,lon,area_km2\n";
    for (const auto& m : meta) {
        out << m.nwsli << ',' << m.usgs_staid << ',';
        if (std::isfinite(m.latitude)) out << format_double(m.latitude);
        out << ',';
        if (std::isfinite(m.longitude)) out << format_double(m.longitude);
        out << ',' << format_double(m.drainage_area_km2) << '\n';
    }
}

// -- Transforms -----------------------------------------------------------

LogPanel log_transform(const StreamflowPanel& panel) {
    if ((panel.values.array() < 0).any()) {
        throw ValidationError("log transform requires nonnegative flows");
    }
    LogPanel out;
    out.dates = panel.dates;
    out.gauge_ids = panel.gauge_ids;
    out.values = (panel.values.array() + 1.0).log().matrix();
    return out;
}

StandardizedPanel standardize(const LogPanel& y) {
    const Eigen::Index n = y.rows(), p = y.cols();
    if (n < 2) throw ValidationError("standardize needs at least 2 rows");
    StandardizedPanel out;
    out.dates = y.dates;
    out.gauge_ids = y.gauge_ids;
    out.values.resize(n, p);
    out.stats.resize(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) {
        const double mean = y.values.col(j).mean();
        const double ss = (y.values.col(j).array() - mean).square().sum();
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        if (!(sd > 0)) {
            const std::string id = y.gauge_ids.empty() ? std::to_string(j)
                                                       : y.gauge_ids[static_cast<std::size_t>(j)];
            throw ValidationError("constant column: gauge '" + id + "' has zero variance");
        }
        out.stats[static_cast<std::size_t>(j)] = {mean, sd};
        out.values.col(j) = (y.values.col(j).array() - mean) / sd;
    }
    return out;
}

Eigen::MatrixXd inverse_standardize(const Eigen::MatrixXd& z_hat,
                                    const std::vector<ColumnStats>& stats) {
    if (static_cast<std::size_t>(z_hat.cols()) != stats.size()) {
        throw ValidationError("inverse_standardize: " + std::to_string(z_hat.cols()) +
                              " columns vs " + std::to_string(stats.size()) + " stats");
    }
    Eigen::MatrixXd y(z_hat.rows(), z_hat.cols());
    for (Eigen::Index j = 0; j < z_hat.cols(); ++j) {
        const auto& st = stats[static_cast<std::size_t>(j)];
        y.col(j) = z_hat.col(j).array() * st.stddev + st.mean;
    }
    return y;
}

Eigen::MatrixXd back_transform_values(const Eigen::MatrixXd& y_hat, std::size_t* clamped) {
    Eigen::MatrixXd q(y_hat.rows(), y_hat.cols());
    std::size_t count = 0;
    for (Eigen::Index c = 0; c < y_hat.cols(); ++c) {
        for (Eigen::Index r = 0; r < y_hat.rows(); ++r) {
            const double v = std::expm1(y_hat(r, c));
            if (std::isinf(v)) {
                throw ComputationError("back transform overflow at value " +
                                       format_double(y_hat(r, c)));
            }
            if (v < 0) {
                q(r, c) = 0.0;
                ++count;
            } else {
                q(r, c) = v;
            }
        }
    }
    if (clamped) *clamped = count;
    return q;
}

BackTransformResult back_transform(const LogPanel& y_hat) {
    BackTransformResult out;
    out.panel.dates = y_hat.dates;
    out.panel.gauge_ids = y_hat.gauge_ids;
    out.panel.values = back_transform_values(y_hat.values, &out.clamped);
    return out;
}

// -- Splitting & covariance -----------------------------------------------

DataSplits split(const StreamflowPanel& panel, std::uint64_t seed) {
    const Eigen::Index n = panel.rows();
    if (n < 3) throw ValidationError("split needs at least 3 rows, got " + std::to_string(n));

    const Eigen::Index n_test = (n + 2) / 3; // ceil(n/3), chronologically latest
    const Eigen::Index n_rest = n - n_test;

    DataSplits s;
    s.seed = seed;
    s.test.reserve(static_cast<std::size_t>(n_test));
    for (Eigen::Index i = n_rest; i < n; ++i) s.test.push_back(i);

    std::vector<Eigen::Index> rest(static_cast<std::size_t>(n_rest));
    for (Eigen::Index i = 0; i < n_rest; ++i) rest[static_cast<std::size_t>(i)] = i;
    PortableRng rng(seed);
    rng.shuffle(rest);

    const auto n_train = static_cast<std::size_t>((n_rest + 1) / 2);
    s.train.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.val.assign(rest.begin() + static_cast<std::ptrdiff_t>(n_train), rest.end());
    std::sort(s.train.begin(), s.train.end());
    std::sort(s.val.begin(), s.val.end());
    return s;
}

CovarianceMatrix empirical_covariance(const Eigen::MatrixXd& z) {
    const Eigen::Index n = z.rows();
    if (n < 2) throw ValidationError("covariance needs at least 2 rows");
    CovarianceMatrix out;
    out.s = (z.transpose() * z) / static_cast<double>(n - 1);
    out.s = ((out.s + out.s.transpose()) / 2.0).eval(); // exact symmetry
    return out;
}

CovarianceMatrix empirical_covariance(const StandardizedPanel& z) {
    return empirical_covariance(z.values);
}

} // namespace streamnet
