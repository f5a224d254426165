#pragma once

#include <map>
#include <string>
#include <vector>

#include "streamnet/date.hpp"
#include "streamnet/panel.hpp"

namespace streamnet {

// Cubic feet per second to cubic metres per second.
inline constexpr double kCfsToCms = 0.0283168;

struct FetchConfig {
    std::vector<GaugeMetadata> sites; // usgs_staid required; nwsli/area carried through
    Date start;
    Date end;
    std::string endpoint = "https://waterservices.usgs.gov";
    int timeout_seconds = 60;
    int sites_per_request = 10;
};

struct SiteSeries {
    std::string staid;
    double latitude = std::numeric_limits<double>::quiet_NaN();
    double longitude = std::numeric_limits<double>::quiet_NaN();
    std::map<Date, double> flows_cms; // converted to m^3/s, missing days absent
};

struct FetchResult {
    std::vector<SiteSeries> series;      // one per kept site, gaps preserved
    std::vector<GaugeMetadata> metadata; // same order, coordinates filled in
    std::vector<std::string> skipped;    // sites without data in range

    std::vector<std::string> gauge_ids() const; // NWSLI, or STAID when absent
};

// Request path for the daily-values service (parameter 00060, daily mean).
std::string dv_request_path(const std::vector<std::string>& staids, Date start, Date end);

// Parse the daily-values JSON response into per-site series.
std::vector<SiteSeries> parse_dv_response(const std::string& json_text);

// Fetch daily mean discharge for all configured sites and assemble a panel.
// Cells with no reported value stay empty when written to CSV.
FetchResult fetch_daily_flows(const FetchConfig& config);

// Write the fetched panel preserving gaps as empty cells.
void write_panel_csv_with_gaps(const std::string& path,
                               const std::vector<std::string>& gauge_ids,
                               const std::vector<SiteSeries>& series,
                               Date start, Date end);

} // namespace streamnet
