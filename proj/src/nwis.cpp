#include "streamnet/nwis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include <httplib.h>

#include "streamnet/errors.hpp"

namespace streamnet {

using nlohmann::json;

std::string dv_request_path(const std::vector<std::string>& staids, Date start, Date end) {
    std::string sites;
    for (const auto& s : staids) {
        if (!sites.empty()) sites += ',';
        sites += s;
    }
    return "/nwis/dv/?format=json&sites=" + sites + "&startDT=" + start.to_string() +
           "&endDT=" + end.to_string() + "&parameterCd=00060&statCd=00003";
}

std::vector<SiteSeries> parse_dv_response(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw IoError(std::string("daily-values response is not valid JSON: ") + e.what());
    }

    std::vector<SiteSeries> out;
    try {
        const auto& series_list = root.at("value").at("timeSeries");
        for (const auto& ts : series_list) {
            SiteSeries site;
            const auto& info = ts.at("sourceInfo");
            site.staid = info.at("siteCode").at(0).at("value").get<std::string>();
            if (info.contains("geoLocation")) {
                const auto& geo = info.at("geoLocation").at("geogLocation");
                site.latitude = geo.at("latitude").get<double>();
                site.longitude = geo.at("longitude").get<double>();
            }

            double no_data = -999999.0;
            const auto& variable = ts.at("variable");
            if (variable.contains("noDataValue")) {
                no_data = variable.at("noDataValue").get<double>();
            }

            for (const auto& block : ts.at("values")) {
                for (const auto& point : block.at("value")) {
                    const std::string stamp = point.at("dateTime").get<std::string>();
                    if (stamp.size() < 10) continue;
                    const Date day = Date::parse(stamp.substr(0, 10));
                    const std::string raw = point.at("value").get<std::string>();
                    double cfs = 0.0;
                    try {
                        cfs = std::stod(raw);
                    } catch (const std::exception&) {
                        continue; // non-numeric marker, treat as missing
                    }
                    if (cfs == no_data || cfs < 0) continue;
                    site.flows_cms[day] = cfs * kCfsToCms;
                }
            }
            out.push_back(std::move(site));
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("unexpected daily-values response layout: ") + e.what());
    }
    return out;
}

namespace {

std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    // httplib wants scheme://host as the client base; anything after the
    // host joins the request path.
    auto scheme_end = endpoint.find("://");
    std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    auto path_start = endpoint.find('/', host_start);
    if (path_start == std::string::npos) return {endpoint, ""};
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

} // namespace

FetchResult fetch_daily_flows(const FetchConfig& config) {
    if (config.sites.empty()) throw ValidationError("fetch: site list is empty");
    if (config.end < config.start) throw ValidationError("fetch: end date precedes start date");
    for (const auto& s : config.sites) {
        if (s.usgs_staid.empty()) {
            throw ValidationError("fetch: site '" + s.nwsli + "' has no USGS station id");
        }
    }

    const auto [base, prefix] = split_endpoint(config.endpoint);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (base.rfind("https://", 0) == 0) {
        throw IoError("fetch: built without TLS support; use an http:// endpoint");
    }
#endif
    httplib::Client client(base);
    client.set_connection_timeout(config.timeout_seconds);
    client.set_read_timeout(config.timeout_seconds);
    client.set_follow_location(true);

    std::map<std::string, SiteSeries> by_staid;
    const int batch = std::max(1, config.sites_per_request);
    for (std::size_t begin = 0; begin < config.sites.size();
         begin += static_cast<std::size_t>(batch)) {
        std::vector<std::string> staids;
        for (std::size_t i = begin;
             i < std::min(config.sites.size(), begin + static_cast<std::size_t>(batch)); ++i) {
            staids.push_back(config.sites[i].usgs_staid);
        }
        const std::string path = prefix + dv_request_path(staids, config.start, config.end);
        auto res = client.Get(path);
        if (!res) {
            throw IoError("fetch: request to " + base + path + " failed: " +
                          httplib::to_string(res.error()));
        }
        if (res->status != 200) {
            std::string body = res->body.substr(0, 300);
            throw IoError("fetch: " + base + path + " returned HTTP " +
                          std::to_string(res->status) + ": " + body);
        }
        for (auto& site : parse_dv_response(res->body)) {
            by_staid[site.staid] = std::move(site);
        }
    }

    FetchResult result;
    for (const auto& meta : config.sites) {
        auto it = by_staid.find(meta.usgs_staid);
        if (it == by_staid.end() || it->second.flows_cms.empty()) {
            std::cerr << "warning: no data for site " << meta.usgs_staid << " ("
                      << meta.nwsli << ") in range, skipping\n";
            result.skipped.push_back(meta.usgs_staid);
            continue;
        }
        GaugeMetadata enriched = meta;
        enriched.latitude = it->second.latitude;
        enriched.longitude = it->second.longitude;
        result.metadata.push_back(enriched);
        result.series.push_back(std::move(it->second));
    }
    if (result.series.empty()) throw IoError("fetch: no site returned any data");
    return result;
}

std::vector<std::string> FetchResult::gauge_ids() const {
    std::vector<std::string> ids;
    ids.reserve(metadata.size());
    for (const auto& m : metadata) ids.push_back(m.nwsli.empty() ? m.usgs_staid : m.nwsli);
    return ids;
}

void write_panel_csv_with_gaps(const std::string& path,
                               const std::vector<std::string>& gauge_ids,
                               const std::vector<SiteSeries>& series, Date start, Date end) {
    if (gauge_ids.size() != series.size()) {
        throw ValidationError("gauge id list and series list differ in length");
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "date";
    for (const auto& id : gauge_ids) out << ',' << id;
    out << '\n';
    char buf[40];
    for (Date d = start; d <= end; d = d + 1) {
        out << d.to_string();
        for (const auto& site : series) {
            out << ',';
            auto it = site.flows_cms.find(d);
            if (it != site.flows_cms.end()) {
                std::snprintf(buf, sizeof buf, "%.17g", it->second);
                out << buf;
            }
        }
        out << '\n';
    }
}

} // namespace streamnet
