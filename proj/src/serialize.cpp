#include "streamnet/serialize.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "streamnet/errors.hpp"

namespace streamnet {

using nlohmann::json;

nlohmann::json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const auto& [i, j] : g.edges()) edges.push_back(json::array({i, j}));
    return json{{"p", g.vertex_count()}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
    try {
        Graph g(j.at("p").get<int>());
        for (const auto& e : j.at("edges")) {
            g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
        }
        return g;
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed graph JSON: ") + e.what());
    }
}

nlohmann::json ols_model_to_json(const OlsModel& m) {
    json slopes = json::array();
    for (Eigen::Index i = 0; i < m.slopes.size(); ++i) slopes.push_back(m.slopes(i));
    return json{{"target", m.target},
                {"donors", m.donors},
                {"intercept", m.intercept},
                {"slopes", slopes}};
}

OlsModel ols_model_from_json(const nlohmann::json& j) {
    try {
        OlsModel m;
        m.target = j.at("target").get<std::string>();
        m.donors = j.at("donors").get<std::vector<std::string>>();
        m.intercept = j.at("intercept").get<double>();
        const auto slopes = j.at("slopes").get<std::vector<double>>();
        m.slopes = Eigen::Map<const Eigen::VectorXd>(slopes.data(),
                                                     static_cast<Eigen::Index>(slopes.size()));
        return m;
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed OLS model JSON: ") + e.what());
    }
}

namespace {

json point_to_json(const ParetoPoint& pt, bool with_graph) {
    json j{{"k", pt.edges_k}, {"error", pt.error_val}, {"lambda", pt.lambda}, {"tau", pt.tau}};
    if (with_graph) j["graph"] = graph_to_json(pt.graph);
    return j;
}

ParetoPoint point_from_json(const json& j) {
    ParetoPoint pt;
    pt.edges_k = j.at("k").get<int>();
    pt.error_val = j.at("error").get<double>();
    pt.lambda = j.at("lambda").get<double>();
    pt.tau = j.at("tau").get<double>();
    if (j.contains("graph")) pt.graph = graph_from_json(j.at("graph"));
    return pt;
}

} // namespace

nlohmann::json sgm_result_to_json(const SgmResult& r) {
    json samples = json::array();
    for (const auto& pt : r.samples) samples.push_back(point_to_json(pt, false));
    json front = json::array();
    for (const auto& pt : r.front) front.push_back(point_to_json(pt, true));
    json failed = json::array();
    for (const auto& f : r.failed) {
        failed.push_back(json{{"lambda", f.lambda}, {"k", f.k_budget}, {"message", f.message}});
    }
    return json{{"p", r.p},
                {"grid_points", r.grid_points},
                {"samples", samples},
                {"front", front},
                {"failed", failed}};
}

SgmResult sgm_result_from_json(const nlohmann::json& j) {
    try {
        SgmResult r;
        r.p = j.at("p").get<int>();
        r.grid_points = j.at("grid_points").get<long long>();
        for (const auto& pt : j.at("samples")) r.samples.push_back(point_from_json(pt));
        for (const auto& pt : j.at("front")) r.front.push_back(point_from_json(pt));
        for (const auto& f : j.at("failed")) {
            r.failed.push_back({f.at("lambda").get<double>(), f.at("k").get<int>(),
                                f.at("message").get<std::string>()});
        }
        return r;
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed SGM result JSON: ") + e.what());
    }
}

nlohmann::json removal_plan_to_json(const RemovalPlan& plan,
                                    const std::vector<std::string>& gauge_ids) {
    auto id_of = [&gauge_ids](int v) -> std::string {
        if (v >= 0 && static_cast<std::size_t>(v) < gauge_ids.size()) {
            return gauge_ids[static_cast<std::size_t>(v)];
        }
        return std::to_string(v);
    };
    json ranked = json::array();
    for (const auto& e : plan.ranked) {
        ranked.push_back(json{{"rank", e.rank}, {"gauge", id_of(e.gauge)}, {"nse", e.nse}});
    }
    json blocked = json::array();
    for (const int v : plan.not_removable) blocked.push_back(id_of(v));
    return json{{"ranked", ranked}, {"not_removable", blocked}};
}

nlohmann::json score_report_to_json(const GaugeScoreReport& report,
                                    const std::vector<std::string>& gauge_ids,
                                    const std::vector<double>& nse_by_target) {
    json gauges = json::array();
    for (std::size_t t = 0; t < report.targets.size(); ++t) {
        const int j = report.targets[t];
        json entry;
        entry["id"] = gauge_ids[static_cast<std::size_t>(j)];
        const double r2 = report.per_gauge_r2[t];
        entry["r2"] = std::isfinite(r2) ? json(r2) : json(nullptr);
        if (!nse_by_target.empty()) {
            const double v = nse_by_target[t];
            entry["nse"] = std::isfinite(v) ? json(v) : json(nullptr);
        }
        entry["score"] = report.per_gauge_score[t];
        gauges.push_back(entry);
    }
    return json{{"gamma", report.gamma},
                {"gauges", gauges},
                {"total_score", report.total_score},
                {"error", report.error}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace streamnet
