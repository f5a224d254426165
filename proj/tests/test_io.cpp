#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <nlohmann/json.hpp>

#include "streamnet/date.hpp"
#include "streamnet/errors.hpp"
#include "streamnet/nwis.hpp"
#include "streamnet/panel.hpp"
#include "streamnet/serialize.hpp"
#include "support.hpp"

using namespace streamnet;
using nlohmann::json;

TEST_CASE("dates parse, format, and count days") {
    const Date d = Date::parse("1971-01-01");
    CHECK(d.to_string() == "1971-01-01");
    CHECK(Date::parse("1980-12-31") - Date::parse("1951-01-01") + 1 == 10958);
    CHECK(Date::from_ymd(1972, 2, 29).to_string() == "1972-02-29"); // leap day
    CHECK((Date::parse("1999-12-31") + 1).to_string() == "2000-01-01");
    CHECK_THROWS_AS((void)Date::parse("1971/01/01"), ValidationError);
    CHECK_THROWS_AS((void)Date::parse("1971-13-01"), ValidationError);
    CHECK_THROWS_AS((void)Date::from_ymd(1971, 2, 29), ValidationError);
}

TEST_CASE("graph JSON round-trips with sorted edges") {
    Graph g(5);
    g.add_edge(3, 1);
    g.add_edge(0, 4);
    g.add_edge(0, 2);
    const json j = graph_to_json(g);
    CHECK(j.at("p") == 5);
    CHECK(j.at("edges").size() == 3);
    CHECK(j.at("edges")[0] == json::array({0, 2})); // lexicographic, i < j
    CHECK(j.at("edges")[1] == json::array({0, 4}));
    CHECK(j.at("edges")[2] == json::array({1, 3}));
    CHECK(graph_from_json(j) == g);
    CHECK_THROWS_AS((void)graph_from_json(json{{"p", 3}}), IoError);
}

TEST_CASE("ols model JSON round-trips") {
    OlsModel m;
    m.target = "WTVO1";
    m.donors = {"FDYO1", "UPPO1"};
    m.intercept = 0.25;
    m.slopes = (Eigen::VectorXd(2) << 0.75, -0.1).finished();
    const json j = ols_model_to_json(m);
    CHECK(j.at("target") == "WTVO1");
    const OlsModel back = ols_model_from_json(j);
    CHECK(back.donors == m.donors);
    CHECK(back.intercept == m.intercept);
    CHECK(back.slopes == m.slopes);
}

TEST_CASE("sgm result JSON round-trips samples, front, and failures") {
    SgmResult r;
    r.p = 4;
    r.grid_points = 12;
    ParetoPoint pt;
    pt.edges_k = 3;
    pt.error_val = 0.25;
    pt.lambda = 0.04;
    pt.tau = 0.011;
    pt.graph = Graph(4);
    pt.graph.add_edge(0, 1);
    r.samples.push_back(pt);
    r.front.push_back(pt);
    r.failed.push_back({0.07, 5, "did not converge"});

    const SgmResult back = sgm_result_from_json(sgm_result_to_json(r));
    CHECK(back.p == 4);
    CHECK(back.grid_points == 12);
    REQUIRE(back.samples.size() == 1);
    CHECK(back.samples[0].error_val == 0.25);
    REQUIRE(back.front.size() == 1);
    CHECK(back.front[0].graph == pt.graph);
    REQUIRE(back.failed.size() == 1);
    CHECK(back.failed[0].k_budget == 5);
}

TEST_CASE("removal plan JSON uses gauge ids") {
    RemovalPlan plan;
    plan.ranked = {{1, 2, 0.91}, {2, 0, 0.82}};
    plan.not_removable = {1};
    const json j = removal_plan_to_json(plan, {"AAA", "BBB", "CCC"});
    CHECK(j.at("ranked")[0].at("gauge") == "CCC");
    CHECK(j.at("ranked")[1].at("rank") == 2);
    CHECK(j.at("not_removable")[0] == "BBB");
}

TEST_CASE("score report JSON carries null for undefined metrics") {
    GaugeScoreReport report;
    report.gamma = 0.7;
    report.targets = {0, 1};
    report.per_gauge_r2 = {0.9, std::numeric_limits<double>::quiet_NaN()};
    report.per_gauge_score = {0.9, 0.0};
    report.total_score = 0.9;
    report.error = 0.55;
    const json j = score_report_to_json(report, {"A", "B"}, {0.8, 0.1});
    CHECK(j.at("gauges")[0].at("r2") == 0.9);
    CHECK(j.at("gauges")[1].at("r2").is_null());
    CHECK(j.at("gauges")[0].at("nse") == 0.8);
    CHECK(j.at("error") == 0.55);
}

TEST_CASE("metadata CSV round-trips including blank coordinates") {
    const auto path =
        (std::filesystem::temp_directory_path() / "meta_roundtrip.csv").string();
    std::vector<GaugeMetadata> meta(2);
    meta[0].nwsli = "ALDW2";
    meta[0].usgs_staid = "03183500";
    meta[0].latitude = 37.5;
    meta[0].longitude = -80.6;
    meta[0].drainage_area_km2 = 3533;
    meta[1].nwsli = "ALPI3";
    meta[1].usgs_staid = "03275000";
    meta[1].drainage_area_km2 = 1352; // no coordinates yet
    write_metadata_csv(path, meta);
    const auto back = read_metadata_csv(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].usgs_staid == "03183500");
    CHECK(back[0].latitude == 37.5);
    CHECK(back[0].has_coordinates());
    CHECK(!back[1].has_coordinates());
    CHECK(back[1].drainage_area_km2 == 1352);
}

TEST_CASE("panel CSV round-trips through load_panel") {
    StreamflowPanel panel;
    panel.gauge_ids = {"a", "b", "c"};
    panel.dates = {Date::parse("2001-05-01"), Date::parse("2001-05-02"),
                   Date::parse("2001-05-03")};
    panel.values.resize(3, 3);
    panel.values << 0.0, 1.25, 1e-9, 2.5, 0.3333333333333333, 7.0, 1e5, 42.0, 0.125;
    const auto path = (std::filesystem::temp_directory_path() / "panel_roundtrip.csv").string();
    write_panel_csv(path, panel);
    const auto back = load_panel(path);
    CHECK(back.dropped_rows == 0);
    CHECK(back.panel.gauge_ids == panel.gauge_ids);
    CHECK((back.panel.values - panel.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("packaged gauge fixture lists the 34 stations") {
    const auto path = std::filesystem::path(STREAMNET_SOURCE_DIR) / "data" / "ohio_gauges.csv";
    const auto meta = read_metadata_csv(path.string());
    CHECK(meta.size() == 34);
    CHECK(meta.front().nwsli == "ALDW2");
    CHECK(meta.front().usgs_staid == "03183500");
    CHECK(meta.front().drainage_area_km2 == 3533);
    CHECK(meta.back().nwsli == "WYNI2");
    double total_area = 0;
    for (const auto& m : meta) {
        CHECK(m.usgs_staid.size() == 8); // leading zeros preserved
        CHECK(!m.has_coordinates());     // populated by fetch, not packaged
        total_area += m.drainage_area_km2;
    }
    CHECK(total_area > 0);
}

TEST_CASE("daily-values request path carries the service parameters") {
    const std::string path = dv_request_path({"03183500", "03275000"},
                                             Date::parse("1951-01-01"),
                                             Date::parse("1980-12-31"));
    CHECK(path.find("sites=03183500,03275000") != std::string::npos);
    CHECK(path.find("startDT=1951-01-01") != std::string::npos);
    CHECK(path.find("endDT=1980-12-31") != std::string::npos);
    CHECK(path.find("parameterCd=00060") != std::string::npos);
    CHECK(path.find("statCd=00003") != std::string::npos);
    CHECK(path.find("format=json") != std::string::npos);
}

TEST_CASE("daily-values JSON parsing converts units and skips no-data markers") {
    const std::string body = R"({
      "value": {
        "timeSeries": [
          {
            "sourceInfo": {
              "siteCode": [{"value": "03183500"}],
              "geoLocation": {"geogLocation": {"latitude": 37.56, "longitude": -80.61}}
            },
            "variable": {"noDataValue": -999999.0},
            "values": [
              {"value": [
                {"value": "100.0", "dateTime": "1951-01-01T00:00:00.000"},
                {"value": "-999999", "dateTime": "1951-01-02T00:00:00.000"},
                {"value": "250.5", "dateTime": "1951-01-03T00:00:00.000"}
              ]}
            ]
          }
        ]
      }
    })";
    const auto series = parse_dv_response(body);
    REQUIRE(series.size() == 1);
    CHECK(series[0].staid == "03183500");
    CHECK(series[0].latitude == doctest::Approx(37.56));
    CHECK(series[0].flows_cms.size() == 2); // the no-data day is absent
    CHECK(series[0].flows_cms.at(Date::parse("1951-01-01")) ==
          doctest::Approx(100.0 * 0.0283168).epsilon(1e-12));
    CHECK(series[0].flows_cms.at(Date::parse("1951-01-03")) ==
          doctest::Approx(250.5 * 0.0283168).epsilon(1e-12));
    CHECK_THROWS_AS((void)parse_dv_response("not json"), IoError);
    CHECK_THROWS_AS((void)parse_dv_response("{}"), IoError);
}

TEST_CASE("gap-preserving panel writer emits empty cells") {
    SiteSeries a;
    a.staid = "X";
    a.flows_cms[Date::parse("2000-01-01")] = 1.0;
    a.flows_cms[Date::parse("2000-01-03")] = 3.0;
    SiteSeries b;
    b.staid = "Y";
    b.flows_cms[Date::parse("2000-01-01")] = 2.0;
    b.flows_cms[Date::parse("2000-01-02")] = 2.5;
    b.flows_cms[Date::parse("2000-01-03")] = 4.0;
    const auto path = (std::filesystem::temp_directory_path() / "gap_panel.csv").string();
    write_panel_csv_with_gaps(path, {"X", "Y"}, {a, b}, Date::parse("2000-01-01"),
                              Date::parse("2000-01-03"));
    const auto loaded = load_panel(path);
    CHECK(loaded.dropped_rows == 1); // the 2000-01-02 row lost X
    CHECK(loaded.panel.rows() == 2);
    CHECK(loaded.panel.values(1, 0) == 3.0);
}
