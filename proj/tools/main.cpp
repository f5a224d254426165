#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "streamnet/errors.hpp"
#include "streamnet/glasso.hpp"
#include "streamnet/graphs.hpp"
#include "streamnet/inference.hpp"
#include "streamnet/metrics.hpp"
#include "streamnet/nwis.hpp"
#include "streamnet/panel.hpp"
#include "streamnet/rg.hpp"
#include "streamnet/serialize.hpp"
#include "streamnet/sgm.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace streamnet;

namespace {

struct RunConfig {
    std::string panel_path;
    std::string metadata_path;
    std::string out_dir = "out";
    std::string sites_path;
    std::string graph_path;
    std::string sgm_result_path;
    std::string start_date;
    std::string end_date;
    std::string endpoint = "https://waterservices.usgs.gov";
    std::uint64_t seed = 0;
    int threads = 0;
    double lambda_min = 0.01;
    double lambda_max = 0.10;
    int res = 30;
    int k_min = 10;
    int k_max = -1;
    int k_target = -1;
    double gamma = 0.7;     // R^2 threshold
    double gamma_nse = 0.7; // NSE threshold for removal scoring
    int donors = 3;         // baseline donors per target (1..donors)
    int timeout_seconds = 60;
    bool no_dedupe = false;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Flat key = value config file; '#' starts a comment. CLI flags override.
void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    static const std::map<std::string, std::function<void(RunConfig&, const std::string&)>>
        setters = {
            {"panel", [](RunConfig& c, const std::string& v) { c.panel_path = v; }},
            {"metadata", [](RunConfig& c, const std::string& v) { c.metadata_path = v; }},
            {"out", [](RunConfig& c, const std::string& v) { c.out_dir = v; }},
            {"sites", [](RunConfig& c, const std::string& v) { c.sites_path = v; }},
            {"graph", [](RunConfig& c, const std::string& v) { c.graph_path = v; }},
            {"sgm_result", [](RunConfig& c, const std::string& v) { c.sgm_result_path = v; }},
            {"start", [](RunConfig& c, const std::string& v) { c.start_date = v; }},
            {"end", [](RunConfig& c, const std::string& v) { c.end_date = v; }},
            {"endpoint", [](RunConfig& c, const std::string& v) { c.endpoint = v; }},
            {"seed", [](RunConfig& c, const std::string& v) { c.seed = std::stoull(v); }},
            {"threads", [](RunConfig& c, const std::string& v) { c.threads = std::stoi(v); }},
            {"lambda_min", [](RunConfig& c, const std::string& v) { c.lambda_min = std::stod(v); }},
            {"lambda_max", [](RunConfig& c, const std::string& v) { c.lambda_max = std::stod(v); }},
            {"res", [](RunConfig& c, const std::string& v) { c.res = std::stoi(v); }},
            {"k_min", [](RunConfig& c, const std::string& v) { c.k_min = std::stoi(v); }},
            {"k_max", [](RunConfig& c, const std::string& v) { c.k_max = std::stoi(v); }},
            {"k_target", [](RunConfig& c, const std::string& v) { c.k_target = std::stoi(v); }},
            {"gamma", [](RunConfig& c, const std::string& v) { c.gamma = std::stod(v); }},
            {"gamma_nse", [](RunConfig& c, const std::string& v) { c.gamma_nse = std::stod(v); }},
            {"donors", [](RunConfig& c, const std::string& v) { c.donors = std::stoi(v); }},
            {"timeout", [](RunConfig& c, const std::string& v) { c.timeout_seconds = std::stoi(v); }},
            {"dedupe",
             [](RunConfig& c, const std::string& v) { c.no_dedupe = (v == "false" || v == "0"); }},
        };
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                throw ValidationError("config line " + std::to_string(line_no) +
                                      ": expected key = value");
            }
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto it = setters.find(key);
        if (it == setters.end()) {
            throw ValidationError("unknown config key '" + key + "' at line " +
                                  std::to_string(line_no));
        }
        try {
            it->second(cfg, value);
        } catch (const std::exception&) {
            throw ValidationError("bad value '" + value + "' for config key '" + key + "'");
        }
    }
}

// Audit copy of the settings a command actually ran with.
void write_resolved_config(const RunConfig& cfg, const std::string& command) {
    std::ostringstream out;
    out << "command = " << command << '\n';
    if (!cfg.panel_path.empty()) out << "panel = " << cfg.panel_path << '\n';
    if (!cfg.metadata_path.empty()) out << "metadata = " << cfg.metadata_path << '\n';
    out << "out = " << cfg.out_dir << '\n';
    if (!cfg.sites_path.empty()) out << "sites = " << cfg.sites_path << '\n';
    if (!cfg.graph_path.empty()) out << "graph = " << cfg.graph_path << '\n';
    if (!cfg.sgm_result_path.empty()) out << "sgm_result = " << cfg.sgm_result_path << '\n';
    if (!cfg.start_date.empty()) out << "start = " << cfg.start_date << '\n';
    if (!cfg.end_date.empty()) out << "end = " << cfg.end_date << '\n';
    out << "seed = " << cfg.seed << '\n';
    out << "lambda_min = " << fmt(cfg.lambda_min) << '\n';
    out << "lambda_max = " << fmt(cfg.lambda_max) << '\n';
    out << "res = " << cfg.res << '\n';
    out << "k_min = " << cfg.k_min << '\n';
    out << "k_max = " << cfg.k_max << '\n';
    out << "k_target = " << cfg.k_target << '\n';
    out << "gamma = " << fmt(cfg.gamma) << '\n';
    out << "gamma_nse = " << fmt(cfg.gamma_nse) << '\n';
    out << "donors = " << cfg.donors << '\n';
    out << "dedupe = " << (cfg.no_dedupe ? "false" : "true") << '\n';
    write_text_file((fs::path(cfg.out_dir) / (command + ".config")).string(), out.str());
}

void ensure_out_dir(const RunConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "'");
}

StreamflowPanel load_panel_checked(const RunConfig& cfg) {
    if (cfg.panel_path.empty()) throw ValidationError("--panel is required");
    auto loaded = load_panel(cfg.panel_path);
    if (loaded.dropped_rows > 0) {
        std::cerr << "note: dropped " << loaded.dropped_rows
                  << " rows with missing values from '" << cfg.panel_path << "'\n";
    }
    return std::move(loaded.panel);
}

// Inference over one graph on the test period: OLS per non-isolated target
// in log space, trained on training rows (Eq.-34 route).
struct GraphInference {
    std::vector<int> targets;            // all gauges, q = p
    std::vector<OlsModel> models;        // for non-isolated targets, in target order
    std::vector<int> modeled;            // target index per model
    Eigen::MatrixXd q_hat;               // n_test x p; NaN columns for isolated gauges
    std::vector<double> nse_by_gauge;    // NaN where unavailable
    GaugeScoreReport report;
};

GraphInference infer_on_graph(const StreamflowPanel& panel, const DataSplits& splits,
                              const Graph& g, double gamma) {
    GraphInference out;
    const int p = static_cast<int>(panel.cols());
    const StreamflowPanel train_q = panel.select_rows(splits.train);
    const StreamflowPanel test_q = panel.select_rows(splits.test);
    const LogPanel y_train = log_transform(train_q);
    const LogPanel y_test = log_transform(test_q);

    for (int j = 0; j < p; ++j) out.targets.push_back(j);
    out.q_hat = Eigen::MatrixXd::Constant(test_q.rows(), p,
                                          std::numeric_limits<double>::quiet_NaN());
    out.nse_by_gauge.assign(static_cast<std::size_t>(p),
                            std::numeric_limits<double>::quiet_NaN());

    for (int j = 0; j < p; ++j) {
        if (g.is_isolated(j)) continue;
        try {
            OlsModel model = fit_ols_donors(y_train, g, j);
            const LogPanel y_hat = predict_ols({model}, y_test);
            std::size_t clamped = 0;
            out.q_hat.col(j) = back_transform_values(y_hat.values, &clamped).col(0);
            out.modeled.push_back(j);
            out.models.push_back(std::move(model));
        } catch (const std::exception& e) {
            // an unfittable gauge scores zero instead of aborting the run
            std::cerr << "warning: cannot infer gauge '"
                      << panel.gauge_ids[static_cast<std::size_t>(j)] << "': " << e.what()
                      << "\n";
            continue;
        }
        try {
            out.nse_by_gauge[static_cast<std::size_t>(j)] =
                nse(test_q.values.col(j), out.q_hat.col(j));
        } catch (const ComputationError&) {
            // zero-variance observations; leave NSE undefined
        }
    }

    // Manual scoring so isolated gauges participate with score 0.
    out.report.gamma = gamma;
    out.report.targets = out.targets;
    double total = 0.0;
    for (int j = 0; j < p; ++j) {
        double r2 = std::numeric_limits<double>::quiet_NaN();
        double score = 0.0;
        if (!g.is_isolated(j)) {
            try {
                r2 = r_squared(test_q.values.col(j), out.q_hat.col(j));
                if (r2 > gamma) score = r2;
            } catch (const ComputationError&) {
                out.report.rejected.push_back(j);
            }
        }
        out.report.per_gauge_r2.push_back(r2);
        out.report.per_gauge_score.push_back(score);
        total += score;
    }
    out.report.total_score = total;
    out.report.error = (static_cast<double>(p) - total) / static_cast<double>(p);
    return out;
}

Graph resolve_graph(const RunConfig& cfg, const StreamflowPanel& panel) {
    if (!cfg.graph_path.empty()) {
        const Graph g = graph_from_json(json::parse(read_text_file(cfg.graph_path)));
        if (g.vertex_count() != static_cast<int>(panel.cols())) {
            throw ValidationError("graph in '" + cfg.graph_path + "' has " +
                                  std::to_string(g.vertex_count()) + " vertices, panel has " +
                                  std::to_string(panel.cols()));
        }
        return g;
    }
    if (!cfg.sgm_result_path.empty()) {
        if (cfg.k_target < 0) {
            throw ValidationError("--k-target is required with --sgm-result");
        }
        const SgmResult result =
            sgm_result_from_json(json::parse(read_text_file(cfg.sgm_result_path)));
        return select_graph(result, cfg.k_target).graph;
    }
    throw ValidationError("provide --graph FILE or --sgm-result FILE with --k-target");
}

// -- Subcommands ------------------------------------------------------------

int cmd_fetch(const RunConfig& cfg) {
    if (cfg.sites_path.empty()) throw ValidationError("--sites is required");
    if (cfg.start_date.empty() || cfg.end_date.empty()) {
        throw ValidationError("--start and --end are required");
    }
    FetchConfig fc;
    fc.sites = read_metadata_csv(cfg.sites_path);
    if (fc.sites.empty()) throw ValidationError("site list '" + cfg.sites_path + "' is empty");
    fc.start = Date::parse(cfg.start_date);
    fc.end = Date::parse(cfg.end_date);
    if (fc.end < fc.start) throw ValidationError("--end precedes --start");
    fc.endpoint = cfg.endpoint;
    fc.timeout_seconds = cfg.timeout_seconds;

    ensure_out_dir(cfg);
    const FetchResult result = fetch_daily_flows(fc);
    const fs::path out(cfg.out_dir);
    write_panel_csv_with_gaps((out / "panel.csv").string(), result.gauge_ids(), result.series,
                              fc.start, fc.end);
    write_metadata_csv((out / "metadata.csv").string(), result.metadata);
    write_resolved_config(cfg, "fetch");
    std::cout << "fetched " << result.series.size() << " sites ("
              << result.skipped.size() << " skipped) into " << cfg.out_dir << "\n";
    return 0;
}

int cmd_sgm(const RunConfig& cfg) {
    const StreamflowPanel panel = load_panel_checked(cfg);
    const DataSplits splits = split(panel, cfg.seed);

    SgmConfig sc;
    sc.lambda_min = cfg.lambda_min;
    sc.lambda_max = cfg.lambda_max;
    sc.res = cfg.res;
    sc.k_min = cfg.k_min;
    sc.k_max = cfg.k_max;
    sc.gamma = cfg.gamma;
    sc.seed = cfg.seed;
    sc.dedupe = !cfg.no_dedupe;
    sc.threads = cfg.threads;

    const SgmResult result = run_sgm(panel, splits, sc);

    ensure_out_dir(cfg);
    const fs::path out(cfg.out_dir);
    write_text_file((out / "sgm_result.json").string(), sgm_result_to_json(result).dump(2) + "\n");

    std::ostringstream csv;
    csv << "k,error,lambda,tau\n";
    for (const auto& pt : result.samples) {
        csv << pt.edges_k << ',' << fmt(pt.error_val) << ',' << fmt(pt.lambda) << ','
            << fmt(pt.tau) << '\n';
    }
    write_text_file((out / "pareto.csv").string(), csv.str());
    write_resolved_config(cfg, "sgm");

    std::cout << "sgm: " << result.samples.size() << " evaluated points ("
              << result.grid_points << " nominal), front size " << result.front.size();
    if (!result.failed.empty()) std::cout << ", " << result.failed.size() << " failed";
    std::cout << "\n";
    return 0;
}

int cmd_infer(const RunConfig& cfg) {
    const StreamflowPanel panel = load_panel_checked(cfg);
    const DataSplits splits = split(panel, cfg.seed);
    const Graph g = resolve_graph(cfg, panel);
    const GraphInference inf = infer_on_graph(panel, splits, g, cfg.gamma);

    ensure_out_dir(cfg);
    const fs::path out(cfg.out_dir);

    std::vector<double> nse_by_target;
    for (const int j : inf.targets) nse_by_target.push_back(inf.nse_by_gauge[static_cast<std::size_t>(j)]);
    json metrics = score_report_to_json(inf.report, panel.gauge_ids, nse_by_target);
    metrics["graph"] = graph_to_json(g);
    write_text_file((out / "infer_metrics.json").string(), metrics.dump(2) + "\n");

    json models = json::array();
    for (const auto& m : inf.models) models.push_back(ols_model_to_json(m));
    write_text_file((out / "models.json").string(), models.dump(2) + "\n");

    const StreamflowPanel test_q = panel.select_rows(splits.test);
    std::ostringstream csv;
    csv << "date";
    for (const int j : inf.modeled) {
        const auto& id = panel.gauge_ids[static_cast<std::size_t>(j)];
        csv << ',' << id << "_obs," << id << "_est";
    }
    csv << '\n';
    for (Eigen::Index r = 0; r < test_q.rows(); ++r) {
        csv << test_q.dates[static_cast<std::size_t>(r)].to_string();
        for (const int j : inf.modeled) {
            csv << ',' << fmt(test_q.values(r, j)) << ',' << fmt(inf.q_hat(r, j));
        }
        csv << '\n';
    }
    write_text_file((out / "predictions.csv").string(), csv.str());
    write_resolved_config(cfg, "infer");

    std::cout << "infer: test error " << fmt(inf.report.error) << " over "
              << inf.report.targets.size() << " gauges (" << inf.models.size()
              << " modeled)\n";
    return 0;
}

int cmd_baselines(const RunConfig& cfg) {
    if (cfg.donors < 1) throw ValidationError("--donors must be >= 1");
    const StreamflowPanel panel = load_panel_checked(cfg);
    const DataSplits splits = split(panel, cfg.seed);

    // Correlation baseline uses the training-window covariance of the
    // standardized log flows, the same matrix the model selection sees.
    const CovarianceMatrix s_train =
        empirical_covariance(standardize(log_transform(panel.select_rows(splits.train))));

    std::vector<GaugeMetadata> meta;
    if (!cfg.metadata_path.empty()) meta = read_metadata_csv(cfg.metadata_path);

    ensure_out_dir(cfg);
    const fs::path out(cfg.out_dir);
    std::ostringstream csv;
    csv << "method,m,edges,test_error\n";
    for (int m = 1; m <= cfg.donors; ++m) {
        if (!meta.empty()) {
            const Graph gd = distance_graph(meta, m);
            const GraphInference inf = infer_on_graph(panel, splits, gd, cfg.gamma);
            write_text_file((out / ("baseline_dist_" + std::to_string(m) + ".json")).string(),
                            graph_to_json(gd).dump(2) + "\n");
            csv << "dist," << m << ',' << gd.edge_count() << ',' << fmt(inf.report.error) << '\n';
        }
        const Graph gc = correlation_graph(s_train, m);
        const GraphInference inf = infer_on_graph(panel, splits, gc, cfg.gamma);
        write_text_file((out / ("baseline_corr_" + std::to_string(m) + ".json")).string(),
                        graph_to_json(gc).dump(2) + "\n");
        csv << "corr," << m << ',' << gc.edge_count() << ',' << fmt(inf.report.error) << '\n';
    }
    write_text_file((out / "baselines.csv").string(), csv.str());
    write_resolved_config(cfg, "baselines");
    if (meta.empty()) {
        std::cerr << "note: no --metadata given; distance baselines skipped\n";
    }
    std::cout << "baselines written to " << (out / "baselines.csv").string() << "\n";
    return 0;
}

int cmd_remove(const RunConfig& cfg) {
    const StreamflowPanel panel = load_panel_checked(cfg);
    const DataSplits splits = split(panel, cfg.seed);
    const Graph g = resolve_graph(cfg, panel);
    const GraphInference inf = infer_on_graph(panel, splits, g, cfg.gamma);

    // Unavailable NSE sorts last and can never beat gamma.
    std::vector<double> nse_in(inf.nse_by_gauge);
    for (auto& v : nse_in) {
        if (!std::isfinite(v)) v = -std::numeric_limits<double>::infinity();
    }
    const RemovalPlan plan = run_rg(nse_in, g);
    const double score = removal_report(plan, cfg.gamma_nse);

    ensure_out_dir(cfg);
    const fs::path out(cfg.out_dir);
    json plan_json = removal_plan_to_json(plan, panel.gauge_ids);
    plan_json["graph"] = graph_to_json(g);
    plan_json["graph_score"] = score;
    plan_json["gamma_nse"] = cfg.gamma_nse;
    write_text_file((out / "removal_plan.json").string(), plan_json.dump(2) + "\n");

    std::ostringstream csv;
    csv << "edges,removable,above_gamma,graph_score\n";
    int above = 0;
    for (const auto& e : plan.ranked) {
        if (e.nse > cfg.gamma_nse) ++above;
    }
    csv << g.edge_count() << ',' << plan.ranked.size() << ',' << above << ',' << fmt(score)
        << '\n';
    write_text_file((out / "removal_summary.csv").string(), csv.str());
    write_resolved_config(cfg, "remove");

    std::cout << "remove: " << plan.ranked.size() << " removable gauges, graph score "
              << fmt(score) << "\n";
    return 0;
}

int cmd_report(const RunConfig& cfg) {
    const fs::path out(cfg.out_dir);
    const std::vector<std::string> expected = {"sgm_result.json", "infer_metrics.json",
                                               "baselines.csv", "removal_plan.json"};
    json summary;
    std::vector<std::string> missing;
    for (const auto& name : expected) {
        const fs::path path = out / name;
        if (!fs::exists(path)) {
            missing.push_back(path.string());
            continue;
        }
        if (name == "baselines.csv") {
            summary["baselines_csv"] = path.string();
        } else if (name == "sgm_result.json") {
            const SgmResult r = sgm_result_from_json(json::parse(read_text_file(path.string())));
            json front = json::array();
            for (const auto& pt : r.front) {
                front.push_back(json{{"k", pt.edges_k}, {"error", pt.error_val}});
            }
            summary["sgm"] = json{{"grid_points", r.grid_points},
                                  {"evaluated", r.samples.size()},
                                  {"failed", r.failed.size()},
                                  {"front", front}};
        } else if (name == "infer_metrics.json") {
            const json m = json::parse(read_text_file(path.string()));
            summary["inference"] = json{{"error", m.at("error")},
                                        {"total_score", m.at("total_score")}};
        } else {
            const json m = json::parse(read_text_file(path.string()));
            summary["removal"] = json{{"removable", m.at("ranked").size()},
                                      {"graph_score", m.at("graph_score")}};
        }
    }
    if (summary.empty()) {
        std::string what = "report: no prior outputs found; expected any of:";
        for (const auto& m : missing) what += "\n  " + m;
        throw IoError(what);
    }
    if (!missing.empty()) summary["missing"] = missing;
    write_text_file((out / "summary.json").string(), summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse graphical-model selection, streamflow record inference, "
                 "and gauge-network rationalization"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat key = value config file");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--seed", cfg.seed, "split seed");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
    };

    CLI::App* fetch = app.add_subcommand("fetch", "download daily flows from the USGS "
                                                  "daily-values service");
    add_common(fetch);
    fetch->add_option("--sites", cfg.sites_path, "metadata CSV listing the stations");
    fetch->add_option("--start", cfg.start_date, "first day, YYYY-MM-DD");
    fetch->add_option("--end", cfg.end_date, "last day, YYYY-MM-DD");
    fetch->add_option("--endpoint", cfg.endpoint, "service base URL");
    fetch->add_option("--timeout", cfg.timeout_seconds, "HTTP timeout in seconds");

    CLI::App* sgm = app.add_subcommand("sgm", "sample the (lambda, edge-budget) grid and "
                                              "emit the Pareto front");
    add_common(sgm);
    sgm->add_option("--panel", cfg.panel_path, "panel CSV");
    sgm->add_option("--lambda-min", cfg.lambda_min, "smallest penalty");
    sgm->add_option("--lambda-max", cfg.lambda_max, "largest penalty");
    sgm->add_option("--res", cfg.res, "penalty grid size");
    sgm->add_option("--k-min", cfg.k_min, "smallest edge budget");
    sgm->add_option("--k-max", cfg.k_max, "largest edge budget (-1 = complete graph)");
    sgm->add_option("--gamma", cfg.gamma, "R^2 score threshold");
    sgm->add_flag("--no-dedupe", cfg.no_dedupe, "evaluate duplicate graphs at every budget");

    CLI::App* infer = app.add_subcommand("infer", "reconstruct test-period flows over a graph");
    add_common(infer);
    infer->add_option("--panel", cfg.panel_path, "panel CSV");
    infer->add_option("--graph", cfg.graph_path, "graph JSON");
    infer->add_option("--sgm-result", cfg.sgm_result_path, "SGM result JSON");
    infer->add_option("--k-target", cfg.k_target, "edge count to pick from the front");
    infer->add_option("--gamma", cfg.gamma, "R^2 score threshold");

    CLI::App* baselines = app.add_subcommand("baselines", "distance and correlation donor "
                                                          "graphs with their test errors");
    add_common(baselines);
    baselines->add_option("--panel", cfg.panel_path, "panel CSV");
    baselines->add_option("--metadata", cfg.metadata_path, "metadata CSV with coordinates");
    baselines->add_option("--donors", cfg.donors, "evaluate 1..m donors per target");
    baselines->add_option("--gamma", cfg.gamma, "R^2 score threshold");

    CLI::App* remove = app.add_subcommand("remove", "rank gauges removable with least "
                                                    "information loss");
    add_common(remove);
    remove->add_option("--panel", cfg.panel_path, "panel CSV");
    remove->add_option("--graph", cfg.graph_path, "graph JSON");
    remove->add_option("--sgm-result", cfg.sgm_result_path, "SGM result JSON");
    remove->add_option("--k-target", cfg.k_target, "edge count to pick from the front");
    remove->add_option("--gamma", cfg.gamma, "R^2 score threshold");
    remove->add_option("--gamma-nse", cfg.gamma_nse, "NSE threshold for the graph score");

    CLI::App* report = app.add_subcommand("report", "consolidate prior outputs into a summary");
    add_common(report);

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            // Config file first, then re-parse so explicit flags win.
            RunConfig from_file;
            apply_config_file(config_path, from_file);
            cfg = from_file;
            app.clear();
            app.parse(argc, argv);
        }
        if (fetch->parsed()) return cmd_fetch(cfg);
        if (sgm->parsed()) return cmd_sgm(cfg);
        if (infer->parsed()) return cmd_infer(cfg);
        if (baselines->parsed()) return cmd_baselines(cfg);
        if (remove->parsed()) return cmd_remove(cfg);
        if (report->parsed()) return cmd_report(cfg);
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ComputationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
