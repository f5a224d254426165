#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "streamnet/errors.hpp"
#include "streamnet/glasso.hpp"
#include "streamnet/graphs.hpp"
#include "streamnet/inference.hpp"
#include "streamnet/metrics.hpp"
#include "streamnet/panel.hpp"
#include "streamnet/rg.hpp"
#include "streamnet/sgm.hpp"

namespace py = pybind11;
using namespace streamnet;

namespace {

std::vector<std::string> dates_to_strings(const std::vector<Date>& dates) {
    std::vector<std::string> out;
    out.reserve(dates.size());
    for (const auto& d : dates) out.push_back(d.to_string());
    return out;
}

std::vector<Date> dates_from_strings(const std::vector<std::string>& iso) {
    std::vector<Date> out;
    out.reserve(iso.size());
    for (const auto& s : iso) out.push_back(Date::parse(s));
    return out;
}

Graph graph_from_edges(int p, const std::vector<std::pair<int, int>>& edges) {
    Graph g(p);
    for (const auto& [i, j] : edges) g.add_edge(i, j);
    return g;
}

std::vector<std::pair<int, int>> edges_list(const Graph& g) {
    return {g.edges().begin(), g.edges().end()};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sparse Gaussian graphical models over daily streamflow panels: "
              "penalized precision estimation, donor-graph selection, record "
              "inference, and gauge-removal ranking.";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);
    py::register_exception<ComputationError>(m, "ComputationError", PyExc_ArithmeticError);

    // -- panel ---------------------------------------------------------------

    py::class_<StreamflowPanel>(m, "StreamflowPanel")
        .def(py::init([](const std::vector<std::string>& dates,
                         const std::vector<std::string>& gauge_ids,
                         const Eigen::MatrixXd& values) {
                 StreamflowPanel p;
                 p.dates = dates_from_strings(dates);
                 p.gauge_ids = gauge_ids;
                 p.values = values;
                 return p;
             }),
             py::arg("dates"), py::arg("gauge_ids"), py::arg("values"))
        .def_property_readonly("dates",
                               [](const StreamflowPanel& p) { return dates_to_strings(p.dates); })
        .def_readonly("gauge_ids", &StreamflowPanel::gauge_ids)
        .def_readonly("values", &StreamflowPanel::values)
        .def("column_of", &StreamflowPanel::column_of)
        .def("select_rows", &StreamflowPanel::select_rows);

    py::class_<LogPanel>(m, "LogPanel")
        .def_property_readonly("dates",
                               [](const LogPanel& p) { return dates_to_strings(p.dates); })
        .def_readonly("gauge_ids", &LogPanel::gauge_ids)
        .def_readonly("values", &LogPanel::values);

    py::class_<ColumnStats>(m, "ColumnStats")
        .def_readonly("mean", &ColumnStats::mean)
        .def_readonly("stddev", &ColumnStats::stddev);

    py::class_<StandardizedPanel>(m, "StandardizedPanel")
        .def_readonly("gauge_ids", &StandardizedPanel::gauge_ids)
        .def_readonly("values", &StandardizedPanel::values)
        .def_readonly("stats", &StandardizedPanel::stats);

    py::class_<DataSplits>(m, "DataSplits")
        .def_readonly("train", &DataSplits::train)
        .def_readonly("val", &DataSplits::val)
        .def_readonly("test", &DataSplits::test)
        .def_readonly("seed", &DataSplits::seed);

    m.def(
        "load_panel",
        [](const std::string& path, const std::optional<std::vector<std::string>>& subset) {
            auto r = load_panel(path, subset);
            return py::make_tuple(r.panel, r.dropped_rows);
        },
        py::arg("path"), py::arg("gauge_subset") = std::nullopt,
        "Read a panel CSV; returns (panel, dropped_rows).");
    m.def("log_transform", &log_transform);
    m.def("standardize", &standardize);
    m.def("inverse_standardize", &inverse_standardize, py::arg("z_hat"), py::arg("stats"));
    m.def(
        "back_transform",
        [](const Eigen::MatrixXd& y_hat) {
            std::size_t clamped = 0;
            Eigen::MatrixXd q = back_transform_values(y_hat, &clamped);
            return py::make_tuple(q, clamped);
        },
        py::arg("y_hat"), "exp(y) - 1 clamped at zero; returns (values, clamped_count).");
    m.def("split", &split, py::arg("panel"), py::arg("seed"));
    m.def(
        "empirical_covariance",
        [](const Eigen::MatrixXd& z) { return empirical_covariance(z).s; }, py::arg("z"));

    // -- graphs ----------------------------------------------------------------

    py::class_<Graph>(m, "Graph")
        .def(py::init(&graph_from_edges), py::arg("p"),
             py::arg("edges") = std::vector<std::pair<int, int>>{})
        .def_static("complete", &Graph::complete)
        .def_property_readonly("p", &Graph::vertex_count)
        .def_property_readonly("edges", &edges_list)
        .def("edge_count", &Graph::edge_count)
        .def("has_edge", &Graph::has_edge)
        .def("add_edge", &Graph::add_edge)
        .def("neighbors", &Graph::neighbors)
        .def("is_isolated", &Graph::is_isolated)
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "Graph(p=" + std::to_string(g.vertex_count()) + ", edges=" +
                   std::to_string(g.edge_count()) + ")";
        });

    m.def("threshold_graph", &threshold_graph, py::arg("theta"), py::arg("tau"));
    m.def("tau_for_edge_budget", &tau_for_edge_budget, py::arg("theta"), py::arg("k"));
    m.def("correlation_graph",
          [](const Eigen::MatrixXd& s, int m_donors) {
              return correlation_graph(CovarianceMatrix{s}, m_donors);
          },
          py::arg("s"), py::arg("donors_per_target"));
    m.def("haversine_km", &haversine_km);

    py::class_<ParetoPoint>(m, "ParetoPoint")
        .def_readonly("edges_k", &ParetoPoint::edges_k)
        .def_readonly("error_val", &ParetoPoint::error_val)
        .def_readonly("lambda_", &ParetoPoint::lambda)
        .def_readonly("tau", &ParetoPoint::tau)
        .def_readonly("graph", &ParetoPoint::graph);

    m.def(
        "pareto_front",
        [](const std::vector<std::tuple<int, double, double, double>>& pts) {
            std::vector<ParetoPoint> points;
            points.reserve(pts.size());
            for (const auto& [k, err, lam, tau] : pts) {
                ParetoPoint pt;
                pt.edges_k = k;
                pt.error_val = err;
                pt.lambda = lam;
                pt.tau = tau;
                points.push_back(pt);
            }
            std::vector<std::tuple<int, double, double, double>> out;
            for (const auto& pt : pareto_front(points)) {
                out.emplace_back(pt.edges_k, pt.error_val, pt.lambda, pt.tau);
            }
            return out;
        },
        py::arg("points"),
        "Non-dominated filter over (k, error, lambda, tau) tuples.");

    // -- glasso ------------------------------------------------------------------

    py::class_<PrecisionMatrix>(m, "PrecisionMatrix")
        .def_readonly("theta", &PrecisionMatrix::theta)
        .def_readonly("lambda_used", &PrecisionMatrix::lambda_used)
        .def_property_readonly("pattern", [](const PrecisionMatrix& p) {
            return p.pattern ? py::cast(*p.pattern) : py::none().cast<py::object>();
        });

    auto settings_from_kwargs = [](double tol, int max_iter, bool penalize_diagonal) {
        SolverSettings s;
        s.tol = tol;
        s.max_iter = max_iter;
        s.penalize_diagonal = penalize_diagonal;
        return s;
    };
    m.def(
        "glasso_solve",
        [settings_from_kwargs](const Eigen::MatrixXd& s, double lam, double tol, int max_iter,
                               bool penalize_diagonal) {
            return glasso_solve(CovarianceMatrix{s}, lam,
                                settings_from_kwargs(tol, max_iter, penalize_diagonal));
        },
        py::arg("s"), py::arg("lambda_"), py::arg("tol") = 1e-6, py::arg("max_iter") = 200,
        py::arg("penalize_diagonal") = true);
    m.def(
        "glasso_solve_constrained",
        [settings_from_kwargs](const Eigen::MatrixXd& s, double lam, const Graph& g, double tol,
                               int max_iter, bool penalize_diagonal) {
            return glasso_solve_constrained(CovarianceMatrix{s}, lam, g,
                                            settings_from_kwargs(tol, max_iter,
                                                                 penalize_diagonal));
        },
        py::arg("s"), py::arg("lambda_"), py::arg("graph"), py::arg("tol") = 1e-6,
        py::arg("max_iter") = 200, py::arg("penalize_diagonal") = true);
    m.def(
        "invert_covariance",
        [](const Eigen::MatrixXd& s) { return invert_covariance(CovarianceMatrix{s}).theta; },
        py::arg("s"));
    m.def("glasso_objective", &glasso_objective, py::arg("s"), py::arg("theta"),
          py::arg("lambda_"), py::arg("include_diagonal") = true);

    // -- inference ---------------------------------------------------------------

    m.def(
        "coeffs_from_precision",
        [](const PrecisionMatrix& t) { return coeffs_from_precision(t).a; }, py::arg("theta"));
    m.def(
        "coeffs_from_covariance",
        [](const Eigen::MatrixXd& s, int target) {
            return coeffs_from_covariance(CovarianceMatrix{s}, target);
        },
        py::arg("s"), py::arg("target"));
    m.def(
        "predict_z",
        [](const Eigen::MatrixXd& z, const Eigen::MatrixXd& a) {
            return predict_z(z, CoefficientMatrix{a});
        },
        py::arg("z"), py::arg("a"));

    py::class_<OlsModel>(m, "OlsModel")
        .def_readonly("target", &OlsModel::target)
        .def_readonly("donors", &OlsModel::donors)
        .def_readonly("intercept", &OlsModel::intercept)
        .def_readonly("slopes", &OlsModel::slopes)
        .def_readonly("residual_variance", &OlsModel::residual_variance);

    m.def("fit_ols_donors", &fit_ols_donors, py::arg("y_train"), py::arg("graph"),
          py::arg("target"));
    m.def("predict_ols", &predict_ols, py::arg("models"), py::arg("y"));

    // -- metrics -------------------------------------------------------------------

    m.def("r_squared", &r_squared, py::arg("obs"), py::arg("est"));
    m.def("nse", &nse, py::arg("obs"), py::arg("est"));
    m.def("graph_score", &graph_score, py::arg("nse_by_rank"), py::arg("gamma"));

    // -- sgm / rg --------------------------------------------------------------------

    py::class_<SgmConfig>(m, "SgmConfig")
        .def(py::init<>())
        .def_readwrite("lambda_min", &SgmConfig::lambda_min)
        .def_readwrite("lambda_max", &SgmConfig::lambda_max)
        .def_readwrite("res", &SgmConfig::res)
        .def_readwrite("k_min", &SgmConfig::k_min)
        .def_readwrite("k_max", &SgmConfig::k_max)
        .def_readwrite("gamma", &SgmConfig::gamma)
        .def_readwrite("donor_set", &SgmConfig::donor_set)
        .def_readwrite("target_set", &SgmConfig::target_set)
        .def_readwrite("seed", &SgmConfig::seed)
        .def_readwrite("dedupe", &SgmConfig::dedupe)
        .def_readwrite("threads", &SgmConfig::threads);

    py::class_<FailedPoint>(m, "FailedPoint")
        .def_readonly("lambda_", &FailedPoint::lambda)
        .def_readonly("k_budget", &FailedPoint::k_budget)
        .def_readonly("message", &FailedPoint::message);

    py::class_<SgmResult>(m, "SgmResult")
        .def_readonly("p", &SgmResult::p)
        .def_readonly("grid_points", &SgmResult::grid_points)
        .def_readonly("samples", &SgmResult::samples)
        .def_readonly("front", &SgmResult::front)
        .def_readonly("failed", &SgmResult::failed);

    m.def("lambda_sequence", &lambda_sequence, py::arg("config"));
    m.def("run_sgm", &run_sgm, py::arg("panel"), py::arg("splits"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "select_graph",
        [](const SgmResult& r, int k_target) { return select_graph(r, k_target); },
        py::arg("result"), py::arg("k_target"));

    py::class_<RemovalEntry>(m, "RemovalEntry")
        .def_readonly("rank", &RemovalEntry::rank)
        .def_readonly("gauge", &RemovalEntry::gauge)
        .def_readonly("nse", &RemovalEntry::nse);

    py::class_<RemovalPlan>(m, "RemovalPlan")
        .def_readonly("ranked", &RemovalPlan::ranked)
        .def_readonly("not_removable", &RemovalPlan::not_removable)
        .def_readonly("graph", &RemovalPlan::graph);

    m.def("run_rg", &run_rg, py::arg("nse_by_gauge"), py::arg("graph"));
    m.def("removal_report", &removal_report, py::arg("plan"), py::arg("gamma"));
}
