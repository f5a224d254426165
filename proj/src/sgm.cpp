#include "streamnet/sgm.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "streamnet/errors.hpp"
#include "streamnet/metrics.hpp"

namespace streamnet {

namespace {

struct LambdaRow {
    std::vector<ParetoPoint> samples;
    std::vector<FailedPoint> failed;
};

std::set<int> ids_to_indices(const std::set<std::string>& ids, const StreamflowPanel& panel) {
    std::set<int> out;
    for (const auto& id : ids) out.insert(panel.column_of(id));
    return out;
}

} // namespace

std::vector<double> lambda_sequence(const SgmConfig& config) {
    if (config.res < 1) throw ValidationError("lambda grid size must be >= 1");
    if (config.lambda_min < 0 || config.lambda_min > config.lambda_max) {
        throw ValidationError("need 0 <= lambda_min <= lambda_max");
    }
    std::vector<double> seq;
    seq.reserve(static_cast<std::size_t>(config.res));
    if (config.res == 1) {
        seq.push_back(config.lambda_min);
        return seq;
    }
    const double step = (config.lambda_max - config.lambda_min) /
                        static_cast<double>(config.res - 1);
    for (int r = 0; r < config.res; ++r) {
        seq.push_back(config.lambda_min + step * static_cast<double>(r));
    }
    seq.back() = config.lambda_max; // exact endpoint
    return seq;
}

SgmResult run_sgm(const StreamflowPanel& panel, const DataSplits& splits,
                  const SgmConfig& config) {
    const int p = static_cast<int>(panel.cols());
    const long long full_edges = Graph::max_edges(p);
    const int k_max = config.k_max < 0 ? static_cast<int>(full_edges) : config.k_max;
    if (config.k_min < 0 || config.k_min > k_max || k_max > full_edges) {
        throw ValidationError("need 0 <= k_min <= k_max <= " + std::to_string(full_edges));
    }
    if (splits.train.size() < 2 || splits.val.size() < 2) {
        throw ValidationError("train and validation splits need at least 2 rows each");
    }

    const std::set<int> donor_idx = ids_to_indices(config.donor_set, panel);
    const std::set<int> target_idx = ids_to_indices(config.target_set, panel);
    for (const int d : donor_idx) {
        if (target_idx.count(d)) {
            throw ValidationError("gauge '" + panel.gauge_ids[static_cast<std::size_t>(d)] +
                                  "' is in both donor and target sets");
        }
    }

    // All gauges are scored unless an explicit target set narrows q.
    std::vector<int> scored;
    if (target_idx.empty()) {
        for (int j = 0; j < p; ++j) scored.push_back(j);
    } else {
        scored.assign(target_idx.begin(), target_idx.end());
    }

    const StreamflowPanel train_q = panel.select_rows(splits.train);
    const StreamflowPanel val_q = panel.select_rows(splits.val);
    const LogPanel y_train = log_transform(train_q);
    const LogPanel y_val = log_transform(val_q);
    const StandardizedPanel z_train = standardize(y_train); // throws naming a zero-variance gauge
    const StandardizedPanel z_val = standardize(y_val);
    const CovarianceMatrix s_train = empirical_covariance(z_train);

    const std::vector<double> lambdas = lambda_sequence(config);
    const int res = static_cast<int>(lambdas.size());

    SgmResult result;
    result.p = p;
    result.grid_points = static_cast<long long>(k_max - config.k_min + 1) * res;

    // Each lambda row is evaluated sequentially inside one task, so the
    // floating-point stream per row does not depend on the thread count.
    std::vector<LambdaRow> rows(static_cast<std::size_t>(res));
    std::atomic<int> next_row{0};
    auto worker = [&]() {
        while (true) {
            const int r = next_row.fetch_add(1);
            if (r >= res) return;
            LambdaRow& row = rows[static_cast<std::size_t>(r)];
            const double lambda = lambdas[static_cast<std::size_t>(r)];

            PrecisionMatrix theta_full;
            try {
                theta_full = glasso_solve(s_train, lambda, config.solver);
            } catch (const std::exception& e) {
                row.failed.push_back({lambda, -1, e.what()});
                continue;
            }

            Graph previous_graph;
            bool have_previous = false;
            for (int k = config.k_min; k <= k_max; ++k) {
                try {
                    const double tau = tau_for_edge_budget(theta_full.theta, k);
                    Graph g = constrain_roles(threshold_graph(theta_full.theta, tau),
                                              donor_idx, target_idx);
                    if (config.dedupe && have_previous && g == previous_graph) continue;
                    previous_graph = g;
                    have_previous = true;

                    const PrecisionMatrix theta_k =
                        glasso_solve_constrained(s_train, lambda, g, config.solver);
                    const CoefficientMatrix a = coeffs_from_precision(theta_k);

                    const Eigen::MatrixXd z_hat = predict_z(z_val.values, a);
                    const Eigen::MatrixXd y_hat = inverse_standardize(z_hat, z_val.stats);
                    const Eigen::MatrixXd q_hat = back_transform_values(y_hat);

                    const GaugeScoreReport score =
                        score_and_error(val_q.values, q_hat, config.gamma, scored);

                    ParetoPoint pt;
                    pt.edges_k = g.edge_count();
                    pt.error_val = score.error;
                    pt.lambda = lambda;
                    pt.tau = tau;
                    pt.graph = std::move(g);
                    row.samples.push_back(std::move(pt));
                } catch (const std::exception& e) {
                    row.failed.push_back({lambda, k, e.what()});
                }
            }
        }
    };

    unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                            : std::thread::hardware_concurrency();
    n_threads = std::max(1u, std::min(n_threads, static_cast<unsigned>(res)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& row : rows) {
        result.samples.insert(result.samples.end(), row.samples.begin(), row.samples.end());
        result.failed.insert(result.failed.end(), row.failed.begin(), row.failed.end());
    }
    if (result.samples.empty()) {
        std::string detail = result.failed.empty() ? "no grid points evaluated"
                                                   : result.failed.front().message;
        throw ComputationError("every SGM grid point failed: " + detail);
    }
    result.front = pareto_front(result.samples);
    return result;
}

const ParetoPoint& select_graph(const SgmResult& result, int k_target) {
    if (result.front.empty()) throw ValidationError("Pareto front is empty");
    const ParetoPoint* best = nullptr;
    for (const auto& pt : result.front) {
        if (!best) {
            best = &pt;
            continue;
        }
        const int da = std::abs(pt.edges_k - k_target);
        const int db = std::abs(best->edges_k - k_target);
        if (da < db ||
            (da == db && (pt.error_val < best->error_val ||
                          (pt.error_val == best->error_val && pt.edges_k < best->edges_k)))) {
            best = &pt;
        }
    }
    return *best;
}

} // namespace streamnet
