#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "streamnet/glasso.hpp"
#include "streamnet/graphs.hpp"
#include "streamnet/inference.hpp"
#include "streamnet/panel.hpp"

namespace streamnet {

struct SgmConfig {
    double lambda_min = 0.01;
    double lambda_max = 0.10;
    int res = 30;     // lambda grid size
    int k_min = 10;   // smallest edge budget
    int k_max = -1;   // largest edge budget; -1 means (p^2 - p) / 2
    double gamma = 0.7;
    std::set<std::string> donor_set;  // gauges never inferred
    std::set<std::string> target_set; // gauges never used as donors of each other
    std::uint64_t seed = 0;
    bool dedupe = true; // solve each distinct graph once per lambda
    int threads = 0;    // 0 = hardware concurrency
    SolverSettings solver;
};

struct FailedPoint {
    double lambda = 0.0;
    int k_budget = -1; // -1: the unconstrained solve for this lambda failed
    std::string message;
};

struct SelectedGraph {
    ParetoPoint point;
    CoefficientMatrix coefficients; // trained on the training rows
};

struct SgmResult {
    int p = 0;
    long long grid_points = 0; // nominal (k_max - k_min + 1) * res
    std::vector<ParetoPoint> samples; // evaluated grid points, ordered by (lambda, k)
    std::vector<ParetoPoint> front;   // non-dominated subset of samples
    std::vector<FailedPoint> failed;
    std::vector<SelectedGraph> chosen; // filled by callers via select_graph
};

// res evenly spaced penalties from lambda_min to lambda_max inclusive.
std::vector<double> lambda_sequence(const SgmConfig& config);

// Sample the (lambda, edge-budget) grid: for each lambda solve the penalized
// precision matrix, threshold it to each budget, refit under the resulting
// pattern, reconstruct validation flows, and score them. Lambda rows run in
// parallel; each row is sequential, so results are independent of the thread
// count. Grid points whose solve fails are recorded and skipped.
SgmResult run_sgm(const StreamflowPanel& panel, const DataSplits& splits,
                  const SgmConfig& config);

// Front member with edge count closest to k_target; ties prefer smaller
// error, then smaller edge count.
const ParetoPoint& select_graph(const SgmResult& result, int k_target);

} // namespace streamnet
