#pragma once

#include <Eigen/Dense>
#include <set>
#include <utility>
#include <vector>

#include "streamnet/panel.hpp"

namespace streamnet {

// Undirected graph over gauge indices 0..p-1. No self-loops, no duplicate
// edges; pairs are stored as (i, j) with i < j.
class Graph {
public:
    Graph() = default;
    explicit Graph(int p);

    static Graph complete(int p);

    int vertex_count() const { return p_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    static long long max_edges(int p) { return static_cast<long long>(p) * (p - 1) / 2; }

    const std::set<std::pair<int, int>>& edges() const { return edges_; }

    void add_edge(int i, int j);
    bool has_edge(int i, int j) const;
    std::vector<int> neighbors(int v) const; // ascending
    bool is_isolated(int v) const;

    bool operator==(const Graph&) const = default;

private:
    int p_ = 0;
    std::set<std::pair<int, int>> edges_;
};

// One sampled model from the SGM grid: sparsity vs validation error.
struct ParetoPoint {
    int edges_k = 0;        // actual |edges| of graph
    double error_val = 1.0; // validation error in [0, 1]
    double lambda = 0.0;
    double tau = 0.0;
    Graph graph;
};

// Edge (i, j) present iff |theta_ij| > tau, i != j.
Graph threshold_graph(const Eigen::MatrixXd& theta, double tau);

// Smallest threshold (from {0} and the distinct off-diagonal magnitudes)
// whose graph has at most k edges. The result has exactly k edges unless
// ties in |theta_ij| force fewer.
double tau_for_edge_budget(const Eigen::MatrixXd& theta, int k);

// Union of "each vertex to its m nearest vertices" by great-circle distance;
// ties broken by ascending index.
Graph distance_graph(const std::vector<GaugeMetadata>& meta, int donors_per_target);

// Union of "each vertex to its m most correlated vertices" by |s_ij|;
// ties broken by ascending index.
Graph correlation_graph(const CovarianceMatrix& s, int donors_per_target);

// Remove donor-donor and target-target edges; role sets must be disjoint.
Graph constrain_roles(const Graph& g, const std::set<int>& donors, const std::set<int>& targets);

// Non-dominated subset under minimization of (edges_k, error_val). Points
// tied on both objectives are collapsed to the one with smallest lambda,
// then smallest tau.
std::vector<ParetoPoint> pareto_front(const std::vector<ParetoPoint>& points);

// Great-circle distance on a sphere of radius 6371.0088 km.
double haversine_km(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg);

} // namespace streamnet
