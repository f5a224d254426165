#include "streamnet/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "streamnet/errors.hpp"

namespace streamnet {

Graph::Graph(int p) : p_(p) {
    if (p < 0) throw ValidationError("graph vertex count must be nonnegative");
}

Graph Graph::complete(int p) {
    Graph g(p);
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) g.edges_.emplace(i, j);
    }
    return g;
}

void Graph::add_edge(int i, int j) {
    if (i == j) throw ValidationError("self-loops are not allowed");
    if (i < 0 || j < 0 || i >= p_ || j >= p_) {
        throw ValidationError("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") out of range for " + std::to_string(p_) + " vertices");
    }
    edges_.emplace(std::min(i, j), std::max(i, j));
}

bool Graph::has_edge(int i, int j) const {
    if (i == j) return false;
    return edges_.count({std::min(i, j), std::max(i, j)}) > 0;
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges_) {
        if (a == v) out.push_back(b);
        else if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Graph::is_isolated(int v) const {
    for (const auto& [a, b] : edges_) {
        if (a == v || b == v) return false;
    }
    return true;
}

Graph threshold_graph(const Eigen::MatrixXd& theta, double tau) {
    if (theta.rows() != theta.cols()) throw ValidationError("precision matrix must be square");
    if (tau < 0) throw ValidationError("threshold must be nonnegative");
    const int p = static_cast<int>(theta.rows());
    Graph g(p);
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            if (std::abs(theta(i, j)) > tau) g.add_edge(i, j);
        }
    }
    return g;
}

double tau_for_edge_budget(const Eigen::MatrixXd& theta, int k) {
    if (theta.rows() != theta.cols()) throw ValidationError("precision matrix must be square");
    const int p = static_cast<int>(theta.rows());
    if (k < 0 || static_cast<long long>(k) > Graph::max_edges(p)) {
        throw ValidationError("edge budget " + std::to_string(k) + " out of range for p = " +
                              std::to_string(p));
    }

    std::vector<double> mags;
    mags.reserve(static_cast<std::size_t>(Graph::max_edges(p)));
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) mags.push_back(std::abs(theta(i, j)));
    }
    std::sort(mags.begin(), mags.end());

    // Candidate thresholds: zero plus every distinct magnitude. The edge
    // count at candidate t is the number of magnitudes strictly above t;
    // take the smallest candidate with count <= k.
    std::vector<double> candidates;
    candidates.push_back(0.0);
    for (const double m : mags) {
        if (m > 0 && (candidates.empty() || m != candidates.back())) candidates.push_back(m);
    }
    for (const double t : candidates) {
        const auto above = mags.end() - std::upper_bound(mags.begin(), mags.end(), t);
        if (above <= k) return t;
    }
    return candidates.back(); // unreachable: the largest magnitude leaves 0 edges
}

double haversine_km(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg) {
    constexpr double kEarthRadiusKm = 6371.0088;
    const double to_rad = std::numbers::pi / 180.0;
    const double lat1 = lat1_deg * to_rad, lat2 = lat2_deg * to_rad;
    const double dlat = (lat2_deg - lat1_deg) * to_rad;
    const double dlon = (lon2_deg - lon1_deg) * to_rad;
    const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                     std::cos(lat1) * std::cos(lat2) * std::sin(dlon / 2) * std::sin(dlon / 2);
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

namespace {

// Union of "each vertex to its m best peers" for any scoring rule; smaller
// key wins, ties broken by ascending index (the key includes the index).
template <typename KeyFn>
Graph best_m_union(int p, int m, KeyFn key) {
    if (m < 1) throw ValidationError("donors per target must be >= 1");
    if (m >= p) throw ValidationError("donors per target must be < number of gauges");
    Graph g(p);
    for (int j = 0; j < p; ++j) {
        std::vector<std::pair<double, int>> ranked;
        ranked.reserve(static_cast<std::size_t>(p - 1));
        for (int i = 0; i < p; ++i) {
            if (i != j) ranked.emplace_back(key(j, i), i);
        }
        std::sort(ranked.begin(), ranked.end());
        for (int t = 0; t < m; ++t) g.add_edge(j, ranked[static_cast<std::size_t>(t)].second);
    }
    return g;
}

} // namespace

Graph distance_graph(const std::vector<GaugeMetadata>& meta, int donors_per_target) {
    const int p = static_cast<int>(meta.size());
    for (const auto& m : meta) {
        if (!m.has_coordinates()) {
            throw ValidationError("gauge '" + m.nwsli + "' has no coordinates; run fetch first");
        }
    }
    return best_m_union(p, donors_per_target, [&meta](int j, int i) {
        return haversine_km(meta[static_cast<std::size_t>(j)].latitude,
                            meta[static_cast<std::size_t>(j)].longitude,
                            meta[static_cast<std::size_t>(i)].latitude,
                            meta[static_cast<std::size_t>(i)].longitude);
    });
}

Graph correlation_graph(const CovarianceMatrix& s, int donors_per_target) {
    if (s.s.rows() != s.s.cols()) throw ValidationError("covariance matrix must be square");
    const int p = static_cast<int>(s.s.rows());
    // Highest |s_ij| first, so negate for the ascending sort.
    return best_m_union(p, donors_per_target,
                        [&s](int j, int i) { return -std::abs(s.s(i, j)); });
}

Graph constrain_roles(const Graph& g, const std::set<int>& donors, const std::set<int>& targets) {
    for (const int d : donors) {
        if (targets.count(d)) {
            throw ValidationError("gauge index " + std::to_string(d) +
                                  " is in both donor and target sets");
        }
    }
    Graph out(g.vertex_count());
    for (const auto& [i, j] : g.edges()) {
        const bool both_donors = donors.count(i) && donors.count(j);
        const bool both_targets = targets.count(i) && targets.count(j);
        if (!both_donors && !both_targets) out.add_edge(i, j);
    }
    return out;
}

std::vector<ParetoPoint> pareto_front(const std::vector<ParetoPoint>& points) {
    if (points.empty()) return {};

    // Best candidate per edge count; equal (k, error) collapses to the
    // smallest (lambda, tau).
    std::vector<ParetoPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
        if (a.edges_k != b.edges_k) return a.edges_k < b.edges_k;
        if (a.error_val != b.error_val) return a.error_val < b.error_val;
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        return a.tau < b.tau;
    });

    std::vector<ParetoPoint> front;
    double best_error = std::numeric_limits<double>::infinity();
    int current_k = -1;
    for (const auto& pt : sorted) {
        if (pt.edges_k == current_k) continue; // only the best per k can survive
        current_k = pt.edges_k;
        if (pt.error_val < best_error) {
            front.push_back(pt);
            best_error = pt.error_val;
        }
    }
    return front;
}

} // namespace streamnet
