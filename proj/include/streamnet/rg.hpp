#pragma once

#include <vector>

#include "streamnet/graphs.hpp"

namespace streamnet {

struct RemovalEntry {
    int rank = 0;  // 1-based
    int gauge = 0; // vertex index
    double nse = 0.0;
};

struct RemovalPlan {
    std::vector<RemovalEntry> ranked; // removal order; an independent set in graph
    std::vector<int> not_removable;   // isolated vertices and blocked neighbors
    Graph graph;
};

// Greedy removal: repeatedly take the available vertex with the highest NSE
// (ties to the lowest index), then block it and its neighbors. Isolated
// vertices are never removable.
RemovalPlan run_rg(const std::vector<double>& nse_by_gauge, const Graph& g);

// graph score of the plan: sum of ranked NSE values above gamma.
double removal_report(const RemovalPlan& plan, double gamma);

} // namespace streamnet
