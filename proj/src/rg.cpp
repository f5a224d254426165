#include "streamnet/rg.hpp"

#include "streamnet/errors.hpp"
#include "streamnet/metrics.hpp"

namespace streamnet {

RemovalPlan run_rg(const std::vector<double>& nse_by_gauge, const Graph& g) {
    const int p = g.vertex_count();
    if (static_cast<int>(nse_by_gauge.size()) != p) {
        throw ValidationError("NSE list has " + std::to_string(nse_by_gauge.size()) +
                              " values for " + std::to_string(p) + " vertices");
    }

    RemovalPlan plan;
    plan.graph = g;

    std::vector<bool> available(static_cast<std::size_t>(p), false);
    for (int v = 0; v < p; ++v) available[static_cast<std::size_t>(v)] = !g.is_isolated(v);

    int rank = 0;
    while (true) {
        int pick = -1;
        for (int v = 0; v < p; ++v) {
            if (!available[static_cast<std::size_t>(v)]) continue;
            if (pick < 0 || nse_by_gauge[static_cast<std::size_t>(v)] >
                                nse_by_gauge[static_cast<std::size_t>(pick)]) {
                pick = v; // ties keep the lowest index
            }
        }
        if (pick < 0) break;
        plan.ranked.push_back({++rank, pick, nse_by_gauge[static_cast<std::size_t>(pick)]});
        available[static_cast<std::size_t>(pick)] = false;
        for (const int nb : g.neighbors(pick)) available[static_cast<std::size_t>(nb)] = false;
    }

    std::vector<bool> removed(static_cast<std::size_t>(p), false);
    for (const auto& e : plan.ranked) removed[static_cast<std::size_t>(e.gauge)] = true;
    for (int v = 0; v < p; ++v) {
        if (!removed[static_cast<std::size_t>(v)]) plan.not_removable.push_back(v);
    }
    return plan;
}

double removal_report(const RemovalPlan& plan, double gamma) {
    std::vector<double> nse_by_rank;
    nse_by_rank.reserve(plan.ranked.size());
    for (const auto& e : plan.ranked) nse_by_rank.push_back(e.nse);
    return graph_score(nse_by_rank, gamma);
}

} // namespace streamnet
