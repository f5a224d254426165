#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "streamnet/graphs.hpp"
#include "streamnet/inference.hpp"
#include "streamnet/metrics.hpp"
#include "streamnet/rg.hpp"
#include "streamnet/sgm.hpp"

namespace streamnet {

// Graph wire format: {"p": int, "edges": [[i, j], ...]} with i < j, sorted.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

// {"target": id, "donors": [ids], "intercept": x, "slopes": [x, ...]}
nlohmann::json ols_model_to_json(const OlsModel& m);
OlsModel ols_model_from_json(const nlohmann::json& j);

nlohmann::json sgm_result_to_json(const SgmResult& r);
SgmResult sgm_result_from_json(const nlohmann::json& j);

nlohmann::json removal_plan_to_json(const RemovalPlan& plan,
                                    const std::vector<std::string>& gauge_ids);

nlohmann::json score_report_to_json(const GaugeScoreReport& report,
                                    const std::vector<std::string>& gauge_ids,
                                    const std::vector<double>& nse_by_target);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace streamnet
