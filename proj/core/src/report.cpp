#include "lcc/report.hpp"

#include <cmath>

#include "lcc/error.hpp"
#include "json.hpp"

namespace lcc {

const char* to_string(Objective objective) noexcept {
  return objective == Objective::kCenter ? "kcenter" : "kmedian";
}

namespace {

double objective_of(const ConsistentProblem& problem, const Clustering& c, Objective objective) {
  return objective == Objective::kCenter ? cost_kcenter(problem, c) : cost_kmedian(problem, c);
}

}  // namespace

SolutionReport make_report(const ConsistentProblem& problem, Clustering clustering,
                           Objective objective, std::string algorithm, std::size_t max_centers) {
  check_clustering(clustering, problem.size(), max_centers);
  SolutionReport r;
  r.algorithm = std::move(algorithm);
  r.objective = objective;
  r.objective_value = objective_of(problem, clustering, objective);
  r.swcost = swcost(problem, clustering);
  r.budget = problem.budget();
  r.clustering = std::move(clustering);
  return r;
}

void verify_report(const ConsistentProblem& problem, const SolutionReport& report) {
  const double value = objective_of(problem, report.clustering, report.objective);
  if (value != report.objective_value) {
    throw StructuralError("report objective disagrees with recomputation");
  }
  if (swcost(problem, report.clustering) != report.swcost) {
    throw StructuralError("report swcost disagrees with recomputation");
  }
}

std::string report_to_json(const SolutionReport& report, int indent) {
  nlohmann::ordered_json j;
  j["algorithm"] = report.algorithm;
  j["objective"] = to_string(report.objective);
  j["objective_value"] = report.objective_value;
  j["swcost"] = report.swcost;
  j["budget"] = report.budget;
  nlohmann::ordered_json clustering;
  clustering["centers"] = report.clustering.centers;
  nlohmann::ordered_json assign = nlohmann::ordered_json::array();
  for (Index a : report.clustering.assign) {
    if (a == kUnassigned) {
      assign.push_back(nullptr);
    } else {
      assign.push_back(a);
    }
  }
  clustering["assign"] = std::move(assign);
  j["clustering"] = std::move(clustering);
  if (report.wall_time_ms) j["wall_time_ms"] = *report.wall_time_ms;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.meta) {
    std::visit([&](const auto& v) { meta[key] = v; }, value);
  }
  j["meta"] = std::move(meta);
  return j.dump(indent);
}

}  // namespace lcc
