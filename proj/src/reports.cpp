#include "msos/reports.hpp"

#include <nlohmann/json.hpp>

namespace msos {

std::string solution_to_json(const SdpSolution& sol, double convert_seconds,
                             double solve_seconds) {
  nlohmann::ordered_json j;
  j["objective_value"] = sol.objective_value;
  j["dual_objective"] = sol.dual_objective;
  j["status"] = status_name(sol.status);
  j["iterations"] = sol.iterations;
  j["residuals"] = {{"primal", sol.primal_residual},
                    {"dual", sol.dual_residual},
                    {"gap", sol.gap},
                    {"dual_feasibility", sol.dual_feasibility}};
  j["kkt_max"] = sol.kkt_max;
  j["timings"] = {{"convert_s", convert_seconds}, {"solve_s", solve_seconds}};
  return j.dump(2) + "\n";
}

std::string error_to_json(const std::string& stage, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = {{"stage", stage}, {"message", message}};
  return j.dump(2) + "\n";
}

}  // namespace msos
