#ifndef MSOS_REPORTS_HPP
#define MSOS_REPORTS_HPP

#include <string>

#include "msos/solver.hpp"

namespace msos {

/// Solution artifact. Timings are the only nondeterministic fields; they are
/// grouped under one key so deterministic comparisons can strip it.
std::string solution_to_json(const SdpSolution& sol, double convert_seconds,
                             double solve_seconds);

std::string error_to_json(const std::string& stage, const std::string& message);

}  // namespace msos

#endif
