#ifndef MSOS_EXTRACTION_HPP
#define MSOS_EXTRACTION_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "msos/relaxation.hpp"
#include "msos/solver.hpp"

namespace msos {

struct ExtractionResult {
  std::vector<double> point;  // candidate minimizer over all n variables
  struct CliqueAtoms {
    std::vector<Eigen::VectorXd> atoms;  // coordinates in clique order
    std::vector<double> weights;
    int selected = 0;
  };
  std::vector<CliqueAtoms> per_clique;
  std::string method;  // "naive" or "robust"
  double feasibility_residual = 0.0;
  double objective_at_point = 0.0;
  double shared_spread = 0.0;  // worst disagreement of a shared variable
  bool fallback_naive = false;
  std::vector<std::string> warnings;
};

/// Degree-1 scheme: top eigenvector of the (1+n_l) x (1+n_l) submatrix of
/// each clique moment matrix, normalized to unit constant entry, shared
/// variables averaged across cliques.
ExtractionResult extract_naive(const Pop& pop, const RelaxationProblem& rp,
                               const std::vector<double>& y);

/// Highest-weight scheme: truncated eigendecomposition of each full moment
/// block, shifted multiplication operators on the dominant column space,
/// joint diagonalization through a random combination, weights from the
/// degree-<=1 Vandermonde system; falls back to the naive scheme when the
/// operator construction is rank-deficient.
ExtractionResult extract_robust(const Pop& pop, const RelaxationProblem& rp,
                                const std::vector<double>& y);

inline ExtractionResult extract_naive(const Pop& pop, const RelaxationProblem& rp,
                                      const SdpSolution& sol) {
  return extract_naive(pop, rp, sol.y_values);
}
inline ExtractionResult extract_robust(const Pop& pop, const RelaxationProblem& rp,
                                       const SdpSolution& sol) {
  return extract_robust(pop, rp, sol.y_values);
}

struct Certificate {
  bool feasible = false;
  double eta_g = 0.0;     // meaningful when feasible
  double residual = 0.0;  // max constraint violation at the point
  double upper = 0.0;     // objective at the point when feasible
};

Certificate certify(const Pop& pop, double lower, const ExtractionResult& result,
                    double tol);

/// Max constraint violation at a point: negative part of inequalities,
/// absolute value of equalities.
double feasibility_residual(const Pop& pop, const std::vector<double>& x);

std::string extraction_to_json(const ExtractionResult& res, const Pop& pop,
                               const Certificate* cert = nullptr);

}  // namespace msos

#endif
