#ifndef MSOS_SOLVER_HPP
#define MSOS_SOLVER_HPP

#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "msos/relaxation.hpp"

namespace msos {

struct SolverConfig {
  int max_iters = 50000;
  double eps_abs = 1e-7;
  double eps_rel = 1e-6;
  double rho = 1.0;       // initial ADMM penalty; adapted by residual balancing
  bool scaling = true;    // Ruiz-style equilibration
  int threads = 1;
  bool verbose = false;   // log every 500 iterations
  double over_relaxation = 1.6;
};

enum class SolveStatus { kOptimal, kMaxIters, kInfeasibleHeuristic };

std::string status_name(SolveStatus s);

struct SdpSolution {
  std::vector<double> y_values;                 // registered pseudo-moments
  std::vector<Eigen::MatrixXd> block_matrices;  // numeric PSD blocks, rp order
  double objective_value = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  double dual_feasibility = 0.0;
  double kkt_max = 0.0;
  SolveStatus status = SolveStatus::kMaxIters;
  int iterations = 0;
};

/// Generic standard-form conic program min c'x, Ax = b, x in
/// R^n_free x PSD(s_1) x ... x PSD(s_k), PSD blocks in scaled svec coordinates.
struct ConicProblem {
  int n_free = 0;
  std::vector<int> psd_sizes;
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b, c;
  double obj_constant = 0.0;
};

struct ConicSolution {
  Eigen::VectorXd x;        // affine-feasible iterate
  Eigen::VectorXd s;        // cone-feasible iterate
  Eigen::VectorXd nu;       // multiplier of Ax = b
  double objective = 0.0;   // c'x + constant
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double dual_feasibility = 0.0;
  double gap = 0.0;
  SolveStatus status = SolveStatus::kMaxIters;
  int iterations = 0;
};

ConicSolution solve_conic(const ConicProblem& problem, const SolverConfig& cfg);

/// Moment side; PSD blocks and residuals are reported against rp.
SdpSolution solve(const RelaxationProblem& rp, const SolverConfig& cfg);

/// SOS side; objective_value is the lower bound b, block_matrices the Gram
/// matrices.
SdpSolution solve_sos(const SosProblem& sos, const SolverConfig& cfg);

/// Max KKT residual of a moment solution: equality violation, PSD violation,
/// dual stationarity (when duals are present) and the normalized duality gap.
double kkt_residual(const RelaxationProblem& rp, const SdpSolution& sol);

/// |lower - upper| / (1 + |lower| + |upper|).
double suboptimality_gap(double lower, double upper);

/// Projection onto the PSD cone by symmetric eigendecomposition.
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& sym);

/// Numeric value of a block at given pseudo-moments.
Eigen::MatrixXd block_value(const RelaxationProblem::PsdBlock& block,
                            const std::vector<double>& y);

/// Full moment matrix of clique l reconstructed from y (unregistered entries
/// are zero, which happens only for masked-out positions).
Eigen::MatrixXd clique_moment_matrix(const RelaxationProblem& rp, int l,
                                     const std::vector<double>& y);

}  // namespace msos

#endif
