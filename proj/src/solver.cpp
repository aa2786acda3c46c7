#include "msos/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

namespace msos {

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kMaxIters: return "max_iters";
    case SolveStatus::kInfeasibleHeuristic: return "infeasible_heuristic";
  }
  return "?";
}

double suboptimality_gap(double lower, double upper) {
  return std::fabs(lower - upper) / (1.0 + std::fabs(lower) + std::fabs(upper));
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

int svec_length(int n) { return n * (n + 1) / 2; }

// row-major upper-triangle offset for r <= c
int svec_index(int n, int r, int c) { return r * n - r * (r - 1) / 2 + (c - r); }

Eigen::MatrixXd svec_to_mat(const Eigen::VectorXd& v, int offset, int n) {
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) {
      double val = v[offset + svec_index(n, r, c)];
      if (r == c) {
        m(r, c) = val;
      } else {
        m(r, c) = m(c, r) = val / kSqrt2;
      }
    }
  return m;
}

void mat_to_svec(const Eigen::MatrixXd& m, Eigen::VectorXd& v, int offset) {
  const int n = static_cast<int>(m.rows());
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c)
      v[offset + svec_index(n, r, c)] = (r == c) ? m(r, c) : kSqrt2 * m(r, c);
}

struct ConeLayout {
  int n_free;
  std::vector<int> sizes;
  std::vector<int> offsets;
  int total;

  explicit ConeLayout(const ConicProblem& p) : n_free(p.n_free), sizes(p.psd_sizes) {
    int off = n_free;
    for (int s : sizes) {
      offsets.push_back(off);
      off += svec_length(s);
    }
    total = off;
  }
};

// Projects the PSD part of v in place; free coordinates are untouched.
void project_cone(const ConeLayout& layout, Eigen::VectorXd& v, int threads) {
  auto project_block = [&](std::size_t k) {
    Eigen::MatrixXd m = svec_to_mat(v, layout.offsets[k], layout.sizes[k]);
    mat_to_svec(project_psd(m), v, layout.offsets[k]);
  };
  if (threads <= 1 || layout.sizes.size() < 2) {
    for (std::size_t k = 0; k < layout.sizes.size(); ++k) project_block(k);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t nblocks = layout.sizes.size();
  std::size_t nthreads = std::min<std::size_t>(threads, nblocks);
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t k = t; k < nblocks; k += nthreads) project_block(k);
    });
  }
  for (auto& th : pool) th.join();
}

// Most negative eigenvalue over PSD blocks of v (0 if all PSD).
double cone_violation(const ConeLayout& layout, const Eigen::VectorXd& v) {
  double worst = 0.0;
  for (std::size_t k = 0; k < layout.sizes.size(); ++k) {
    Eigen::MatrixXd m = svec_to_mat(v, layout.offsets[k], layout.sizes[k]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    double lam_min = es.eigenvalues().minCoeff();
    double scale = 1.0 + m.norm();
    worst = std::max(worst, std::max(0.0, -lam_min) / scale);
  }
  return worst;
}

// Ruiz equilibration with cone-uniform column scaling: all svec coordinates
// of one PSD block share a single scale so cone membership is preserved.
struct Scaling {
  Eigen::VectorXd row;  // D
  Eigen::VectorXd col;  // E
  double cost = 1.0;    // sigma applied to c
};

Scaling ruiz_equilibrate(Eigen::SparseMatrix<double>& A, const ConeLayout& layout) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  Scaling sc;
  sc.row = Eigen::VectorXd::Ones(m);
  sc.col = Eigen::VectorXd::Ones(n);

  for (int pass = 0; pass < 10; ++pass) {
    Eigen::VectorXd rmax = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd cmax = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < A.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
        double a = std::fabs(it.value());
        rmax[it.row()] = std::max(rmax[it.row()], a);
        cmax[it.col()] = std::max(cmax[it.col()], a);
      }
    // uniform scale per PSD block: geometric mean of the block's column maxima
    for (std::size_t kb = 0; kb < layout.sizes.size(); ++kb) {
      int off = layout.offsets[kb];
      int len = svec_length(layout.sizes[kb]);
      double log_sum = 0.0;
      int cnt = 0;
      for (int i = 0; i < len; ++i)
        if (cmax[off + i] > 0) {
          log_sum += std::log(cmax[off + i]);
          ++cnt;
        }
      double g = cnt ? std::exp(log_sum / cnt) : 1.0;
      for (int i = 0; i < len; ++i) cmax[off + i] = g;
    }
    Eigen::VectorXd dr(m), dc(n);
    for (int i = 0; i < m; ++i) dr[i] = rmax[i] > 0 ? 1.0 / std::sqrt(rmax[i]) : 1.0;
    for (int j = 0; j < n; ++j) dc[j] = cmax[j] > 0 ? 1.0 / std::sqrt(cmax[j]) : 1.0;
    for (int k = 0; k < A.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
        it.valueRef() *= dr[it.row()] * dc[it.col()];
    sc.row.array() *= dr.array();
    sc.col.array() *= dc.array();
  }
  return sc;
}

}  // namespace

ConicSolution solve_conic(const ConicProblem& problem, const SolverConfig& cfg) {
  if (cfg.max_iters < 1 || cfg.eps_abs <= 0 || cfg.eps_rel <= 0 || cfg.rho <= 0)
    throw std::invalid_argument("solver tolerances must be positive, max_iters >= 1");
  ConeLayout layout(problem);
  const int n = layout.total;
  const int m = static_cast<int>(problem.A.rows());
  if (problem.A.cols() != n)
    throw std::invalid_argument("conic problem dimension mismatch");

  Eigen::SparseMatrix<double> A = problem.A;
  Scaling sc;
  sc.row = Eigen::VectorXd::Ones(m);
  sc.col = Eigen::VectorXd::Ones(n);
  if (cfg.scaling) sc = ruiz_equilibrate(A, layout);

  Eigen::VectorXd b = sc.row.asDiagonal() * problem.b;
  Eigen::VectorXd c = sc.col.asDiagonal() * problem.c;
  double cnorm = c.lpNorm<Eigen::Infinity>();
  sc.cost = cnorm > 0 ? 1.0 / std::max(1.0, cnorm) : 1.0;
  c *= sc.cost;

  // Normal equations of the affine projection; the ridge keeps the
  // factorization valid when equality rows are linearly dependent.
  Eigen::SparseMatrix<double> AAt = (A * A.transpose()).pruned();
  double ridge = 1e-10;
  {
    double dmax = 0.0;
    for (int i = 0; i < AAt.rows(); ++i) dmax = std::max(dmax, AAt.coeff(i, i));
    ridge = 1e-12 * (1.0 + dmax);
    for (int i = 0; i < AAt.rows(); ++i) AAt.coeffRef(i, i) += ridge;
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(AAt);
  if (chol.info() != Eigen::Success)
    throw std::runtime_error(
        "normal equations are numerically singular; try enabling scaling");

  auto affine_project = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    Eigen::VectorXd residual = A * v - b;
    return v - A.transpose() * chol.solve(residual);
  };

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  double rho = cfg.rho;
  const double alpha = cfg.over_relaxation;
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  ConicSolution out;
  out.status = SolveStatus::kMaxIters;

  int iter = 0;
  for (iter = 1; iter <= cfg.max_iters; ++iter) {
    x = affine_project(s - u - c / rho);
    Eigen::VectorXd x_relaxed = alpha * x + (1.0 - alpha) * s;
    Eigen::VectorXd s_prev = s;
    s = x_relaxed + u;
    project_cone(layout, s, cfg.threads);
    u += x_relaxed - s;

    bool check = (iter % 25 == 0) || iter == cfg.max_iters;
    if (check) {
      double r_prim = (x - s).norm();
      double r_dual = rho * (s - s_prev).norm();
      double eps_prim =
          cfg.eps_abs * sqrt_n + cfg.eps_rel * std::max(x.norm(), s.norm());
      double eps_dual = cfg.eps_abs * sqrt_n + cfg.eps_rel * rho * u.norm();
      if (cfg.verbose && iter % 500 == 0) {
        double pobj = c.dot(x) / sc.cost;
        Eigen::VectorXd nu_log = chol.solve(A * (c + rho * (x - s + u)));
        double dobj = b.dot(nu_log) / sc.cost;
        double gap = std::fabs(pobj - dobj) / (1.0 + std::fabs(pobj) + std::fabs(dobj));
        std::fprintf(stderr,
                     "iter %6d  rprim %.3e  rdual %.3e  gap %.3e  obj %.8e  rho %.1e\n",
                     iter, r_prim, r_dual, gap, pobj, rho);
      }
      if (!x.allFinite() || x.norm() > 1e12) {
        out.status = SolveStatus::kInfeasibleHeuristic;
        break;
      }
      if (r_prim < eps_prim && r_dual < eps_dual) {
        out.status = SolveStatus::kOptimal;
        break;
      }
      if (iter % 100 == 0) {
        // residual balancing, factor-2 steps
        if (r_prim > 10.0 * r_dual && rho < 1e6) {
          rho *= 2.0;
          u *= 0.5;
        } else if (r_dual > 10.0 * r_prim && rho > 1e-6) {
          rho *= 0.5;
          u *= 2.0;
        }
      }
    }
  }
  out.iterations = std::min(iter, cfg.max_iters);

  // multiplier of Ax = b from the last x-update
  Eigen::VectorXd rhs_nu = A * (c + rho * (x - s + u));
  Eigen::VectorXd nu_scaled = chol.solve(rhs_nu);

  // unscale: x_orig = E x_scaled, nu_orig = sigma^-1 D nu_scaled
  Eigen::VectorXd x_orig = sc.col.asDiagonal() * x;
  Eigen::VectorXd s_orig = sc.col.asDiagonal() * s;
  Eigen::VectorXd nu_orig = (sc.row.asDiagonal() * nu_scaled) / sc.cost;

  out.x = x_orig;
  out.s = s_orig;
  out.nu = nu_orig;
  out.objective = problem.c.dot(x_orig) + problem.obj_constant;
  out.dual_objective = problem.b.dot(nu_orig) + problem.obj_constant;
  out.gap = std::fabs(out.objective - out.dual_objective) /
            (1.0 + std::fabs(out.objective) + std::fabs(out.dual_objective));

  // stationarity residual c - A'nu - lambda with lambda := -rho u (unscaled)
  {
    Eigen::VectorXd lambda = -(rho / sc.cost) * u.cwiseQuotient(sc.col);
    Eigen::VectorXd xi = problem.c - problem.A.transpose() * nu_orig - lambda;
    out.dual_feasibility =
        xi.lpNorm<Eigen::Infinity>() / (1.0 + problem.c.lpNorm<Eigen::Infinity>());
  }

  ConeLayout orig_layout(problem);
  out.primal_residual = std::max((problem.A * s_orig - problem.b).lpNorm<Eigen::Infinity>() /
                                     (1.0 + problem.b.lpNorm<Eigen::Infinity>()),
                                 cone_violation(orig_layout, x_orig));
  out.dual_residual = (x_orig - s_orig).lpNorm<Eigen::Infinity>();
  return out;
}

namespace {

// Layout of the moment-side conic form: x = [y; svec blocks], rows are
// y_0 = 1, the equality rows, then per-block linking rows.
ConicProblem moment_to_conic(const RelaxationProblem& rp) {
  ConicProblem p;
  p.n_free = rp.y.size();
  for (const auto& b : rp.blocks) p.psd_sizes.push_back(b.size);
  ConeLayout layout(p);

  std::vector<Eigen::Triplet<double>> trip;
  std::vector<double> rhs;
  int row = 0;

  trip.emplace_back(row, rp.y.y0_position(), 1.0);
  rhs.push_back(1.0);
  ++row;

  for (const auto& r : rp.eq_rows) {
    for (const auto& [pos, coeff] : r.coeffs) trip.emplace_back(row, pos, coeff);
    rhs.push_back(0.0);
    ++row;
  }

  for (std::size_t k = 0; k < rp.blocks.size(); ++k) {
    const auto& blk = rp.blocks[k];
    int off = layout.offsets[k];
    // one row per svec coordinate: s_rc - sum coeff * y = 0
    std::vector<std::vector<std::pair<int, double>>> acc(svec_length(blk.size));
    for (const auto& e : blk.entries) {
      double scale = (e.row == e.col) ? 1.0 : kSqrt2;
      acc[svec_index(blk.size, e.row, e.col)].emplace_back(e.ypos, scale * e.coeff);
    }
    for (int i = 0; i < svec_length(blk.size); ++i) {
      trip.emplace_back(row, off + i, 1.0);
      for (const auto& [pos, coeff] : acc[i]) trip.emplace_back(row, pos, -coeff);
      rhs.push_back(0.0);
      ++row;
    }
  }

  p.A.resize(row, layout.total);
  p.A.setFromTriplets(trip.begin(), trip.end());
  p.b = Eigen::Map<Eigen::VectorXd>(rhs.data(), row);
  p.c = Eigen::VectorXd::Zero(layout.total);
  for (const auto& [pos, coeff] : rp.objective.terms) p.c[pos] += coeff;
  return p;
}

}  // namespace

SdpSolution solve(const RelaxationProblem& rp, const SolverConfig& cfg) {
  if (rp.blocks.empty()) throw std::invalid_argument("relaxation has no blocks");
  ConicProblem conic = moment_to_conic(rp);
  ConicSolution cs = solve_conic(conic, cfg);

  SdpSolution sol;
  sol.status = cs.status;
  sol.iterations = cs.iterations;
  sol.y_values.assign(cs.x.data(), cs.x.data() + rp.y.size());
  ConeLayout layout(conic);
  for (std::size_t k = 0; k < rp.blocks.size(); ++k)
    sol.block_matrices.push_back(
        svec_to_mat(cs.s, layout.offsets[k], rp.blocks[k].size));
  sol.objective_value = cs.objective;
  sol.dual_objective = cs.dual_objective;
  sol.primal_residual = cs.primal_residual;
  sol.dual_residual = cs.dual_residual;
  sol.dual_feasibility = cs.dual_feasibility;
  sol.gap = cs.gap;
  sol.kkt_max = kkt_residual(rp, sol);
  return sol;
}

SdpSolution solve_sos(const SosProblem& sos, const SolverConfig& cfg) {
  ConicProblem p;
  p.n_free = sos.n_free;
  for (const auto& g : sos.gram_blocks) p.psd_sizes.push_back(g.size);
  ConeLayout layout(p);

  // one equality per y position except y_0: <A_alpha, Q> + a_alpha' z = c_alpha
  std::vector<Eigen::Triplet<double>> trip;
  const int m = sos.n_ypos - 1;
  p.c = Eigen::VectorXd::Zero(layout.total);
  p.b = Eigen::VectorXd::Zero(m);
  for (int alpha = 1; alpha < sos.n_ypos; ++alpha)
    p.b[alpha - 1] = sos.objective_coeffs[alpha];

  for (int z = 0; z < sos.n_free; ++z) {
    for (const auto& [pos, coeff] : sos.eq_columns[z]) {
      if (pos == 0)
        p.c[z] += coeff;
      else
        trip.emplace_back(pos - 1, z, coeff);
    }
  }
  for (std::size_t k = 0; k < sos.gram_blocks.size(); ++k) {
    const auto& blk = sos.gram_blocks[k];
    int off = layout.offsets[k];
    for (const auto& e : blk.entries) {
      double scale = (e.row == e.col) ? 1.0 : kSqrt2;
      int col = off + svec_index(blk.size, e.row, e.col);
      if (e.ypos == 0)
        p.c[col] += scale * e.coeff;
      else
        trip.emplace_back(e.ypos - 1, col, scale * e.coeff);
    }
  }
  p.A.resize(m, layout.total);
  p.A.setFromTriplets(trip.begin(), trip.end());
  p.obj_constant = -sos.objective_coeffs[0];

  ConicSolution cs = solve_conic(p, cfg);

  SdpSolution sol;
  sol.status = cs.status;
  sol.iterations = cs.iterations;
  for (std::size_t k = 0; k < sos.gram_blocks.size(); ++k)
    sol.block_matrices.push_back(
        svec_to_mat(cs.s, layout.offsets[k], sos.gram_blocks[k].size));
  // maximize b = -(min value)
  sol.objective_value = -cs.objective;
  sol.dual_objective = -cs.dual_objective;
  sol.primal_residual = cs.primal_residual;
  sol.dual_residual = cs.dual_residual;
  sol.dual_feasibility = cs.dual_feasibility;
  sol.gap = cs.gap;
  sol.kkt_max = std::max({cs.primal_residual, cs.dual_feasibility, cs.gap});
  return sol;
}

double kkt_residual(const RelaxationProblem& rp, const SdpSolution& sol) {
  double worst = 0.0;
  // primal equalities
  double eq_violation = std::fabs(sol.y_values.at(rp.y.y0_position()) - 1.0);
  for (const auto& r : rp.eq_rows) {
    double v = 0.0;
    for (const auto& [pos, coeff] : r.coeffs) v += coeff * sol.y_values[pos];
    eq_violation = std::max(eq_violation, std::fabs(v));
  }
  worst = std::max(worst, eq_violation);
  // PSD feasibility of the blocks evaluated at y
  for (const auto& blk : rp.blocks) {
    Eigen::MatrixXd m = block_value(blk, sol.y_values);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    double lam_min = es.eigenvalues().minCoeff();
    worst = std::max(worst, std::max(0.0, -lam_min) / (1.0 + m.norm()));
  }
  worst = std::max(worst, sol.dual_feasibility);
  double gap = std::fabs(sol.objective_value - sol.dual_objective) /
               (1.0 + std::fabs(sol.objective_value) + std::fabs(sol.dual_objective));
  worst = std::max(worst, gap);
  return worst;
}

Eigen::MatrixXd block_value(const RelaxationProblem::PsdBlock& block,
                            const std::vector<double>& y) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(block.size, block.size);
  for (const auto& e : block.entries) {
    m(e.row, e.col) += e.coeff * y[e.ypos];
    if (e.row != e.col) m(e.col, e.row) += e.coeff * y[e.ypos];
  }
  return m;
}

Eigen::MatrixXd clique_moment_matrix(const RelaxationProblem& rp, int l,
                                     const std::vector<double>& y) {
  const auto& basis = rp.clique_moment_bases.at(l);
  const int n = static_cast<int>(basis.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) {
      int pos = rp.y.position(basis[r] * basis[c]);
      double v = pos >= 0 ? y[pos] : 0.0;
      m(r, c) = m(c, r) = v;
    }
  return m;
}

}  // namespace msos
