#include "msos/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace msos {

namespace {

constexpr double kRankTol = 1e-6;      // relative eigenvalue cut
constexpr double kDegenerateTol = 1e-8;  // constant-entry normalization floor
constexpr double kWeightTieTol = 1e-6;
constexpr double kSpreadWarn = 0.1;

// lexicographic comparison used by the highest-weight tie break
bool lex_larger(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

int select_highest_weight(const ExtractionResult::CliqueAtoms& ca) {
  int best = 0;
  for (std::size_t j = 1; j < ca.weights.size(); ++j) {
    double w = ca.weights[j];
    if (w > ca.weights[best] + kWeightTieTol) {
      best = static_cast<int>(j);
    } else if (std::fabs(w - ca.weights[best]) <= kWeightTieTol &&
               lex_larger(ca.atoms[j], ca.atoms[best])) {
      best = static_cast<int>(j);
    }
  }
  return best;
}

// Combines the per-clique selected atoms into one point, averaging shared
// variables and recording the worst spread.
void assemble_point(const RelaxationProblem& rp, ExtractionResult& res) {
  const int n = rp.nvars;
  std::vector<double> sum(n, 0.0), lo(n, 0.0), hi(n, 0.0);
  std::vector<int> count(n, 0);
  for (std::size_t l = 0; l < rp.cliques.size(); ++l) {
    const auto& atom = res.per_clique[l].atoms[res.per_clique[l].selected];
    for (std::size_t k = 0; k < rp.cliques[l].size(); ++k) {
      int v = rp.cliques[l][k];
      double val = atom[static_cast<int>(k)];
      if (count[v] == 0) {
        lo[v] = hi[v] = val;
      } else {
        lo[v] = std::min(lo[v], val);
        hi[v] = std::max(hi[v], val);
      }
      sum[v] += val;
      ++count[v];
    }
  }
  res.point.assign(n, 0.0);
  res.shared_spread = 0.0;
  for (int v = 0; v < n; ++v) {
    if (count[v] > 0) res.point[v] = sum[v] / count[v];
    if (count[v] > 1) res.shared_spread = std::max(res.shared_spread, hi[v] - lo[v]);
  }
  if (res.shared_spread > kSpreadWarn)
    res.warnings.push_back("shared variables disagree across cliques by " +
                           std::to_string(res.shared_spread) +
                           "; the averaged point may be far from every clique's atom");
}

void finish(const Pop& pop, ExtractionResult& res) {
  res.feasibility_residual = feasibility_residual(pop, res.point);
  res.objective_at_point = evaluate(pop.objective, res.point);
}

// Top eigenvector of the degree-<=1 submatrix; within the near-top eigenspace
// the direction with the largest constant coordinate is taken, which makes the
// symmetric-mixture case deterministic.
Eigen::VectorXd naive_direction(const Eigen::MatrixXd& deg1) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(deg1);
  const auto& lam = es.eigenvalues();
  double lam_max = lam[lam.size() - 1];
  double tol = 1e-9 * std::max(1.0, std::fabs(lam_max));
  Eigen::VectorXd dir = Eigen::VectorXd::Zero(deg1.rows());
  for (int i = 0; i < lam.size(); ++i)
    if (lam[i] >= lam_max - tol) dir += es.eigenvectors().col(i)[0] * es.eigenvectors().col(i);
  if (dir.norm() < kDegenerateTol) dir = es.eigenvectors().col(lam.size() - 1);
  return dir;
}

ExtractionResult::CliqueAtoms naive_clique(const RelaxationProblem& rp, int l,
                                           const std::vector<double>& y) {
  const int nl = static_cast<int>(rp.cliques[l].size());
  const auto& basis = rp.clique_moment_bases[l];
  // graded basis: the degree-<=1 prefix is [1; variables], shorter at d = 0
  int head = 0;
  while (head < static_cast<int>(basis.size()) && basis[head].total_degree() <= 1)
    ++head;
  Eigen::MatrixXd moment = clique_moment_matrix(rp, l, y);
  Eigen::MatrixXd deg1 = moment.topLeftCorner(head, head);
  Eigen::VectorXd dir = naive_direction(deg1);
  if (std::fabs(dir[0]) < kDegenerateTol)
    throw std::runtime_error(
        "naive extraction degenerate: constant entry of the top eigenvector is "
        "zero in clique " + std::to_string(l + 1));
  dir /= dir[0];
  ExtractionResult::CliqueAtoms ca;
  Eigen::VectorXd atom = Eigen::VectorXd::Zero(nl);
  atom.head(head - 1) = dir.segment(1, head - 1);
  ca.atoms.push_back(atom);
  ca.weights.push_back(1.0);
  ca.selected = 0;
  return ca;
}

struct RobustOutcome {
  ExtractionResult::CliqueAtoms atoms;
  bool ok = false;
};

RobustOutcome robust_clique(const RelaxationProblem& rp, int l,
                            const std::vector<double>& y) {
  RobustOutcome out;
  const auto& basis = rp.clique_moment_bases[l];
  const auto& clique = rp.cliques[l];
  const int s = static_cast<int>(basis.size());
  const int nl = static_cast<int>(clique.size());

  Eigen::MatrixXd moment = clique_moment_matrix(rp, l, y);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(moment);
  double lam_max = es.eigenvalues().maxCoeff();
  if (!(lam_max > 0)) return out;

  std::vector<int> kept;
  for (int i = 0; i < s; ++i)
    if (es.eigenvalues()[i] >= kRankTol * lam_max) kept.push_back(i);
  const int r = static_cast<int>(kept.size());
  if (r == 0) return out;

  // W rows realize the moment matrix as a Gram matrix: <w_b, w_c> = M_bc
  Eigen::MatrixXd W(s, r);
  for (int k = 0; k < r; ++k)
    W.col(k) = es.eigenvectors().col(kept[k]) * std::sqrt(es.eigenvalues()[kept[k]]);

  // rows of degree <= d-1 support the variable shifts
  std::vector<int> low;
  for (int i = 0; i < s; ++i)
    if (basis[i].total_degree() <= rp.d - 1) low.push_back(i);
  if (static_cast<int>(low.size()) < r) return out;

  Eigen::MatrixXd W_low(static_cast<int>(low.size()), r);
  for (std::size_t i = 0; i < low.size(); ++i) W_low.row(static_cast<int>(i)) = W.row(low[i]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(W_low);
  if (qr.rank() < r) return out;  // multiplication operators not determined

  // one multiplication operator per clique variable
  std::vector<Eigen::MatrixXd> mult;
  for (int k = 0; k < nl; ++k) {
    Eigen::MatrixXd W_shift(static_cast<int>(low.size()), r);
    for (std::size_t i = 0; i < low.size(); ++i) {
      Monomial shifted = basis[low[i]] * Monomial::variable(clique[k]);
      auto it = std::find(basis.begin(), basis.end(), shifted);
      if (it == basis.end()) return out;
      W_shift.row(static_cast<int>(i)) = W.row(static_cast<int>(it - basis.begin()));
    }
    mult.push_back(qr.solve(W_shift));
  }

  // joint diagonalization via a fixed random combination
  std::mt19937 rng(20240817u);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd t(nl);
  for (int k = 0; k < nl; ++k) t[k] = gauss(rng);
  t.normalize();
  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(r, r);
  for (int k = 0; k < nl; ++k) N += t[k] * mult[k];

  Eigen::EigenSolver<Eigen::MatrixXd> jd(N);
  if (jd.info() != Eigen::Success) return out;
  Eigen::MatrixXcd P = jd.eigenvectors();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(P);
  if (!lu.isInvertible()) return out;
  Eigen::MatrixXcd P_inv = lu.inverse();

  std::vector<Eigen::VectorXd> atoms;
  for (int j = 0; j < r; ++j) {
    Eigen::VectorXd atom(nl);
    for (int k = 0; k < nl; ++k) {
      std::complex<double> v = (P_inv.row(j) * mult[k] * P.col(j))(0, 0);
      atom[k] = v.real();
    }
    bool dup = false;
    for (const auto& a : atoms)
      if ((a - atom).lpNorm<Eigen::Infinity>() < 1e-8) dup = true;
    if (!dup) atoms.push_back(atom);
  }
  if (atoms.empty()) return out;

  // weights from the degree-<=1 moments
  Eigen::MatrixXd vander(nl + 1, static_cast<int>(atoms.size()));
  Eigen::VectorXd rhs(nl + 1);
  int y0 = rp.y.position(Monomial::one());
  rhs[0] = y0 >= 0 ? y[y0] : 1.0;
  for (std::size_t j = 0; j < atoms.size(); ++j) vander(0, static_cast<int>(j)) = 1.0;
  for (int k = 0; k < nl; ++k) {
    int pos = rp.y.position(Monomial::variable(clique[k]));
    rhs[k + 1] = pos >= 0 ? y[pos] : 0.0;
    for (std::size_t j = 0; j < atoms.size(); ++j)
      vander(k + 1, static_cast<int>(j)) = atoms[j][k];
  }
  Eigen::VectorXd w = vander.colPivHouseholderQr().solve(rhs);

  out.atoms.atoms = std::move(atoms);
  out.atoms.weights.assign(w.data(), w.data() + w.size());
  for (auto& wi : out.atoms.weights) wi = std::max(wi, 0.0);
  out.atoms.selected = select_highest_weight(out.atoms);
  out.ok = true;
  return out;
}

}  // namespace

ExtractionResult extract_naive(const Pop& pop, const RelaxationProblem& rp,
                               const std::vector<double>& y) {
  ExtractionResult res;
  res.method = "naive";
  for (std::size_t l = 0; l < rp.cliques.size(); ++l)
    res.per_clique.push_back(naive_clique(rp, static_cast<int>(l), y));
  assemble_point(rp, res);
  finish(pop, res);
  return res;
}

ExtractionResult extract_robust(const Pop& pop, const RelaxationProblem& rp,
                                const std::vector<double>& y) {
  ExtractionResult res;
  res.method = "robust";
  for (std::size_t l = 0; l < rp.cliques.size(); ++l) {
    RobustOutcome outcome = robust_clique(rp, static_cast<int>(l), y);
    if (outcome.ok) {
      res.per_clique.push_back(std::move(outcome.atoms));
    } else {
      res.per_clique.push_back(naive_clique(rp, static_cast<int>(l), y));
      res.fallback_naive = true;
    }
  }
  if (res.fallback_naive)
    res.warnings.push_back(
        "multiplication-operator construction was rank-deficient in at least "
        "one clique; fell back to the naive scheme there");
  assemble_point(rp, res);
  finish(pop, res);
  return res;
}

double feasibility_residual(const Pop& pop, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& g : pop.inequalities)
    worst = std::max(worst, -std::min(0.0, evaluate(g, x)));
  for (const auto& h : pop.equalities)
    worst = std::max(worst, std::fabs(evaluate(h, x)));
  return worst;
}

Certificate certify(const Pop&, double lower, const ExtractionResult& result,
                    double tol) {
  Certificate cert;
  cert.residual = result.feasibility_residual;
  if (result.feasibility_residual <= tol) {
    cert.feasible = true;
    cert.upper = result.objective_at_point;
    cert.eta_g = suboptimality_gap(lower, cert.upper);
  }
  return cert;
}

std::string extraction_to_json(const ExtractionResult& res, const Pop& pop,
                               const Certificate* cert) {
  nlohmann::ordered_json j;
  j["method"] = res.method;
  nlohmann::ordered_json pt;
  for (int v = 0; v < pop.nvars(); ++v)
    pt[pop.variable_names[v]] = res.point[v];
  j["point"] = pt;
  j["objective_at_point"] = res.objective_at_point;
  j["feasibility_residual"] = res.feasibility_residual;
  j["shared_spread"] = res.shared_spread;
  j["fallback_naive"] = res.fallback_naive;
  j["per_clique"] = nlohmann::ordered_json::array();
  for (const auto& ca : res.per_clique) {
    nlohmann::ordered_json jc;
    jc["selected"] = ca.selected;
    jc["weights"] = ca.weights;
    nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
    for (const auto& a : ca.atoms)
      atoms.push_back(std::vector<double>(a.data(), a.data() + a.size()));
    jc["atoms"] = atoms;
    j["per_clique"].push_back(jc);
  }
  if (cert) {
    j["feasible"] = cert->feasible;
    if (cert->feasible) {
      j["upper"] = cert->upper;
      j["eta_g"] = cert->eta_g;
    }
  }
  j["warnings"] = res.warnings;
  return j.dump(2) + "\n";
}

}  // namespace msos
