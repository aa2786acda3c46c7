#ifndef MSOS_TERM_SPARSITY_HPP
#define MSOS_TERM_SPARSITY_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "msos/basis.hpp"
#include "msos/correlative.hpp"
#include "msos/graph.hpp"
#include "msos/polynomial.hpp"

namespace msos {

/// Term sparsity options. sparse_order is the TS iteration count k; partial
/// keeps every equality row while still masking the PSD matrices. SELF takes
/// a per-clique monomial list that is completed into one block.
struct TsOption {
  SparsityMode mode = SparsityMode::kNon;
  int sparse_order = 1;
  bool partial = false;
  std::optional<std::vector<std::vector<Monomial>>> self_bases;
};

/// Global support set A: all POP supports plus the implicit even-degree rule.
/// Equality-side masking tests only the stored part; the even closure exists
/// because SOS Gram diagonals contribute squares, which have no counterpart
/// in the free equality multipliers.
struct SupportSet {
  std::set<Monomial> stored;

  bool contains(const Monomial& m) const { return m.all_even() || stored.count(m) > 0; }
  bool contains_stored(const Monomial& m) const { return stored.count(m) > 0; }
};

SupportSet build_support_set(const Pop& pop);

/// Binary mask over the basis of one moment/localizing matrix, together with
/// the maximal cliques of its chordal TSP graph.
struct IneqMask {
  int clique = 0;       // l
  int constraint = -1;  // index into Pop.inequalities, -1 for the moment matrix
  MonomialBasis basis;  // [x(I_l)]_{d - d_j}
  Eigen::MatrixXi pattern;                   // symmetric 0/1, unit diagonal
  std::vector<std::vector<int>> ts_cliques;  // basis-row cliques, Grone blocks
};

/// Binary mask over the multiplier basis of one equality constraint.
struct EqMask {
  int clique = 0;
  int constraint = 0;   // index into Pop.equalities
  MonomialBasis basis;  // [x(I_l)]_{2d - d_j}
  std::vector<int> pattern;
};

struct MaskSet {
  int d = 0;
  TsOption options;
  std::vector<IneqMask> ineq_masks;  // per clique: moment mask, then grouped g_j
  std::vector<EqMask> eq_masks;
  int iterations = 1;             // sweeps actually performed
  bool reached_fixpoint = false;  // a further sweep would change nothing

  const IneqMask& moment_mask(int l) const;
  const IneqMask* find_ineq(int l, int constraint) const;
  const EqMask* find_eq(int l, int constraint) const;
};

/// TSP graph of constraint g_j on clique l: vertices are the basis monomials
/// of [x(I_l)]_{d-d_j}, an edge joins beta != gamma when some term of
/// g_j * x^beta * x^gamma lies in A. gj = -1 selects the moment matrix g0 = 1.
Graph support_extension_ineq(const Pop& pop, const CliqueDecomposition& dec,
                             const SupportSet& A, int d, int l, int gj);

/// Masks for every (clique, constraint) pair at relaxation order d, iterated
/// to the requested sparse order with monotone accumulation.
MaskSet build_masks(const Pop& pop, const CliqueDecomposition& dec,
                    const TsOption& ts, int d);

/// Sub-basis of [x(I_l)]_d kept by the moment mask: rows carrying at least
/// one unmasked off-diagonal entry (isolated TSP vertices are dropped).
MonomialBasis reduced_basis(const MaskSet& masks, int l);

std::string masks_to_json(const MaskSet& masks, const Pop& pop);

/// DOT rendering of one TSP graph pattern (without the forced diagonal).
std::string tsp_graph_to_dot(const IneqMask& mask, const Pop& pop);

}  // namespace msos

#endif
