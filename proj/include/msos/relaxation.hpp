#ifndef MSOS_RELAXATION_HPP
#define MSOS_RELAXATION_HPP

#include <string>
#include <vector>

#include "msos/correlative.hpp"
#include "msos/moment.hpp"
#include "msos/polynomial.hpp"
#include "msos/term_sparsity.hpp"

namespace msos {

/// Minimum relaxation order:
/// max(ceil(deg f / 2), max_j ceil(deg g_j / 2), max_j ceil(deg h_j / 2)).
int compute_dmin(const Pop& pop);

/// Block-structured moment relaxation over the shared pseudo-moment vector y.
/// Entries are linear in y; y_0 = 1 is an implicit normalization (position 0).
struct RelaxationProblem {
  struct BlockEntry {
    int row, col;  // row <= col
    int ypos;
    double coeff;
  };
  struct PsdBlock {
    std::string label;
    int size = 0;
    int clique = 0;
    int constraint = -1;  // -1: moment block, else index into Pop.inequalities
    std::vector<Monomial> row_monomials;  // basis labeling the rows
    std::vector<BlockEntry> entries;
  };
  struct EqRow {
    std::string label;
    int clique = 0;
    int constraint = 0;
    std::vector<std::pair<int, double>> coeffs;  // sum coeff * y = 0
  };

  MomentSequence y;
  std::vector<PsdBlock> blocks;
  std::vector<EqRow> eq_rows;
  LinForm objective;

  // provenance
  int d = 0;
  int nvars = 0;
  std::vector<std::string> variable_names;
  std::vector<std::vector<int>> cliques;
  std::vector<std::vector<Monomial>> clique_moment_bases;  // full [x(I_l)]_d
  std::string cs_mode, ts_mode;

  /// Structural fingerprint used by the bit-identity tests.
  std::string structure_signature() const;
};

RelaxationProblem assemble_dense(const Pop& pop, int d);
RelaxationProblem assemble_cs(const Pop& pop, const CliqueDecomposition& dec, int d);
RelaxationProblem assemble_cs_ts(const Pop& pop, const CliqueDecomposition& dec,
                                 const MaskSet& masks, int d);

/// Conic dual of a moment relaxation: one Gram PSD variable per primal block,
/// one free multiplier per primal equality row, the lower bound folded into
/// the y_0 coefficient-matching equation. One dual equality per registered
/// y position except y_0.
struct SosProblem {
  struct GramBlock {
    std::string label;
    int size = 0;
    std::vector<RelaxationProblem::BlockEntry> entries;  // same A_alpha data
  };

  std::vector<GramBlock> gram_blocks;
  int n_free = 0;  // one multiplier per primal equality row
  // dual equality r (for y position r+1): sum_B <A_B,r+1, Q_B> + sum a_j z_j = c_r+1
  // stored implicitly through the shared entry data; see to_conic in solver.
  std::vector<std::vector<std::pair<int, double>>> eq_columns;  // per free var: (ypos, coeff)
  std::vector<double> objective_coeffs;  // c over y positions (position 0 = constant)
  int n_ypos = 0;

  int n_dual_equalities() const { return n_ypos - 1; }
};

SosProblem dualize(const RelaxationProblem& rp);

/// Native JSON dump with monomial labels, for debugging.
std::string relaxation_to_json(const RelaxationProblem& rp);

}  // namespace msos

#endif
