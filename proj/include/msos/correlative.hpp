#ifndef MSOS_CORRELATIVE_HPP
#define MSOS_CORRELATIVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "msos/graph.hpp"
#include "msos/polynomial.hpp"

namespace msos {

enum class SparsityMode { kNon, kMax, kMd, kMf, kSelf };

std::string mode_name(SparsityMode m);
SparsityMode mode_from_name(const std::string& name);

/// Correlative sparsity options. SELF requires user-supplied variable cliques.
struct CsOption {
  SparsityMode mode = SparsityMode::kMd;
  std::optional<std::vector<std::vector<int>>> self_cliques;
};

/// Variable cliques I_l plus the per-clique constraint groupings.
struct CliqueDecomposition {
  std::vector<std::vector<int>> cliques;        // sorted variable indices
  std::vector<std::vector<int>> ineq_groups;    // indices into Pop.inequalities
  std::vector<std::vector<int>> eq_groups;      // indices into Pop.equalities
  bool rip_satisfied = true;
  std::vector<std::string> warnings;

  int nclique() const { return static_cast<int>(cliques.size()); }
  int clique_size(int l) const { return static_cast<int>(cliques[l].size()); }
};

/// CSP graph: vertices are variables, an edge joins two variables that appear
/// together in an objective term or in any single constraint.
Graph build_csp_graph(const Pop& pop);

/// Variable cliques from the selected extension, constraints assigned to the
/// lowest-index clique covering their variables. SELF cliques are validated
/// for coverage (hard error) and RIP (warning only).
CliqueDecomposition decompose(const Pop& pop, const CsOption& opt);

/// Summary of a decomposition: clique count, size histogram, per-clique
/// constraint counts, RIP status. JSON and human-readable forms.
std::string clique_report_json(const CliqueDecomposition& dec, const Pop& pop);
std::string clique_report_text(const CliqueDecomposition& dec, const Pop& pop);

}  // namespace msos

#endif
