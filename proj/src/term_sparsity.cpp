#include "msos/term_sparsity.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace msos {

SupportSet build_support_set(const Pop& pop) {
  SupportSet A;
  for (const auto& [m, c] : pop.objective.terms()) A.stored.insert(m);
  for (const auto& g : pop.inequalities)
    for (const auto& [m, c] : g.terms()) A.stored.insert(m);
  for (const auto& h : pop.equalities)
    for (const auto& [m, c] : h.terms()) A.stored.insert(m);
  return A;
}

const IneqMask& MaskSet::moment_mask(int l) const {
  const IneqMask* m = find_ineq(l, -1);
  if (!m) throw std::out_of_range("no moment mask for clique");
  return *m;
}

const IneqMask* MaskSet::find_ineq(int l, int constraint) const {
  for (const auto& m : ineq_masks)
    if (m.clique == l && m.constraint == constraint) return &m;
  return nullptr;
}

const EqMask* MaskSet::find_eq(int l, int constraint) const {
  for (const auto& m : eq_masks)
    if (m.clique == l && m.constraint == constraint) return &m;
  return nullptr;
}

namespace {

int ineq_half_degree(const Pop& pop, int gj) {
  if (gj < 0) return 0;  // g0 = 1
  return (pop.inequalities.at(gj).degree() + 1) / 2;
}

std::vector<Monomial> ineq_support(const Pop& pop, int gj) {
  if (gj < 0) return {Monomial::one()};
  return pop.inequalities.at(gj).support();
}

}  // namespace

Graph support_extension_ineq(const Pop& pop, const CliqueDecomposition& dec,
                             const SupportSet& A, int d, int l, int gj) {
  MonomialBasis basis = monomial_basis(dec.cliques.at(l), d - ineq_half_degree(pop, gj));
  std::vector<Monomial> supp = ineq_support(pop, gj);
  Graph g(basis.size());
  for (int b = 0; b < basis.size(); ++b) {
    for (int c = b + 1; c < basis.size(); ++c) {
      Monomial prod = basis[b] * basis[c];
      for (const auto& mu : supp) {
        if (A.contains(mu * prod)) {
          g.add_edge(b, c);
          break;
        }
      }
    }
  }
  return g;
}

namespace {

// Chordal-extends a TSP graph according to the TS mode and returns the mask
// pattern (adjacency + forced unit diagonal) and its Grone blocks.
void finish_mask(IneqMask& mask, const Graph& tsp, SparsityMode mode) {
  const int m = tsp.nvertices();
  mask.pattern = Eigen::MatrixXi::Zero(m, m);
  mask.ts_cliques.clear();

  Graph extended(m);
  switch (mode) {
    case SparsityMode::kNon: {
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) extended.add_edge(i, j);
      std::vector<int> all(m);
      for (int i = 0; i < m; ++i) all[i] = i;
      mask.ts_cliques.push_back(all);
      break;
    }
    case SparsityMode::kMax: {
      extended = extend_max(tsp);
      std::vector<bool> seen(m, false);
      for (int v = 0; v < m; ++v) {
        if (seen[v]) continue;
        std::vector<int> comp{v};
        seen[v] = true;
        for (int u : extended.neighbors(v)) {
          comp.push_back(u);
          seen[u] = true;
        }
        std::sort(comp.begin(), comp.end());
        mask.ts_cliques.push_back(std::move(comp));
      }
      break;
    }
    case SparsityMode::kMd:
    case SparsityMode::kMf: {
      auto [chordal, order] = mode == SparsityMode::kMd ? extend_md(tsp) : extend_mf(tsp);
      extended = chordal;
      mask.ts_cliques = maximal_cliques(chordal, order).cliques;
      break;
    }
    case SparsityMode::kSelf:
      throw std::logic_error("SELF handled before finish_mask");
  }

  for (auto [u, v] : extended.edges()) {
    mask.pattern(u, v) = 1;
    mask.pattern(v, u) = 1;
  }
  for (int i = 0; i < m; ++i) mask.pattern(i, i) = 1;
}

// SELF: the listed sub-basis is completed into one block; everything else
// keeps only its diagonal.
void finish_mask_self(IneqMask& mask, const std::vector<Monomial>& listed) {
  const int m = mask.basis.size();
  mask.pattern = Eigen::MatrixXi::Identity(m, m);
  std::vector<int> block;
  for (int i = 0; i < m; ++i)
    if (std::find(listed.begin(), listed.end(), mask.basis[i]) != listed.end())
      block.push_back(i);
  for (std::size_t a = 0; a < block.size(); ++a)
    for (std::size_t b = a + 1; b < block.size(); ++b) {
      mask.pattern(block[a], block[b]) = 1;
      mask.pattern(block[b], block[a]) = 1;
    }
  mask.ts_cliques.clear();
  if (!block.empty()) mask.ts_cliques.push_back(block);
  for (int i = 0; i < m; ++i)
    if (std::find(block.begin(), block.end(), i) == block.end())
      mask.ts_cliques.push_back({i});
}

// One full sweep at the current support set. prev carries the accumulated
// pattern of the previous sweep so masks stay monotone under the heuristic
// chordal extensions.
MaskSet sweep(const Pop& pop, const CliqueDecomposition& dec, const TsOption& ts,
              int d, const SupportSet& A, const MaskSet* prev) {
  MaskSet out;
  out.d = d;
  out.options = ts;

  for (int l = 0; l < dec.nclique(); ++l) {
    std::vector<int> gjs{-1};
    for (int j : dec.ineq_groups[l]) gjs.push_back(j);
    for (int gj : gjs) {
      IneqMask mask;
      mask.clique = l;
      mask.constraint = gj;
      mask.basis = monomial_basis(dec.cliques[l], d - ineq_half_degree(pop, gj));
      if (ts.mode == SparsityMode::kSelf) {
        if (!ts.self_bases || static_cast<int>(ts.self_bases->size()) <= l)
          throw std::invalid_argument("SELF term sparsity requires a basis per clique");
        MonomialBasis full = monomial_basis(dec.cliques[l], d);
        for (const auto& mono : (*ts.self_bases)[l]) {
          if (std::find(full.members.begin(), full.members.end(), mono) ==
              full.members.end())
            throw std::invalid_argument("SELF basis monomial " + mono.str() +
                                        " is not in the clique's full basis");
        }
        finish_mask_self(mask, (*ts.self_bases)[l]);
      } else {
        Graph tsp = support_extension_ineq(pop, dec, A, d, l, gj);
        if (prev) {
          const IneqMask* p = prev->find_ineq(l, gj);
          if (p) {
            for (int a = 0; a < tsp.nvertices(); ++a)
              for (int b = a + 1; b < tsp.nvertices(); ++b)
                if (p->pattern(a, b) && !tsp.has_edge(a, b)) tsp.add_edge(a, b);
          }
        }
        finish_mask(mask, tsp, ts.mode);
      }
      out.ineq_masks.push_back(std::move(mask));
    }

    for (int j : dec.eq_groups[l]) {
      EqMask mask;
      mask.clique = l;
      mask.constraint = j;
      int dh = pop.equalities.at(j).degree();
      mask.basis = monomial_basis(dec.cliques[l], 2 * d - dh);
      mask.pattern.assign(mask.basis.size(), 0);
      if (ts.mode == SparsityMode::kNon || ts.partial) {
        std::fill(mask.pattern.begin(), mask.pattern.end(), 1);
      } else {
        auto supp = pop.equalities[j].support();
        for (int b = 0; b < mask.basis.size(); ++b) {
          for (const auto& mu : supp) {
            if (A.contains_stored(mu * mask.basis[b])) {
              mask.pattern[b] = 1;
              break;
            }
          }
        }
        if (prev) {
          const EqMask* p = prev->find_eq(l, j);
          if (p)
            for (int b = 0; b < mask.basis.size(); ++b)
              if (p->pattern[b]) mask.pattern[b] = 1;
        }
      }
      out.eq_masks.push_back(std::move(mask));
    }
  }
  return out;
}

bool same_patterns(const MaskSet& a, const MaskSet& b) {
  if (a.ineq_masks.size() != b.ineq_masks.size() ||
      a.eq_masks.size() != b.eq_masks.size())
    return false;
  for (std::size_t i = 0; i < a.ineq_masks.size(); ++i)
    if (a.ineq_masks[i].pattern != b.ineq_masks[i].pattern) return false;
  for (std::size_t i = 0; i < a.eq_masks.size(); ++i)
    if (a.eq_masks[i].pattern != b.eq_masks[i].pattern) return false;
  return true;
}

// Support-extension step between sweeps: every unmasked entry contributes the
// supports of its matrix/vector polynomial back into A.
void augment_support(const Pop& pop, const MaskSet& masks, SupportSet& A) {
  for (const auto& mask : masks.ineq_masks) {
    auto supp = ineq_support(pop, mask.constraint);
    for (int a = 0; a < mask.basis.size(); ++a)
      for (int b = a; b < mask.basis.size(); ++b) {
        if (!mask.pattern(a, b)) continue;
        Monomial prod = mask.basis[a] * mask.basis[b];
        for (const auto& mu : supp) A.stored.insert(mu * prod);
      }
  }
  for (const auto& mask : masks.eq_masks) {
    auto supp = pop.equalities.at(mask.constraint).support();
    for (int b = 0; b < mask.basis.size(); ++b) {
      if (!mask.pattern[b]) continue;
      for (const auto& mu : supp) A.stored.insert(mu * mask.basis[b]);
    }
  }
}

}  // namespace

MaskSet build_masks(const Pop& pop, const CliqueDecomposition& dec,
                    const TsOption& ts, int d) {
  if (ts.sparse_order < 1) throw std::invalid_argument("sparse order must be >= 1");
  SupportSet A = build_support_set(pop);
  MaskSet current = sweep(pop, dec, ts, d, A, nullptr);
  current.iterations = 1;
  for (int k = 2; k <= ts.sparse_order; ++k) {
    augment_support(pop, current, A);
    MaskSet next = sweep(pop, dec, ts, d, A, &current);
    if (same_patterns(next, current)) {
      current.reached_fixpoint = true;
      return current;
    }
    next.iterations = k;
    current = std::move(next);
  }
  // probe whether one more sweep would change anything
  SupportSet probe = A;
  augment_support(pop, current, probe);
  MaskSet next = sweep(pop, dec, ts, d, probe, &current);
  current.reached_fixpoint = same_patterns(next, current);
  return current;
}

MonomialBasis reduced_basis(const MaskSet& masks, int l) {
  const IneqMask& mm = masks.moment_mask(l);
  MonomialBasis out;
  out.var_set = mm.basis.var_set;
  out.degree_bound = mm.basis.degree_bound;
  const int m = mm.basis.size();
  for (int i = 0; i < m; ++i) {
    bool connected = false;
    for (int j = 0; j < m && !connected; ++j)
      if (j != i && mm.pattern(i, j)) connected = true;
    if (connected || m == 1) out.members.push_back(mm.basis[i]);
  }
  if (out.members.empty()) out.members = mm.basis.members;
  return out;
}

std::string masks_to_json(const MaskSet& masks, const Pop& pop) {
  nlohmann::ordered_json j;
  j["d"] = masks.d;
  j["sparse_order"] = masks.iterations;
  j["reached_fixpoint"] = masks.reached_fixpoint;
  j["ineq_masks"] = nlohmann::ordered_json::array();
  for (const auto& mask : masks.ineq_masks) {
    nlohmann::ordered_json jm;
    jm["clique"] = mask.clique + 1;
    jm["constraint"] = mask.constraint < 0 ? "moment" : std::to_string(mask.constraint + 1);
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    for (const auto& mono : mask.basis.members) basis.push_back(mono.str(pop.variable_names));
    jm["basis"] = basis;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int r = 0; r < mask.pattern.rows(); ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int c = 0; c < mask.pattern.cols(); ++c) row.push_back(mask.pattern(r, c));
      rows.push_back(row);
    }
    jm["pattern"] = rows;
    j["ineq_masks"].push_back(jm);
  }
  j["eq_masks"] = nlohmann::ordered_json::array();
  for (const auto& mask : masks.eq_masks) {
    nlohmann::ordered_json jm;
    jm["clique"] = mask.clique + 1;
    jm["constraint"] = mask.constraint + 1;
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    for (const auto& mono : mask.basis.members) basis.push_back(mono.str(pop.variable_names));
    jm["basis"] = basis;
    jm["pattern"] = mask.pattern;
    j["eq_masks"].push_back(jm);
  }
  return j.dump(2) + "\n";
}

std::string tsp_graph_to_dot(const IneqMask& mask, const Pop& pop) {
  std::string out = "graph TSP {\n";
  for (int i = 0; i < mask.basis.size(); ++i)
    out += "  \"" + mask.basis[i].str(pop.variable_names) + "\";\n";
  for (int i = 0; i < mask.basis.size(); ++i)
    for (int j = i + 1; j < mask.basis.size(); ++j)
      if (mask.pattern(i, j))
        out += "  \"" + mask.basis[i].str(pop.variable_names) + "\" -- \"" +
               mask.basis[j].str(pop.variable_names) + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace msos
