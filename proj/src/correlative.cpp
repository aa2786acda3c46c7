#include "msos/correlative.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace msos {

std::string mode_name(SparsityMode m) {
  switch (m) {
    case SparsityMode::kNon: return "non";
    case SparsityMode::kMax: return "max";
    case SparsityMode::kMd: return "md";
    case SparsityMode::kMf: return "mf";
    case SparsityMode::kSelf: return "self";
  }
  return "?";
}

SparsityMode mode_from_name(const std::string& name) {
  if (name == "non") return SparsityMode::kNon;
  if (name == "max") return SparsityMode::kMax;
  if (name == "md") return SparsityMode::kMd;
  if (name == "mf") return SparsityMode::kMf;
  if (name == "self") return SparsityMode::kSelf;
  throw std::invalid_argument("unknown sparsity mode '" + name + "'");
}

Graph build_csp_graph(const Pop& pop) {
  Graph g(pop.nvars());
  // condition 1: two variables share an objective support term
  for (const auto& [m, c] : pop.objective.terms()) {
    const auto& exps = m.exponents();
    for (std::size_t i = 0; i < exps.size(); ++i)
      for (std::size_t j = i + 1; j < exps.size(); ++j)
        g.add_edge(exps[i].first, exps[j].first);
  }
  // conditions 2 and 3: two variables appear in the same constraint
  auto connect_vars = [&g](const Polynomial& p) {
    auto vars = p.var_set();
    std::vector<int> vs(vars.begin(), vars.end());
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (!g.has_edge(vs[i], vs[j])) g.add_edge(vs[i], vs[j]);
  };
  for (const auto& gk : pop.inequalities) connect_vars(gk);
  for (const auto& hk : pop.equalities) connect_vars(hk);
  return g;
}

namespace {

bool covered_by(const std::set<int>& vars, const std::vector<int>& clique) {
  return std::includes(clique.begin(), clique.end(), vars.begin(), vars.end());
}

// Drops cliques contained in another; stable order, first occurrence wins.
std::vector<std::vector<int>> prune_contained(std::vector<std::vector<int>> cliques) {
  for (auto& c : cliques) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  std::vector<std::vector<int>> out;
  for (const auto& c : cliques) {
    bool contained = false;
    for (const auto& other : cliques) {
      if (other.size() >= c.size() && other != c &&
          std::includes(other.begin(), other.end(), c.begin(), c.end())) {
        contained = true;
        break;
      }
    }
    if (!contained && std::find(out.begin(), out.end(), c) == out.end())
      out.push_back(c);
  }
  return out;
}

}  // namespace

CliqueDecomposition decompose(const Pop& pop, const CsOption& opt) {
  const int n = pop.nvars();
  CliqueDecomposition dec;

  switch (opt.mode) {
    case SparsityMode::kNon: {
      std::vector<int> all(n);
      for (int i = 0; i < n; ++i) all[i] = i;
      dec.cliques.push_back(all);
      break;
    }
    case SparsityMode::kMax: {
      Graph closed = extend_max(build_csp_graph(pop));
      // components, ordered by their smallest vertex
      std::vector<bool> seen(n, false);
      for (int v = 0; v < n; ++v) {
        if (seen[v]) continue;
        std::vector<int> comp{v};
        seen[v] = true;
        for (int u : closed.neighbors(v)) {
          comp.push_back(u);
          seen[u] = true;
        }
        std::sort(comp.begin(), comp.end());
        dec.cliques.push_back(std::move(comp));
      }
      break;
    }
    case SparsityMode::kMd:
    case SparsityMode::kMf: {
      Graph csp = build_csp_graph(pop);
      auto [chordal, order] =
          opt.mode == SparsityMode::kMd ? extend_md(csp) : extend_mf(csp);
      dec.cliques = maximal_cliques(chordal, order).cliques;
      break;
    }
    case SparsityMode::kSelf: {
      if (!opt.self_cliques || opt.self_cliques->empty())
        throw std::invalid_argument("SELF correlative sparsity requires cliques");
      for (const auto& c : *opt.self_cliques)
        for (int v : c)
          if (v < 0 || v >= n)
            throw std::out_of_range("SELF clique names a variable out of range");
      dec.cliques = prune_contained(*opt.self_cliques);
      break;
    }
  }

  // Variables absent from every clique still need a home in the relaxation.
  {
    std::vector<bool> seen(n, false);
    for (const auto& c : dec.cliques)
      for (int v : c) seen[v] = true;
    for (int v = 0; v < n; ++v)
      if (!seen[v]) dec.cliques.push_back({v});
  }

  // Objective support terms must each fit inside one clique.
  for (const auto& [m, c] : pop.objective.terms()) {
    std::set<int> vars;
    for (const auto& [v, e] : m.exponents()) vars.insert(v);
    bool ok = false;
    for (const auto& clique : dec.cliques)
      if (covered_by(vars, clique)) { ok = true; break; }
    if (!ok)
      throw std::invalid_argument(
          "objective term " + m.str(pop.variable_names) +
          " spans no single clique; repair the supplied cliques");
  }

  // Constraints go to the lowest-index clique covering their variables.
  dec.ineq_groups.assign(dec.cliques.size(), {});
  dec.eq_groups.assign(dec.cliques.size(), {});
  auto assign = [&](const Polynomial& p, int idx, bool is_eq, const char* kind) {
    auto vars = p.var_set();
    for (std::size_t l = 0; l < dec.cliques.size(); ++l) {
      if (covered_by(vars, dec.cliques[l])) {
        (is_eq ? dec.eq_groups[l] : dec.ineq_groups[l]).push_back(idx);
        return;
      }
    }
    throw std::invalid_argument(std::string(kind) + " constraint #" +
                                std::to_string(idx + 1) +
                                " is not covered by any clique");
  };
  for (std::size_t j = 0; j < pop.inequalities.size(); ++j)
    assign(pop.inequalities[j], static_cast<int>(j), false, "inequality");
  for (std::size_t j = 0; j < pop.equalities.size(); ++j)
    assign(pop.equalities[j], static_cast<int>(j), true, "equality");

  CliqueSet cs;
  cs.cliques = dec.cliques;
  dec.rip_satisfied = check_rip(cs);
  if (!dec.rip_satisfied)
    dec.warnings.push_back(
        "cliques do not satisfy the running intersection property; the "
        "relaxation stays valid but convergence guarantees are weakened");
  return dec;
}

namespace {

nlohmann::ordered_json report_json(const CliqueDecomposition& dec, const Pop& pop) {
  nlohmann::ordered_json j;
  j["p"] = dec.nclique();
  std::map<int, int> hist;
  for (const auto& c : dec.cliques) hist[static_cast<int>(c.size())]++;
  nlohmann::ordered_json jh;
  for (auto [size, count] : hist) jh[std::to_string(size)] = count;
  j["size_histogram"] = jh;
  j["rip"] = dec.rip_satisfied;
  j["cliques"] = nlohmann::ordered_json::array();
  for (int l = 0; l < dec.nclique(); ++l) {
    nlohmann::ordered_json jc;
    nlohmann::ordered_json names = nlohmann::ordered_json::array();
    for (int v : dec.cliques[l]) names.push_back(pop.variable_names.at(v));
    jc["vars"] = names;
    jc["n_ineq"] = dec.ineq_groups[l].size();
    jc["n_eq"] = dec.eq_groups[l].size();
    j["cliques"].push_back(jc);
  }
  j["warnings"] = dec.warnings;
  return j;
}

}  // namespace

std::string clique_report_json(const CliqueDecomposition& dec, const Pop& pop) {
  return report_json(dec, pop).dump(2) + "\n";
}

std::string clique_report_text(const CliqueDecomposition& dec, const Pop& pop) {
  std::string out = "cliques: " + std::to_string(dec.nclique()) + "\n";
  std::map<int, int> hist;
  for (const auto& c : dec.cliques) hist[static_cast<int>(c.size())]++;
  out += "size histogram:";
  for (auto [size, count] : hist)
    out += " " + std::to_string(size) + "x" + std::to_string(count);
  out += "\nRIP: ";
  out += dec.rip_satisfied ? "yes" : "no";
  out += "\n";
  for (int l = 0; l < dec.nclique(); ++l) {
    out += "  I" + std::to_string(l + 1) + " = {";
    for (std::size_t k = 0; k < dec.cliques[l].size(); ++k) {
      if (k) out += ", ";
      out += pop.variable_names.at(dec.cliques[l][k]);
    }
    out += "}  ineq=" + std::to_string(dec.ineq_groups[l].size()) +
           " eq=" + std::to_string(dec.eq_groups[l].size()) + "\n";
  }
  for (const auto& w : dec.warnings) out += "warning: " + w + "\n";
  return out;
}

}  // namespace msos
