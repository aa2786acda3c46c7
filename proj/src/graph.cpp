#include "msos/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace msos {

int Graph::nedges() const {
  int twice = 0;
  for (const auto& s : adj_) twice += static_cast<int>(s.size());
  return twice / 2;
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self loop");
  adj_.at(u).insert(v);
  adj_.at(v).insert(u);
}

void Graph::remove_edge(int u, int v) {
  adj_.at(u).erase(v);
  adj_.at(v).erase(u);
}

bool Graph::has_edge(int u, int v) const {
  return adj_.at(u).count(v) > 0;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < nvertices(); ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<int> EliminationOrder::sequence() const {
  std::vector<int> seq(position.size());
  for (std::size_t v = 0; v < position.size(); ++v) seq[position[v]] = static_cast<int>(v);
  return seq;
}

namespace {

// Shared elimination-game loop for MD / MF. pick_fill = false selects the
// minimum-degree vertex, true the minimum fill-in vertex; ties go to the
// lowest vertex index.
std::pair<Graph, EliminationOrder> eliminate(const Graph& g, bool pick_fill) {
  const int n = g.nvertices();
  Graph extended = g;
  Graph working = g;
  std::vector<bool> remaining(n, true);
  EliminationOrder order;
  order.position.assign(n, -1);

  for (int step = 0; step < n; ++step) {
    int best = -1;
    long best_score = 0;
    for (int v = 0; v < n; ++v) {
      if (!remaining[v]) continue;
      long score;
      if (pick_fill) {
        // missing edges among the remaining neighborhood
        std::vector<int> nb(working.neighbors(v).begin(), working.neighbors(v).end());
        score = 0;
        for (std::size_t i = 0; i < nb.size(); ++i)
          for (std::size_t j = i + 1; j < nb.size(); ++j)
            if (!working.has_edge(nb[i], nb[j])) ++score;
      } else {
        score = working.degree(v);
      }
      if (best < 0 || score < best_score) {
        best = v;
        best_score = score;
      }
    }
    order.position[best] = step;
    std::vector<int> nb(working.neighbors(best).begin(), working.neighbors(best).end());
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (!extended.has_edge(nb[i], nb[j])) {
          extended.add_edge(nb[i], nb[j]);
          working.add_edge(nb[i], nb[j]);
        }
    // retire the pivot from the working graph once its neighborhood is complete
    for (int u : nb) working.remove_edge(best, u);
    remaining[best] = false;
  }
  return {extended, order};
}

}  // namespace

std::pair<Graph, EliminationOrder> extend_md(const Graph& g) {
  return eliminate(g, false);
}

std::pair<Graph, EliminationOrder> extend_mf(const Graph& g) {
  return eliminate(g, true);
}

Graph extend_max(const Graph& g) {
  const int n = g.nvertices();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [u, v] : g.edges()) parent[find(u)] = find(v);

  std::vector<std::vector<int>> components(n);
  for (int v = 0; v < n; ++v) components[find(v)].push_back(v);

  Graph out(n);
  for (const auto& comp : components)
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t j = i + 1; j < comp.size(); ++j) out.add_edge(comp[i], comp[j]);
  return out;
}

namespace {

// Later neighbors of v under the order form a clique <=> the order is a
// perfect elimination order (zero fill along pi).
bool is_perfect_elimination_order(const Graph& g, const EliminationOrder& pi) {
  const int n = g.nvertices();
  if (static_cast<int>(pi.position.size()) != n) return false;
  for (int v = 0; v < n; ++v) {
    std::vector<int> later;
    for (int u : g.neighbors(v))
      if (pi.position[u] > pi.position[v]) later.push_back(u);
    for (std::size_t i = 0; i < later.size(); ++i)
      for (std::size_t j = i + 1; j < later.size(); ++j)
        if (!g.has_edge(later[i], later[j])) return false;
  }
  return true;
}

}  // namespace

bool is_chordal(const Graph& g) {
  // Maximum cardinality search yields a perfect elimination order iff the
  // graph is chordal; MD zero-fill is not an exact test (a chordal graph can
  // have a non-simplicial minimum-degree vertex).
  const int n = g.nvertices();
  if (n == 0) return true;
  std::vector<int> weight(n, 0);
  std::vector<bool> numbered(n, false);
  std::vector<int> mcs_order(n);  // visit sequence, numbered n-1 .. 0
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!numbered[v] && (best < 0 || weight[v] > weight[best])) best = v;
    numbered[best] = true;
    mcs_order[step] = best;
    for (int u : g.neighbors(best))
      if (!numbered[u]) ++weight[u];
  }
  EliminationOrder pi;
  pi.position.assign(n, 0);
  // reverse of the MCS visit sequence is the candidate elimination order
  for (int step = 0; step < n; ++step) pi.position[mcs_order[step]] = n - 1 - step;
  return is_perfect_elimination_order(g, pi);
}

CliqueSet maximal_cliques(const Graph& g, const EliminationOrder& pi) {
  if (!is_perfect_elimination_order(g, pi))
    throw std::invalid_argument(
        "maximal_cliques: order is not a perfect elimination order (graph not "
        "chordal along it)");
  const int n = g.nvertices();
  std::vector<std::vector<int>> candidates;
  candidates.reserve(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> c{v};
    for (int u : g.neighbors(v))
      if (pi.position[u] > pi.position[v]) c.push_back(u);
    std::sort(c.begin(), c.end());
    candidates.push_back(std::move(c));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a < b;
            });
  CliqueSet out;
  for (auto& c : candidates) {
    bool contained = false;
    for (const auto& kept : out.cliques) {
      if (std::includes(kept.begin(), kept.end(), c.begin(), c.end())) {
        contained = true;
        break;
      }
    }
    if (!contained) out.cliques.push_back(std::move(c));
  }
  return out;
}

CliqueSet maximal_cliques_bruteforce(const Graph& g) {
  const int n = g.nvertices();
  if (n > 20) throw std::invalid_argument("bruteforce clique enumeration limited to 20 vertices");
  std::vector<std::vector<int>> all;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> verts;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) verts.push_back(v);
    bool clique = true;
    for (std::size_t i = 0; i < verts.size() && clique; ++i)
      for (std::size_t j = i + 1; j < verts.size() && clique; ++j)
        if (!g.has_edge(verts[i], verts[j])) clique = false;
    if (clique) all.push_back(verts);
  }
  CliqueSet out;
  for (const auto& c : all) {
    bool maximal = true;
    for (const auto& d : all)
      if (d.size() > c.size() && std::includes(d.begin(), d.end(), c.begin(), c.end())) {
        maximal = false;
        break;
      }
    if (maximal) out.cliques.push_back(c);
  }
  std::sort(out.cliques.begin(), out.cliques.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a < b;
            });
  return out;
}

bool check_rip(const CliqueSet& cliques) {
  if (cliques.cliques.empty()) throw std::invalid_argument("check_rip: empty clique list");
  std::vector<std::set<int>> live;
  for (const auto& c : cliques.cliques) live.emplace_back(c.begin(), c.end());

  // Ear reduction: clique C is removable when C's intersection with the union
  // of the others is contained in a single other clique. Removing ears in any
  // order is confluent, so a greedy pass decides the property.
  while (live.size() > 1) {
    bool removed = false;
    for (std::size_t i = 0; i < live.size(); ++i) {
      std::set<int> inter;
      for (std::size_t j = 0; j < live.size(); ++j) {
        if (j == i) continue;
        for (int v : live[i])
          if (live[j].count(v)) inter.insert(v);
      }
      for (std::size_t j = 0; j < live.size(); ++j) {
        if (j == i) continue;
        if (std::includes(live[j].begin(), live[j].end(), inter.begin(), inter.end())) {
          live.erase(live.begin() + static_cast<long>(i));
          removed = true;
          break;
        }
      }
      if (removed) break;
    }
    if (!removed) return false;
  }
  return true;
}

std::string graph_to_json(const Graph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.nvertices();
  j["edges"] = nlohmann::ordered_json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j.dump(2) + "\n";
}

Graph graph_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Graph g(j.at("n").get<int>());
  for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  return g;
}

std::string graph_to_dot(const Graph& g, const std::vector<std::string>& names,
                         const CliqueSet* overlay) {
  static const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231",
                                   "#911eb4", "#46f0f0", "#f032e6", "#bcf60c",
                                   "#fabebe", "#008080"};
  auto name = [&](int v) {
    return v < static_cast<int>(names.size()) ? names[v] : "v" + std::to_string(v);
  };
  std::string out = "graph G {\n  node [style=filled, fillcolor=white];\n";
  if (overlay) {
    for (int k = 0; k < overlay->size(); ++k) {
      out += "  subgraph cluster_" + std::to_string(k) + " {\n";
      out += "    color=\"" + std::string(kPalette[k % 10]) + "\";\n";
      out += "    label=\"clique " + std::to_string(k + 1) + "\";\n   ";
      for (int v : overlay->cliques[k]) out += " \"" + name(v) + "\";";
      out += "\n  }\n";
    }
  }
  for (int v = 0; v < g.nvertices(); ++v) out += "  \"" + name(v) + "\";\n";
  for (auto [u, v] : g.edges())
    out += "  \"" + name(u) + "\" -- \"" + name(v) + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace msos
