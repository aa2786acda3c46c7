#ifndef MSOS_GRAPH_HPP
#define MSOS_GRAPH_HPP

#include <set>
#include <string>
#include <vector>

namespace msos {

/// Simple undirected graph with sorted neighbor sets, no self-loops.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int nvertices) : adj_(nvertices) {}

  int nvertices() const { return static_cast<int>(adj_.size()); }
  int nedges() const;

  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::set<int>& neighbors(int v) const { return adj_.at(v); }
  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

  std::vector<std::pair<int, int>> edges() const;  // u < v, sorted

  bool operator==(const Graph& rhs) const { return adj_ == rhs.adj_; }

 private:
  std::vector<std::set<int>> adj_;
};

/// Position of each vertex in the elimination sequence (0-based bijection).
struct EliminationOrder {
  std::vector<int> position;  // position[v] = step at which v is eliminated

  /// Vertices listed in elimination sequence order.
  std::vector<int> sequence() const;
};

/// Vertex-index cliques; produced maximal and mutually non-contained.
struct CliqueSet {
  std::vector<std::vector<int>> cliques;  // each sorted ascending

  int size() const { return static_cast<int>(cliques.size()); }
};

/// Exact chordality test via maximum cardinality search and a perfect
/// elimination order check.
bool is_chordal(const Graph& g);

/// Minimum-degree chordal extension: repeatedly eliminate the minimum-degree
/// remaining vertex (ties to the lowest index) and complete its unprocessed
/// neighborhood. Returns the chordal supergraph and the elimination order.
std::pair<Graph, EliminationOrder> extend_md(const Graph& g);

/// Minimum-fill variant: the pivot minimizes the number of missing edges
/// among its remaining neighbors.
std::pair<Graph, EliminationOrder> extend_mf(const Graph& g);

/// Maximal chordal extension: every connected component is completed.
Graph extend_max(const Graph& g);

/// Maximal cliques of a chordal graph from a perfect elimination order:
/// candidates {v} + later neighbors, kept in descending size order when not
/// contained in an already kept clique. Throws if pi is not perfect for g.
CliqueSet maximal_cliques(const Graph& g, const EliminationOrder& pi);

/// Brute-force maximal clique enumeration for small graphs (test oracle and
/// SELF-clique tooling); no chordality assumption.
CliqueSet maximal_cliques_bruteforce(const Graph& g);

/// Running intersection property of a clique list, decided by ear reduction:
/// repeatedly remove a clique whose intersection with the union of the rest
/// lies inside a single other clique.
bool check_rip(const CliqueSet& cliques);

/// JSON exchange: {"n": int, "edges": [[u,v], ...]} with 0-based vertices.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

/// DOT emission; optional clique overlay rendered as colored vertex groups.
std::string graph_to_dot(const Graph& g, const std::vector<std::string>& names,
                         const CliqueSet* overlay = nullptr);

}  // namespace msos

#endif
