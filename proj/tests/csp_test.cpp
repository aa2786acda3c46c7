#include <doctest.h>

#include <algorithm>
#include <set>

#include "msos/correlative.hpp"
#include "msos/models.hpp"

using namespace msos;

namespace {

int var_index(const Pop& pop, const std::string& name) {
  for (int i = 0; i < pop.nvars(); ++i)
    if (pop.variable_names[i] == name) return i;
  REQUIRE(false);
  return -1;
}

std::vector<int> clique_of(const Pop& pop, std::vector<std::string> names) {
  std::vector<int> out;
  for (const auto& n : names) out.push_back(var_index(pop, n));
  std::sort(out.begin(), out.end());
  return out;
}

bool has_clique(const CliqueDecomposition& dec, const std::vector<int>& clique) {
  return std::find(dec.cliques.begin(), dec.cliques.end(), clique) != dec.cliques.end();
}

}  // namespace

TEST_CASE("CSP graph edge conditions") {
  // objective x1^2 + x2^2: no mixed terms, no edges
  Pop sep = parse_pop("vars x1 x2; min x1^2 + x2^2;");
  CHECK(build_csp_graph(sep).nedges() == 0);

  // one support element with three positive exponents forms a triangle
  Pop tri = parse_pop("vars x1 x2 x3; min x1*x2*x3;");
  Graph g = build_csp_graph(tri);
  CHECK(g.nedges() == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(0, 2));
  CHECK(g.has_edge(1, 2));

  // constraints connect their whole variable set
  Pop con = parse_pop("vars a b c; min a; s.t. a*b - c >= 0;");
  Graph gc = build_csp_graph(con);
  CHECK(gc.nedges() == 3);
}

TEST_CASE("double integrator CSP graph has the x0-v0 edge and step cliques") {
  DoubleIntegratorParams p;
  p.N = 1;
  Pop pop = make_double_integrator(p);
  Graph csp = build_csp_graph(pop);
  // x1 - x0 = dt * v0 makes {x0, x1, v0} complete
  CHECK(csp.has_edge(var_index(pop, "x0"), var_index(pop, "v0")));
  CHECK(csp.has_edge(var_index(pop, "x0"), var_index(pop, "x1")));
  CHECK(is_chordal(csp));

  CsOption md;
  md.mode = SparsityMode::kMd;
  CliqueDecomposition dec = decompose(pop, md);
  CHECK(has_clique(dec, clique_of(pop, {"x0", "v0", "lam1_0", "lam2_0"})));
  CHECK(has_clique(dec, clique_of(pop, {"x0", "x1", "v0"})));
  CHECK(dec.rip_satisfied);
}

TEST_CASE("NON yields the single full clique") {
  Pop pop = parse_pop("vars x y z; min x*y; s.t. z >= 0;");
  CsOption non;
  non.mode = SparsityMode::kNon;
  CliqueDecomposition dec = decompose(pop, non);
  REQUIRE(dec.nclique() == 1);
  CHECK(dec.cliques[0] == std::vector<int>{0, 1, 2});
  CHECK(dec.ineq_groups[0] == std::vector<int>{0});
}

TEST_CASE("separable POPs split into their components") {
  Pop pop = parse_pop(
      "vars a b c d; min a^2 + a*b + c*d;"
      "s.t. a + b >= 0; c*d == 1;");
  CsOption md;
  md.mode = SparsityMode::kMd;
  CliqueDecomposition dec = decompose(pop, md);
  REQUIRE(dec.nclique() == 2);
  CHECK(has_clique(dec, {0, 1}));
  CHECK(has_clique(dec, {2, 3}));

  CsOption mx;
  mx.mode = SparsityMode::kMax;
  CliqueDecomposition dmx = decompose(pop, mx);
  REQUIRE(dmx.nclique() == 2);
  CHECK(has_clique(dmx, {0, 1}));
  CHECK(has_clique(dmx, {2, 3}));
}

TEST_CASE("constraint assignment is total, unique, deterministic") {
  DoubleIntegratorParams p;
  p.N = 3;
  Pop pop = make_double_integrator(p);
  CsOption md;
  md.mode = SparsityMode::kMd;
  CliqueDecomposition dec = decompose(pop, md);

  std::vector<int> ineq_seen(pop.inequalities.size(), 0);
  std::vector<int> eq_seen(pop.equalities.size(), 0);
  for (int l = 0; l < dec.nclique(); ++l) {
    for (int j : dec.ineq_groups[l]) {
      ineq_seen[j]++;
      for (int v : pop.inequalities[j].var_set())
        CHECK(std::binary_search(dec.cliques[l].begin(), dec.cliques[l].end(), v));
    }
    for (int j : dec.eq_groups[l]) {
      eq_seen[j]++;
      for (int v : pop.equalities[j].var_set())
        CHECK(std::binary_search(dec.cliques[l].begin(), dec.cliques[l].end(), v));
    }
  }
  for (int c : ineq_seen) CHECK(c == 1);
  for (int c : eq_seen) CHECK(c == 1);

  CliqueDecomposition again = decompose(pop, md);
  CHECK(again.cliques == dec.cliques);
  CHECK(again.ineq_groups == dec.ineq_groups);
  CHECK(again.eq_groups == dec.eq_groups);

  // every CSP edge inside some clique
  Graph csp = build_csp_graph(pop);
  for (auto [u, v] : csp.edges()) {
    bool inside = false;
    for (const auto& c : dec.cliques)
      inside |= std::binary_search(c.begin(), c.end(), u) &&
                std::binary_search(c.begin(), c.end(), v);
    CHECK(inside);
  }
}

TEST_CASE("unused variables get singleton cliques") {
  Pop pop = parse_pop("vars x y z; min x^2; s.t. x - 1 >= 0;");
  CsOption md;
  md.mode = SparsityMode::kMd;
  CliqueDecomposition dec = decompose(pop, md);
  CHECK(has_clique(dec, {1}));
  CHECK(has_clique(dec, {2}));
}

TEST_CASE("SELF cliques: validation, idempotence, RIP warning") {
  Pop pop = parse_pop("vars a b c; min a*b + b*c; s.t. a >= 0; a*c >= 0;");

  CsOption good;
  good.mode = SparsityMode::kSelf;
  good.self_cliques = {{0, 1}, {1, 2}, {0, 2}};
  CliqueDecomposition dec = decompose(pop, good);
  CHECK(dec.nclique() == 3);
  CHECK_FALSE(dec.rip_satisfied);  // pairwise overlaps on a triangle
  CHECK(dec.warnings.size() == 1);

  // coverage failure names the offending constraint
  CsOption bad;
  bad.mode = SparsityMode::kSelf;
  bad.self_cliques = {{0, 1}, {1, 2}};
  CHECK_THROWS_WITH_AS(decompose(pop, bad),
                       doctest::Contains("inequality constraint #2"),
                       std::invalid_argument);

  // objective term not covered is a hard error
  CsOption bad2;
  bad2.mode = SparsityMode::kSelf;
  bad2.self_cliques = {{0, 2}, {1}};
  CHECK_THROWS_WITH_AS(decompose(pop, bad2), doctest::Contains("objective term"),
                       std::invalid_argument);

  // SELF equal to the automatic cliques reproduces the automatic grouping
  CsOption md;
  md.mode = SparsityMode::kMd;
  CliqueDecomposition auto_dec = decompose(pop, md);
  CsOption self_auto;
  self_auto.mode = SparsityMode::kSelf;
  self_auto.self_cliques = auto_dec.cliques;
  CliqueDecomposition self_dec = decompose(pop, self_auto);
  CHECK(self_dec.cliques == auto_dec.cliques);
  CHECK(self_dec.ineq_groups == auto_dec.ineq_groups);
  CHECK(self_dec.eq_groups == auto_dec.eq_groups);

  // contained cliques are pruned
  CsOption pruned;
  pruned.mode = SparsityMode::kSelf;
  pruned.self_cliques = {{0, 1, 2}, {0, 1}};
  CHECK(decompose(pop, pruned).nclique() == 1);
}

TEST_CASE("clique growth is affine in the double integrator horizon") {
  CsOption md;
  md.mode = SparsityMode::kMd;
  auto count = [&](int N) {
    DoubleIntegratorParams p;
    p.N = N;
    return decompose(make_double_integrator(p), md).nclique();
  };
  int p5 = count(5), p10 = count(10), p30 = count(30);
  // affine in N: the increment over 20 steps is four times the one over 5
  CHECK(4 * (p10 - p5) == p30 - p10);
  CHECK(p10 > p5);
}

TEST_CASE("clique report forms") {
  Pop pop = parse_pop("vars x y; min x^2 + y^2;");
  CsOption non;
  non.mode = SparsityMode::kNon;
  CliqueDecomposition dec = decompose(pop, non);
  std::string json = clique_report_json(dec, pop);
  CHECK(json.find("\"p\": 1") != std::string::npos);
  CHECK(json.find("\"2\": 1") != std::string::npos);  // histogram {2: 1}
  std::string text = clique_report_text(dec, pop);
  CHECK(text.find("cliques: 1") != std::string::npos);

  // six-vertex example cliques all have size 3
  DoubleIntegratorParams p;
  p.N = 1;
  Pop di = make_double_integrator(p);
  CsOption md;
  md.mode = SparsityMode::kMd;
  std::string di_report = clique_report_json(decompose(di, md), di);
  CHECK(di_report.find("\"rip\": true") != std::string::npos);
}

TEST_CASE("six-vertex CSP shape reports four cliques of size 3") {
  // a POP whose CSP graph is exactly the six-vertex example: one bilinear
  // constraint per edge
  Pop pop = parse_pop(
      "vars A B C D E F; min A;"
      "s.t. A*B >= 0; A*D >= 0; B*C >= 0; B*E >= 0; C*F >= 0; D*E >= 0; E*F >= 0;");
  CsOption md;
  md.mode = SparsityMode::kMd;
  CliqueDecomposition dec = decompose(pop, md);
  CHECK(dec.nclique() == 4);
  for (const auto& c : dec.cliques) CHECK(c.size() == 3);
  std::string json = clique_report_json(dec, pop);
  CHECK(json.find("\"3\": 4") != std::string::npos);
}
