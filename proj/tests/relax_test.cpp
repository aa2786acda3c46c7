#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "msos/models.hpp"
#include "msos/relaxation.hpp"
#include "msos/sdpa.hpp"
#include "msos/solver.hpp"

using namespace msos;

namespace {

CliqueDecomposition decompose_mode(const Pop& pop, SparsityMode m) {
  CsOption opt;
  opt.mode = m;
  return decompose(pop, opt);
}

MaskSet masks_mode(const Pop& pop, const CliqueDecomposition& dec, SparsityMode m,
                   int d, bool partial = false, int k = 1) {
  TsOption ts;
  ts.mode = m;
  ts.partial = partial;
  ts.sparse_order = k;
  return build_masks(pop, dec, ts, d);
}

// y vector induced by a concrete point: y_alpha = x^alpha
std::vector<double> lift_point(const RelaxationProblem& rp, const std::vector<double>& x) {
  std::vector<double> y(static_cast<std::size_t>(rp.y.size()));
  for (int i = 0; i < rp.y.size(); ++i) {
    double v = 1.0;
    for (const auto& [var, e] : rp.y.monomial(i).exponents())
      v *= std::pow(x[var], e);
    y[static_cast<std::size_t>(i)] = v;
  }
  return y;
}

}  // namespace

TEST_CASE("compute_dmin") {
  DoubleIntegratorParams p;
  CHECK(compute_dmin(make_double_integrator(p)) == 1);
  CHECK(compute_dmin(parse_pop("vars x; min x^6;")) == 3);
  CHECK(compute_dmin(parse_pop("vars x y; min x; s.t. x^3 + y == 0;")) == 2);
  CHECK(compute_dmin(parse_pop("vars x; min x; s.t. x^4 - 1 >= 0;")) == 2);
  CHECK(compute_dmin(parse_pop("vars x; min 5;")) == 0);  // zero polynomial has degree 0
}

TEST_CASE("dense assembly shapes") {
  Pop pop = parse_pop("vars x y; min x*y;");
  RelaxationProblem rp = assemble_dense(pop, 2);
  REQUIRE(rp.blocks.size() == 1);
  CHECK(rp.blocks[0].size == 6);  // C(2+2,2)
  CHECK(rp.eq_rows.empty());

  Pop uni = parse_pop("vars x; min x^2;");
  RelaxationProblem r1 = assemble_dense(uni, 1);
  REQUIRE(r1.blocks.size() == 1);
  CHECK(r1.blocks[0].size == 2);
  // block [[y0, y1], [y1, y2]], objective row = y2
  REQUIRE(r1.objective.terms.size() == 1);
  CHECK(r1.objective.terms[0].first == r1.y.position(Monomial::variable(0, 2)));
  CHECK(r1.y.size() == 3);
  CHECK_THROWS(assemble_dense(uni, 0));
}

TEST_CASE("cs assembly: disconnected cliques break one block into two") {
  Pop pop = parse_pop("vars x y; min x^4 + y^4;");
  RelaxationProblem dense = assemble_dense(pop, 2);
  REQUIRE(dense.blocks.size() == 1);
  CHECK(dense.blocks[0].size == 6);

  CliqueDecomposition dec = decompose_mode(pop, SparsityMode::kMd);
  REQUIRE(dec.nclique() == 2);
  RelaxationProblem cs = assemble_cs(pop, dec, 2);
  REQUIRE(cs.blocks.size() == 2);
  CHECK(cs.blocks[0].size == 3);
  CHECK(cs.blocks[1].size == 3);
}

TEST_CASE("cs block sizes follow the binomial law") {
  DoubleIntegratorParams p;
  p.N = 1;
  Pop pop = make_double_integrator(p);
  CliqueDecomposition dec = decompose_mode(pop, SparsityMode::kMd);
  RelaxationProblem rp = assemble_cs(pop, dec, 2);
  std::set<int> moment_sizes;
  for (const auto& b : rp.blocks)
    if (b.constraint == -1) moment_sizes.insert(b.size);
  // cliques of sizes 3, 4, 5 -> moment blocks 10, 15, 21
  CHECK(moment_sizes == std::set<int>{10, 15, 21});
  for (int l = 0; l < dec.nclique(); ++l) {
    int nl = dec.clique_size(l);
    std::size_t expect = basis_count(nl, 2);
    CHECK(rp.clique_moment_bases[l].size() == expect);
  }
}

TEST_CASE("NON decomposition reproduces the dense problem; TS NON is bit-identical to CS") {
  Pop pop = parse_pop("vars x y; min x^4 - x*y; s.t. 1 - x^2 - y^2 >= 0; x*y == 1/4;");
  RelaxationProblem dense = assemble_dense(pop, 2);
  RelaxationProblem cs_non = assemble_cs(pop, decompose_mode(pop, SparsityMode::kNon), 2);
  CHECK(dense.structure_signature() == cs_non.structure_signature());

  CliqueDecomposition dec = decompose_mode(pop, SparsityMode::kMd);
  RelaxationProblem cs = assemble_cs(pop, dec, 2);
  MaskSet non = masks_mode(pop, dec, SparsityMode::kNon, 2);
  RelaxationProblem cs_ts = assemble_cs_ts(pop, dec, non, 2);
  CHECK(cs.structure_signature() == cs_ts.structure_signature());
}

TEST_CASE("cs-ts blocks follow the reduced basis for separable modes") {
  Pop pop = make_separable_modes(3);
  CliqueDecomposition dec = decompose_mode(pop, SparsityMode::kNon);
  MaskSet masks = masks_mode(pop, dec, SparsityMode::kMax, 2);
  RelaxationProblem rp = assemble_cs_ts(pop, dec, masks, 2);

  // largest moment block covers exactly the 7-element reduced basis
  int largest = 0;
  const RelaxationProblem::PsdBlock* big = nullptr;
  for (const auto& b : rp.blocks)
    if (b.constraint == -1 && b.size > largest) {
      largest = b.size;
      big = &b;
    }
  REQUIRE(big);
  CHECK(largest == 7);
  for (const auto& m : big->row_monomials) CHECK(m.exponents().size() <= 1);

  // block closure completes the component, so lam1*lam2 enters y through the
  // (lam1, lam2) entry of the big block; the isolated lam_i*lam_j nodes only
  // contribute their diagonal squares through singleton blocks
  CHECK(rp.y.position(Monomial::from_pairs({{0, 1}, {1, 1}})) >= 0);
  CHECK(rp.y.position(Monomial::from_pairs({{0, 2}, {1, 2}})) >= 0);
  int singletons = 0;
  for (const auto& b : rp.blocks)
    if (b.constraint == -1 && b.size == 1) ++singletons;
  CHECK(singletons == 3);

  // under MD the component is already chordal and splits finer: cliques
  // {1, lam_i} and {1, lam_i^2 all}, so no mixed lam_i*lam_j is ever touched
  MaskSet md_masks = masks_mode(pop, dec, SparsityMode::kMd, 2);
  RelaxationProblem md_rp = assemble_cs_ts(pop, dec, md_masks, 2);
  CHECK(md_rp.y.position(Monomial::from_pairs({{0, 1}, {1, 1}})) == -1);
  CHECK(md_rp.y.size() < rp.y.size());

  // equality rows appear only for unmasked entries: 7 + 2 + 2 + 2
  CHECK(rp.eq_rows.size() == 13);

  // partial: equality rows identical to plain CS
  MaskSet pmasks = masks_mode(pop, dec, SparsityMode::kMax, 2, /*partial=*/true);
  RelaxationProblem prp = assemble_cs_ts(pop, dec, pmasks, 2);
  RelaxationProblem cs = assemble_cs(pop, dec, 2);
  CHECK(prp.eq_rows.size() == cs.eq_rows.size());
  int psd_entries_partial = 0, psd_entries_cs = 0;
  for (const auto& b : prp.blocks) psd_entries_partial += static_cast<int>(b.entries.size());
  for (const auto& b : cs.blocks) psd_entries_cs += static_cast<int>(b.entries.size());
  CHECK(psd_entries_partial < psd_entries_cs);
}

TEST_CASE("moment-substitution identity at concrete points") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Pop pop = parse_pop(
      "vars x y z; min x^2*y - z + 1/2; s.t. 1 - x^2 >= 0; x*y - z == 0; y >= 0;");
  CliqueDecomposition dec = decompose_mode(pop, SparsityMode::kMd);
  RelaxationProblem rp = assemble_cs(pop, dec, 2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x = {unit(rng), unit(rng), unit(rng)};
    std::vector<double> y = lift_point(rp, x);
    CHECK(rp.objective.dot(y) ==
          doctest::Approx(evaluate(pop.objective, x)).epsilon(1e-12));
    // every block at a lifted point is PSD (rank-1 structure after masking)
    for (const auto& b : rp.blocks) {
      Eigen::MatrixXd m = block_value(b, y);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      double gval = b.constraint < 0 ? 1.0 : evaluate(pop.inequalities[b.constraint], x);
      if (gval >= 0) CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
    // equality rows vanish when the point satisfies its equalities: force it
    std::vector<double> xf = x;
    xf[2] = x[0] * x[1];  // z = x*y
    std::vector<double> yf = lift_point(rp, xf);
    for (const auto& r : rp.eq_rows) {
      double v = 0;
      for (auto [pos, c] : r.coeffs) v += c * yf[pos];
      CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("dualize counts and shapes") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    Pop pop = parse_pop(
        "vars x y; min x^4 + y^2 + x*y; s.t. 1 - x^2 >= 0; x + y == 1/2;");
    RelaxationProblem rp = assemble_dense(pop, 2 + (trial % 2));
    SosProblem sos = dualize(rp);
    CHECK(sos.n_dual_equalities() == rp.y.size() - 1);
    CHECK(sos.gram_blocks.size() == rp.blocks.size());
    CHECK(sos.n_free == static_cast<int>(rp.eq_rows.size()));
    for (std::size_t b = 0; b < sos.gram_blocks.size(); ++b)
      CHECK(sos.gram_blocks[b].size == rp.blocks[b].size);
  }
}

TEST_CASE("sdpa export of min x^2 at d=1") {
  Pop pop = parse_pop("vars x; min x^2;");
  RelaxationProblem rp = assemble_dense(pop, 1);
  SdpaData data = sdpa_from_relaxation(rp);
  CHECK(data.nvars == 2);
  REQUIRE(data.block_sizes.size() == 1);
  CHECK(data.block_sizes[0] == 2);
  CHECK(data.entries.size() == 3);
  std::string text = export_sdpa(data);
  SdpaData back = import_sdpa(text);
  CHECK(structurally_equal(data, back));
  CHECK(export_sdpa(back) == text);
}

TEST_CASE("sdpa round trips including equalities") {
  DoubleIntegratorParams p;
  p.N = 2;
  Pop pop = make_double_integrator(p);
  CliqueDecomposition dec = decompose_mode(pop, SparsityMode::kMd);
  RelaxationProblem rp = assemble_cs(pop, dec, 2);
  std::string text = export_sdpa(rp);
  SdpaData imported = import_sdpa(text);
  CHECK(export_sdpa(imported) == text);
  CHECK(structurally_equal(sdpa_from_relaxation(rp), imported));
  // negative trailing block encodes the +/- equality pairs
  CHECK(imported.block_sizes.back() == -2 * static_cast<int>(rp.eq_rows.size()));
}

TEST_CASE("sdpa block-sizes line matches the assembled census") {
  DoubleIntegratorParams p;
  p.N = 3;
  Pop pop = make_double_integrator(p);
  CliqueDecomposition dec = decompose_mode(pop, SparsityMode::kMd);
  RelaxationProblem rp = assemble_cs(pop, dec, 2);
  SdpaData data = sdpa_from_relaxation(rp);
  REQUIRE(data.block_sizes.size() == rp.blocks.size() + 1);
  for (std::size_t k = 0; k < rp.blocks.size(); ++k)
    CHECK(data.block_sizes[k] == rp.blocks[k].size);
  CHECK(data.nvars == rp.y.size() - 1);
}

TEST_CASE("SELF term-sparsity basis missing an objective term is rejected") {
  Pop pop = parse_pop("vars x y; min x*y;");
  CliqueDecomposition dec = decompose_mode(pop, SparsityMode::kNon);
  TsOption self;
  self.mode = SparsityMode::kSelf;
  // no listed pair multiplies to x*y, so L_y(x*y) would be unconstrained
  self.self_bases = {{Monomial::one()}};
  MaskSet masks = build_masks(pop, dec, self, 2);
  CHECK_THROWS_WITH_AS(assemble_cs_ts(pop, dec, masks, 2),
                       doctest::Contains("masked out"), std::invalid_argument);

  // listing x and y restores the (x, y) entry and assembly succeeds
  TsOption ok = self;
  ok.self_bases = {{Monomial::one(), Monomial::variable(0), Monomial::variable(1)}};
  MaskSet good = build_masks(pop, dec, ok, 2);
  CHECK_NOTHROW(assemble_cs_ts(pop, dec, good, 2));
}

TEST_CASE("sdpa import errors carry line numbers") {
  CHECK_THROWS_AS(import_sdpa("2\n1\n"), SdpaParseError);
  try {
    import_sdpa("1\n1\n2\n0\n0 1 5 5 1.0\n");
    CHECK(false);
  } catch (const SdpaParseError& e) {
    CHECK(e.line == 5);
  }
  CHECK_THROWS_AS(import_sdpa("1\n1\n2\n0\n0 1 2 1 1.0\n"), SdpaParseError);
}

TEST_CASE("golden sdpa file round trip") {
  std::string golden =
      "2\n"
      "2\n"
      "2 -2\n"
      "0 1\n"
      "0 1 1 1 -1\n"
      "1 1 1 2 1\n"
      "1 2 1 1 1\n"
      "1 2 2 2 -1\n"
      "2 1 2 2 1\n";
  SdpaData data = import_sdpa(golden);
  CHECK(export_sdpa(data) == golden);
}

TEST_CASE("relaxation json dump carries monomial labels") {
  Pop pop = parse_pop("vars x y; min x*y; s.t. x + y == 1;");
  RelaxationProblem rp = assemble_dense(pop, 1);
  std::string json = relaxation_to_json(rp);
  CHECK(json.find("\"x*y\"") != std::string::npos);
  CHECK(json.find("eq_rows") != std::string::npos);
}
