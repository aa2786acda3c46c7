#include "msos/relaxation.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace msos {

int compute_dmin(const Pop& pop) {
  int d = (pop.objective.degree() + 1) / 2;
  for (const auto& g : pop.inequalities) d = std::max(d, (g.degree() + 1) / 2);
  for (const auto& h : pop.equalities) d = std::max(d, (h.degree() + 1) / 2);
  return d;
}

namespace {

// Emits the PSD block for g_j (gj = -1: moment matrix) restricted to the rows
// in `rows` of the full multiplier basis.
RelaxationProblem::PsdBlock emit_block(const Pop& pop, RelaxationProblem& rp,
                                       const MonomialBasis& basis,
                                       const std::vector<int>& rows, int l, int gj,
                                       const std::string& label) {
  RelaxationProblem::PsdBlock block;
  block.label = label;
  block.size = static_cast<int>(rows.size());
  block.clique = l;
  block.constraint = gj;
  Polynomial gpoly = gj < 0 ? Polynomial::constant(1.0, pop.nvars()) : pop.inequalities.at(gj);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    block.row_monomials.push_back(basis[rows[a]]);
    for (std::size_t b = a; b < rows.size(); ++b) {
      Monomial prod = basis[rows[a]] * basis[rows[b]];
      for (const auto& [mu, c] : gpoly.terms()) {
        int pos = rp.y.register_monomial(mu * prod);
        block.entries.push_back({static_cast<int>(a), static_cast<int>(b), pos, c});
      }
    }
  }
  return block;
}

void emit_eq_rows(const Pop& pop, RelaxationProblem& rp, const MonomialBasis& basis,
                  const std::vector<int>& keep, int l, int hj) {
  const Polynomial& h = pop.equalities.at(hj);
  for (int b : keep) {
    RelaxationProblem::EqRow row;
    row.label = "l" + std::to_string(l + 1) + "_h" + std::to_string(hj + 1) + "_" +
                basis[b].str();
    row.clique = l;
    row.constraint = hj;
    for (const auto& [mu, c] : h.terms())
      row.coeffs.emplace_back(rp.y.register_monomial(mu * basis[b]), c);
    rp.eq_rows.push_back(std::move(row));
  }
}

MaskSet all_ones_masks(const Pop& pop, const CliqueDecomposition& dec, int d) {
  TsOption non;
  non.mode = SparsityMode::kNon;
  return build_masks(pop, dec, non, d);
}

}  // namespace

RelaxationProblem assemble_cs_ts(const Pop& pop, const CliqueDecomposition& dec,
                                 const MaskSet& masks, int d) {
  if (d < compute_dmin(pop))
    throw std::invalid_argument("relaxation order below d_min");
  RelaxationProblem rp;
  rp.d = d;
  rp.nvars = pop.nvars();
  rp.variable_names = pop.variable_names;
  rp.cliques = dec.cliques;
  rp.cs_mode = "cs";
  rp.ts_mode = mode_name(masks.options.mode);

  for (int l = 0; l < dec.nclique(); ++l) {
    rp.clique_moment_bases.push_back(monomial_basis(dec.cliques[l], d).members);

    std::vector<int> gjs{-1};
    for (int j : dec.ineq_groups[l]) gjs.push_back(j);
    for (int gj : gjs) {
      const IneqMask* mask = masks.find_ineq(l, gj);
      if (!mask)
        throw std::logic_error("mask set does not match the decomposition");
      std::string base_label =
          "l" + std::to_string(l + 1) +
          (gj < 0 ? "_m" : "_g" + std::to_string(gj + 1));
      bool single_full =
          mask->ts_cliques.size() == 1 &&
          static_cast<int>(mask->ts_cliques[0].size()) == mask->basis.size();
      for (std::size_t t = 0; t < mask->ts_cliques.size(); ++t) {
        std::string label =
            single_full ? base_label : base_label + "_c" + std::to_string(t + 1);
        rp.blocks.push_back(
            emit_block(pop, rp, mask->basis, mask->ts_cliques[t], l, gj, label));
      }
    }

    for (int hj : dec.eq_groups[l]) {
      const EqMask* mask = masks.find_eq(l, hj);
      if (!mask)
        throw std::logic_error("mask set does not match the decomposition");
      std::vector<int> keep;
      for (int b = 0; b < mask->basis.size(); ++b)
        if (mask->pattern[b]) keep.push_back(b);
      emit_eq_rows(pop, rp, mask->basis, keep, l, hj);
    }
  }

  // an objective monomial that no block or equality row references would be a
  // free y direction with nonzero cost; only a SELF term-sparsity basis that
  // misses the objective support can get here
  std::vector<bool> used(static_cast<std::size_t>(rp.y.size()), false);
  used[0] = true;
  for (const auto& b : rp.blocks)
    for (const auto& e : b.entries) used[static_cast<std::size_t>(e.ypos)] = true;
  for (const auto& r : rp.eq_rows)
    for (const auto& [pos, c] : r.coeffs) used[static_cast<std::size_t>(pos)] = true;
  for (const auto& [m, c] : pop.objective.terms()) {
    int pos = rp.y.position(m);
    if (pos < 0 || !used[static_cast<std::size_t>(pos)])
      throw std::invalid_argument("objective term " + m.str(pop.variable_names) +
                                  " is masked out of every block; extend the "
                                  "term-sparsity basis");
  }

  rp.objective = riesz_apply(pop.objective, rp.y);
  return rp;
}

RelaxationProblem assemble_cs(const Pop& pop, const CliqueDecomposition& dec, int d) {
  return assemble_cs_ts(pop, dec, all_ones_masks(pop, dec, d), d);
}

RelaxationProblem assemble_dense(const Pop& pop, int d) {
  CsOption non;
  non.mode = SparsityMode::kNon;
  RelaxationProblem rp = assemble_cs(pop, decompose(pop, non), d);
  rp.cs_mode = "dense";
  return rp;
}

std::string RelaxationProblem::structure_signature() const {
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  std::string out;
  out += "y:" + std::to_string(y.size()) + "\n";
  for (const auto& b : blocks) {
    out += "B " + b.label + " " + std::to_string(b.size);
    for (const auto& e : b.entries)
      out += " (" + std::to_string(e.row) + "," + std::to_string(e.col) + "," +
             std::to_string(e.ypos) + "," + num(e.coeff) + ")";
    out += "\n";
  }
  for (const auto& r : eq_rows) {
    out += "E " + r.label;
    for (const auto& [pos, c] : r.coeffs)
      out += " (" + std::to_string(pos) + "," + num(c) + ")";
    out += "\n";
  }
  out += "O";
  for (const auto& [pos, c] : objective.terms)
    out += " (" + std::to_string(pos) + "," + num(c) + ")";
  out += "\n";
  return out;
}

std::string relaxation_to_json(const RelaxationProblem& rp) {
  nlohmann::ordered_json j;
  j["d"] = rp.d;
  j["nvars"] = rp.nvars;
  j["n_y"] = rp.y.size();
  j["monomials"] = nlohmann::ordered_json::array();
  for (int i = 0; i < rp.y.size(); ++i)
    j["monomials"].push_back(rp.y.monomial(i).str(rp.variable_names));
  j["blocks"] = nlohmann::ordered_json::array();
  for (const auto& b : rp.blocks) {
    nlohmann::ordered_json jb;
    jb["label"] = b.label;
    jb["size"] = b.size;
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    for (const auto& m : b.row_monomials) basis.push_back(m.str(rp.variable_names));
    jb["rows"] = basis;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : b.entries)
      entries.push_back({e.row, e.col, e.ypos, e.coeff});
    jb["entries"] = entries;
    j["blocks"].push_back(jb);
  }
  j["eq_rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rp.eq_rows) {
    nlohmann::ordered_json jr;
    jr["label"] = r.label;
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (const auto& [pos, c] : r.coeffs) coeffs.push_back({pos, c});
    jr["coeffs"] = coeffs;
    j["eq_rows"].push_back(jr);
  }
  nlohmann::ordered_json obj = nlohmann::ordered_json::array();
  for (const auto& [pos, c] : rp.objective.terms) obj.push_back({pos, c});
  j["objective"] = obj;
  return j.dump(2) + "\n";
}

}  // namespace msos
