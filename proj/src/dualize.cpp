#include "msos/relaxation.hpp"

namespace msos {

SosProblem dualize(const RelaxationProblem& rp) {
  SosProblem sos;
  sos.n_ypos = rp.y.size();
  sos.n_free = static_cast<int>(rp.eq_rows.size());

  for (const auto& b : rp.blocks) {
    SosProblem::GramBlock gram;
    gram.label = "Q_" + b.label;
    gram.size = b.size;
    gram.entries = b.entries;
    sos.gram_blocks.push_back(std::move(gram));
  }
  for (const auto& r : rp.eq_rows) sos.eq_columns.push_back(r.coeffs);

  sos.objective_coeffs.assign(rp.y.size(), 0.0);
  for (const auto& [pos, c] : rp.objective.terms) sos.objective_coeffs[pos] += c;
  return sos;
}

}  // namespace msos
