#include "msos/moment.hpp"

namespace msos {

std::string MomentSequence::label(int pos, int nvars) const {
  std::vector<int> dense = monomials_.at(pos).dense(nvars);
  std::string out = "y(";
  for (int i = 0; i < nvars; ++i) {
    if (i) out += ",";
    out += std::to_string(dense[i]);
  }
  return out + ")";
}

LinForm riesz_apply(const Polynomial& p, MomentSequence& y) {
  LinForm form;
  for (const auto& [m, c] : p.terms())
    form.terms.emplace_back(y.register_monomial(m), c);
  return form;
}

LinForm riesz_apply(const Polynomial& p, const MomentSequence& y) {
  LinForm form;
  for (const auto& [m, c] : p.terms()) {
    int pos = y.position(m);
    if (pos < 0) throw std::out_of_range("monomial not registered in moment sequence");
    form.terms.emplace_back(pos, c);
  }
  return form;
}

}  // namespace msos
