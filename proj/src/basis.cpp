#include "msos/basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace msos {

namespace {

// Enumerates exponent tuples over vars[pos..] with remaining degree budget,
// emitting in graded lex order is handled by a final sort.
void enumerate(const std::vector<int>& vars, std::size_t pos, int budget,
               std::vector<std::pair<int, int>>& current, std::vector<Monomial>& out) {
  if (pos == vars.size()) {
    out.push_back(Monomial::from_pairs(current));
    return;
  }
  for (int e = 0; e <= budget; ++e) {
    if (e > 0) current.emplace_back(vars[pos], e);
    enumerate(vars, pos + 1, budget - e, current, out);
    if (e > 0) current.pop_back();
  }
}

}  // namespace

MonomialBasis monomial_basis(const std::vector<int>& var_set, int degree_bound) {
  if (degree_bound < 0) throw std::invalid_argument("negative degree bound");
  MonomialBasis basis;
  basis.var_set = var_set;
  std::sort(basis.var_set.begin(), basis.var_set.end());
  basis.var_set.erase(std::unique(basis.var_set.begin(), basis.var_set.end()),
                      basis.var_set.end());
  basis.degree_bound = degree_bound;
  std::vector<std::pair<int, int>> current;
  enumerate(basis.var_set, 0, degree_bound, current, basis.members);
  std::sort(basis.members.begin(), basis.members.end());
  return basis;
}

std::size_t basis_count(int nvars, int degree_bound) {
  // C(n+d, d) built multiplicatively to avoid factorial overflow
  std::size_t out = 1;
  for (int i = 1; i <= degree_bound; ++i)
    out = out * static_cast<std::size_t>(nvars + i) / static_cast<std::size_t>(i);
  return out;
}

}  // namespace msos
