#ifndef MSOS_BASIS_HPP
#define MSOS_BASIS_HPP

#include <vector>

#include "msos/monomial.hpp"

namespace msos {

/// Standard monomial basis of the variables in var_set up to total degree
/// degree_bound, in graded lex order; size C(|I|+d, d).
struct MonomialBasis {
  std::vector<Monomial> members;
  std::vector<int> var_set;  // ascending variable indices
  int degree_bound = 0;

  int size() const { return static_cast<int>(members.size()); }
  const Monomial& operator[](int i) const { return members[i]; }
};

MonomialBasis monomial_basis(const std::vector<int>& var_set, int degree_bound);

/// C(n+d, d) as a size_t; the basis count law.
std::size_t basis_count(int nvars, int degree_bound);

}  // namespace msos

#endif
