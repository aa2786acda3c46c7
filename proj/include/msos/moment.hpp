#ifndef MSOS_MOMENT_HPP
#define MSOS_MOMENT_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "msos/polynomial.hpp"

namespace msos {

/// Bijection between registered exponent vectors and dense positions in the
/// pseudo-moment vector y. The zero monomial is registered first, so its
/// position is always 0; registration order is the single source of indexing.
class MomentSequence {
 public:
  MomentSequence() { register_monomial(Monomial::one()); }

  int register_monomial(const Monomial& m) {
    auto it = index_.find(m);
    if (it != index_.end()) return it->second;
    int pos = static_cast<int>(monomials_.size());
    monomials_.push_back(m);
    index_.emplace(m, pos);
    return pos;
  }

  /// Position of a registered monomial, -1 if absent.
  int position(const Monomial& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
  }

  int y0_position() const { return 0; }
  int size() const { return static_cast<int>(monomials_.size()); }
  const Monomial& monomial(int pos) const { return monomials_.at(pos); }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  /// Label like "y(1,0,2)" for debugging dumps.
  std::string label(int pos, int nvars) const;

 private:
  std::vector<Monomial> monomials_;
  std::unordered_map<Monomial, int, MonomialHash> index_;
};

/// Sparse linear form over y positions: sum of coeff * y_pos.
struct LinForm {
  std::vector<std::pair<int, double>> terms;  // (y position, coefficient)

  double dot(const std::vector<double>& y) const {
    double out = 0.0;
    for (const auto& [pos, c] : terms) out += c * y[pos];
    return out;
  }
};

/// Riesz linear functional: maps a polynomial to the sparse row of its
/// coefficients over the y index space, registering monomials on demand.
LinForm riesz_apply(const Polynomial& p, MomentSequence& y);

/// Non-registering variant; every monomial of p must already be indexed.
LinForm riesz_apply(const Polynomial& p, const MomentSequence& y);

}  // namespace msos

#endif
