#ifndef MSOS_MONOMIAL_HPP
#define MSOS_MONOMIAL_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace msos {

/// Sparse monomial x^alpha: sorted (variable index, positive exponent) pairs.
/// Stored exponents are never zero; the total degree is cached.
class Monomial {
 public:
  Monomial() = default;

  /// From a dense exponent vector (zeros dropped).
  explicit Monomial(const std::vector<int>& dense_exponents);

  /// From sparse pairs; pairs with zero exponent are dropped, duplicates merged.
  static Monomial from_pairs(std::vector<std::pair<int, int>> pairs);

  static Monomial one() { return Monomial(); }
  static Monomial variable(int var, int exponent = 1);

  int total_degree() const { return total_degree_; }
  bool is_one() const { return exps_.empty(); }

  int exponent(int var) const;
  const std::vector<std::pair<int, int>>& exponents() const { return exps_; }

  /// Largest variable index used, plus one (0 for the constant monomial).
  int min_nvars() const;

  /// All stored exponents are even (true for the constant monomial).
  bool all_even() const;

  std::vector<int> dense(int nvars) const;

  Monomial operator*(const Monomial& rhs) const;

  bool operator==(const Monomial& rhs) const { return exps_ == rhs.exps_; }
  bool operator!=(const Monomial& rhs) const { return !(*this == rhs); }

  /// Graded lexicographic order: ascending total degree, ties broken so the
  /// monomial with the larger exponent on the lowest differing variable
  /// comes first ([1; x1; x2; x3; x1^2; x1*x2; ...]).
  bool operator<(const Monomial& rhs) const;

  std::size_t hash() const;

  /// Rendering, e.g. "x0^2*x2" with the given variable names, "1" if constant.
  std::string str(const std::vector<std::string>& names) const;
  /// Rendering with synthetic names x<i>.
  std::string str() const;

 private:
  std::vector<std::pair<int, int>> exps_;  // sorted by variable index
  int total_degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace msos

#endif
