#ifndef MSOS_POLYNOMIAL_HPP
#define MSOS_POLYNOMIAL_HPP

#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "msos/monomial.hpp"

namespace msos {

/// Exact rational coefficient, used by tests that want bit-reproducible
/// polynomial identities. The default build path uses double.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator-(Rational a) { return {-a.num, a.den}; }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(Rational a, Rational b) { return !(a == b); }
  bool is_zero() const { return num == 0; }
};

inline bool coeff_is_zero(double c) { return c == 0.0; }
inline bool coeff_is_zero(const Rational& c) { return c.is_zero(); }

/// Multivariate polynomial in canonical sparse form: monomial -> nonzero
/// coefficient, keyed in graded lex order. nvars fixes the ambient dimension.
template <class Coeff>
class BasicPolynomial {
 public:
  using TermMap = std::map<Monomial, Coeff>;

  BasicPolynomial() = default;
  explicit BasicPolynomial(int nvars) : nvars_(nvars) {}

  static BasicPolynomial constant(Coeff c, int nvars) {
    BasicPolynomial p(nvars);
    p.add_term(Monomial::one(), c);
    return p;
  }
  static BasicPolynomial variable(int var, int nvars) {
    BasicPolynomial p(nvars);
    p.add_term(Monomial::variable(var), Coeff(1));
    return p;
  }
  static BasicPolynomial from_monomial(const Monomial& m, int nvars, Coeff c = Coeff(1)) {
    BasicPolynomial p(nvars);
    p.add_term(m, c);
    return p;
  }

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t nterms() const { return terms_.size(); }

  /// Degree of the zero polynomial is 0.
  int degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.total_degree(); }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(const Monomial& m, Coeff c) {
    if (coeff_is_zero(c)) return;
    if (m.min_nvars() > nvars_)
      throw std::invalid_argument("monomial exceeds polynomial dimension");
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Set of exponent vectors with nonzero coefficient.
  std::vector<Monomial> support() const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.push_back(m);
    return out;
  }

  /// Variable indices appearing with positive exponent in some term.
  std::set<int> var_set() const {
    std::set<int> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.exponents()) out.insert(v);
    return out;
  }

  friend BasicPolynomial operator+(const BasicPolynomial& a, const BasicPolynomial& b) {
    check_dims(a, b);
    BasicPolynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }
  friend BasicPolynomial operator-(const BasicPolynomial& a, const BasicPolynomial& b) {
    check_dims(a, b);
    BasicPolynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
  }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    check_dims(a, b);
    BasicPolynomial out(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  friend BasicPolynomial operator*(Coeff s, const BasicPolynomial& a) {
    BasicPolynomial out(a.nvars_);
    for (const auto& [m, c] : a.terms_) out.add_term(m, s * c);
    return out;
  }
  friend BasicPolynomial operator-(const BasicPolynomial& a) { return Coeff(-1) * a; }

  bool operator==(const BasicPolynomial& rhs) const {
    return nvars_ == rhs.nvars_ && terms_ == rhs.terms_;
  }
  bool operator!=(const BasicPolynomial& rhs) const { return !(*this == rhs); }

 private:
  static void check_dims(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.nvars_ != b.nvars_)
      throw std::invalid_argument("polynomial dimension mismatch");
  }

  TermMap terms_;
  int nvars_ = 0;
};

using Polynomial = BasicPolynomial<double>;

/// Evaluate at a point (size >= nvars).
double evaluate(const Polynomial& p, const std::vector<double>& x);

/// Canonical text form, terms in graded lex order, coefficients printed with
/// shortest round-trip formatting.
std::string to_string(const Polynomial& p, const std::vector<std::string>& names);

/// Polynomial optimization problem: minimize f subject to g_j >= 0, h_j == 0.
struct Pop {
  Polynomial objective;
  std::vector<Polynomial> inequalities;
  std::vector<Polynomial> equalities;
  std::vector<std::string> variable_names;

  int nvars() const { return static_cast<int>(variable_names.size()); }

  bool operator==(const Pop& rhs) const {
    return objective == rhs.objective && inequalities == rhs.inequalities &&
           equalities == rhs.equalities && variable_names == rhs.variable_names;
  }
};

/// Canonical POP text emission; parse_pop(emit_pop(p)) == p.
std::string emit_pop(const Pop& pop);

/// Parse error with 1-based source location.
struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " +
                           std::to_string(col_)),
        line(line_), column(col_) {}
};

Pop parse_pop(const std::string& source);

}  // namespace msos

#endif
