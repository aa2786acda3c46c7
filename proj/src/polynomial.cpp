#include "msos/polynomial.hpp"

#include <charconv>
#include <cmath>

namespace msos {

double evaluate(const Polynomial& p, const std::vector<double>& x) {
  double out = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double t = c;
    for (const auto& [v, e] : m.exponents()) t *= std::pow(x.at(v), e);
    out += t;
  }
  return out;
}

namespace {

std::string format_coeff(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Writes |c| * mono, with rational-friendly shortest formatting. A unit
// coefficient is dropped unless the monomial is constant.
void append_term(std::string& out, double c, const Monomial& m,
                 const std::vector<std::string>& names) {
  double a = std::fabs(c);
  if (m.is_one()) {
    out += format_coeff(a);
    return;
  }
  if (a != 1.0) {
    out += format_coeff(a);
    out += "*";
  }
  out += m.str(names);
}

}  // namespace

std::string to_string(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    append_term(out, c, m, names);
  }
  return out;
}

std::string emit_pop(const Pop& pop) {
  std::string out = "vars";
  for (const auto& n : pop.variable_names) out += " " + n;
  out += ";\nmin " + to_string(pop.objective, pop.variable_names) + ";\n";
  if (!pop.inequalities.empty() || !pop.equalities.empty()) {
    out += "s.t.\n";
    for (const auto& g : pop.inequalities)
      out += "  " + to_string(g, pop.variable_names) + " >= 0;\n";
    for (const auto& h : pop.equalities)
      out += "  " + to_string(h, pop.variable_names) + " == 0;\n";
  }
  return out;
}

}  // namespace msos
