#include "msos/monomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace msos {

Monomial::Monomial(const std::vector<int>& dense_exponents) {
  for (std::size_t i = 0; i < dense_exponents.size(); ++i) {
    int e = dense_exponents[i];
    if (e < 0) throw std::invalid_argument("negative exponent");
    if (e > 0) {
      exps_.emplace_back(static_cast<int>(i), e);
      total_degree_ += e;
    }
  }
}

Monomial Monomial::from_pairs(std::vector<std::pair<int, int>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  Monomial m;
  for (const auto& [var, e] : pairs) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    if (e == 0) continue;
    if (!m.exps_.empty() && m.exps_.back().first == var) {
      m.exps_.back().second += e;
    } else {
      m.exps_.emplace_back(var, e);
    }
    m.total_degree_ += e;
  }
  return m;
}

Monomial Monomial::variable(int var, int exponent) {
  return from_pairs({{var, exponent}});
}

int Monomial::exponent(int var) const {
  for (const auto& [v, e] : exps_) {
    if (v == var) return e;
    if (v > var) break;
  }
  return 0;
}

int Monomial::min_nvars() const {
  return exps_.empty() ? 0 : exps_.back().first + 1;
}

bool Monomial::all_even() const {
  for (const auto& [v, e] : exps_)
    if (e % 2 != 0) return false;
  return true;
}

std::vector<int> Monomial::dense(int nvars) const {
  std::vector<int> out(nvars, 0);
  for (const auto& [v, e] : exps_) out.at(v) = e;
  return out;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
  Monomial out;
  out.total_degree_ = total_degree_ + rhs.total_degree_;
  out.exps_.reserve(exps_.size() + rhs.exps_.size());
  std::size_t i = 0, j = 0;
  while (i < exps_.size() && j < rhs.exps_.size()) {
    if (exps_[i].first == rhs.exps_[j].first) {
      out.exps_.emplace_back(exps_[i].first, exps_[i].second + rhs.exps_[j].second);
      ++i, ++j;
    } else if (exps_[i].first < rhs.exps_[j].first) {
      out.exps_.push_back(exps_[i++]);
    } else {
      out.exps_.push_back(rhs.exps_[j++]);
    }
  }
  for (; i < exps_.size(); ++i) out.exps_.push_back(exps_[i]);
  for (; j < rhs.exps_.size(); ++j) out.exps_.push_back(rhs.exps_[j]);
  return out;
}

bool Monomial::operator<(const Monomial& rhs) const {
  if (total_degree_ != rhs.total_degree_) return total_degree_ < rhs.total_degree_;
  // Same degree: walk both sparse vectors; the first variable index where the
  // exponents differ decides, larger exponent on the lower index first.
  std::size_t i = 0, j = 0;
  while (i < exps_.size() && j < rhs.exps_.size()) {
    if (exps_[i].first == rhs.exps_[j].first) {
      if (exps_[i].second != rhs.exps_[j].second)
        return exps_[i].second > rhs.exps_[j].second;
      ++i, ++j;
    } else if (exps_[i].first < rhs.exps_[j].first) {
      return true;  // lhs has positive exponent on an earlier variable
    } else {
      return false;
    }
  }
  if (i < exps_.size()) return true;
  return false;  // equal, or rhs has trailing variables
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& [v, e] : exps_) {
    h ^= std::hash<long long>()((static_cast<long long>(v) << 32) | e) + 0x9e3779b9 +
         (h << 6) + (h >> 2);
  }
  return h;
}

std::string Monomial::str(const std::vector<std::string>& names) const {
  if (exps_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) out += "*";
    out += names.at(exps_[i].first);
    if (exps_[i].second > 1) out += "^" + std::to_string(exps_[i].second);
  }
  return out;
}

std::string Monomial::str() const {
  if (exps_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) out += "*";
    out += "x" + std::to_string(exps_[i].first);
    if (exps_[i].second > 1) out += "^" + std::to_string(exps_[i].second);
  }
  return out;
}

}  // namespace msos
