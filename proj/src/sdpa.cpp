#include "msos/sdpa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

namespace msos {

namespace {

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SdpaData sdpa_from_relaxation(const RelaxationProblem& rp) {
  SdpaData data;
  data.nvars = rp.y.size() - 1;  // y_0 is the constant slot
  std::map<std::tuple<int, int, int, int>, double> agg;

  for (std::size_t k = 0; k < rp.blocks.size(); ++k) {
    const auto& blk = rp.blocks[k];
    data.block_sizes.push_back(blk.size);
    for (const auto& e : blk.entries) {
      // X_B = sum_k x_k F_k - F_0 must equal M_B(y) with y_0 = 1
      int matno = e.ypos == 0 ? 0 : e.ypos;
      double v = e.ypos == 0 ? -e.coeff : e.coeff;
      agg[{matno, static_cast<int>(k) + 1, e.row + 1, e.col + 1}] += v;
    }
  }
  if (!rp.eq_rows.empty()) {
    int blk = static_cast<int>(rp.blocks.size()) + 1;
    int diag_size = 2 * static_cast<int>(rp.eq_rows.size());
    data.block_sizes.push_back(-diag_size);
    for (std::size_t r = 0; r < rp.eq_rows.size(); ++r) {
      int jp = 2 * static_cast<int>(r) + 1;  // + side
      int jm = jp + 1;                       // - side
      double rhs = 0.0;
      for (const auto& [pos, coeff] : rp.eq_rows[r].coeffs) {
        if (pos == 0)
          rhs -= coeff;  // constant moves to the right-hand side
        else {
          agg[{pos, blk, jp, jp}] += coeff;
          agg[{pos, blk, jm, jm}] -= coeff;
        }
      }
      if (rhs != 0.0) {
        agg[{0, blk, jp, jp}] += rhs;
        agg[{0, blk, jm, jm}] -= rhs;
      }
    }
  }

  data.c.assign(data.nvars, 0.0);
  for (const auto& [pos, coeff] : rp.objective.terms)
    if (pos != 0) data.c[pos - 1] += coeff;

  for (const auto& [key, v] : agg) {
    if (v == 0.0) continue;
    auto [matno, blk, i, j] = key;
    data.entries.push_back({matno, blk, i, j, v});
  }
  return data;
}

std::string export_sdpa(const SdpaData& data) {
  std::string out;
  out += std::to_string(data.nvars) + "\n";
  out += std::to_string(data.block_sizes.size()) + "\n";
  for (std::size_t i = 0; i < data.block_sizes.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(data.block_sizes[i]);
  }
  out += "\n";
  for (std::size_t i = 0; i < data.c.size(); ++i) {
    if (i) out += " ";
    out += num17(data.c[i]);
  }
  out += "\n";
  std::vector<SdpaData::Entry> sorted = data.entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const SdpaData::Entry& a, const SdpaData::Entry& b) {
              return std::tie(a.matno, a.block, a.i, a.j) <
                     std::tie(b.matno, b.block, b.i, b.j);
            });
  for (const auto& e : sorted) {
    out += std::to_string(e.matno) + " " + std::to_string(e.block) + " " +
           std::to_string(e.i) + " " + std::to_string(e.j) + " " + num17(e.value) +
           "\n";
  }
  return out;
}

std::string export_sdpa(const RelaxationProblem& rp) {
  return export_sdpa(sdpa_from_relaxation(rp));
}

SdpaData import_sdpa(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_data_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos) continue;
      if (line[start] == '*' || line[start] == '"') continue;  // comment
      return line;
    }
    throw SdpaParseError("unexpected end of file", lineno);
  };

  SdpaData data;
  try {
    data.nvars = std::stoi(next_data_line());
  } catch (const SdpaParseError&) {
    throw;
  } catch (...) {
    throw SdpaParseError("malformed variable count", lineno);
  }
  int nblocks = 0;
  try {
    nblocks = std::stoi(next_data_line());
  } catch (const SdpaParseError&) {
    throw;
  } catch (...) {
    throw SdpaParseError("malformed block count", lineno);
  }
  {
    std::istringstream ls(next_data_line());
    for (int i = 0; i < nblocks; ++i) {
      int s;
      if (!(ls >> s)) throw SdpaParseError("malformed block sizes", lineno);
      data.block_sizes.push_back(s);
    }
  }
  {
    std::istringstream ls(next_data_line());
    for (int i = 0; i < data.nvars; ++i) {
      double v;
      if (!(ls >> v)) throw SdpaParseError("malformed objective vector", lineno);
      data.c.push_back(v);
    }
  }
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '*' || line[start] == '"') continue;
    std::istringstream ls(line);
    SdpaData::Entry e{};
    if (!(ls >> e.matno >> e.block >> e.i >> e.j >> e.value))
      throw SdpaParseError("malformed entry line", lineno);
    if (e.matno < 0 || e.matno > data.nvars)
      throw SdpaParseError("matrix index out of range", lineno);
    if (e.block < 1 || e.block > nblocks)
      throw SdpaParseError("block index out of range", lineno);
    int size = std::abs(data.block_sizes[e.block - 1]);
    if (e.i < 1 || e.j < 1 || e.i > size || e.j > size)
      throw SdpaParseError("entry position out of range", lineno);
    if (e.i > e.j)
      throw SdpaParseError("entry below the diagonal breaks symmetry convention",
                           lineno);
    if (data.block_sizes[e.block - 1] < 0 && e.i != e.j)
      throw SdpaParseError("off-diagonal entry in a diagonal block", lineno);
    data.entries.push_back(e);
  }
  return data;
}

bool structurally_equal(const SdpaData& a, const SdpaData& b, double tol) {
  if (a.nvars != b.nvars || a.block_sizes != b.block_sizes) return false;
  if (a.c.size() != b.c.size()) return false;
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (std::fabs(a.c[i] - b.c[i]) > tol) return false;
  auto key = [](const SdpaData::Entry& e) {
    return std::tie(e.matno, e.block, e.i, e.j);
  };
  std::vector<SdpaData::Entry> ea = a.entries, eb = b.entries;
  auto cmp = [&](const SdpaData::Entry& x, const SdpaData::Entry& y) {
    return key(x) < key(y);
  };
  std::sort(ea.begin(), ea.end(), cmp);
  std::sort(eb.begin(), eb.end(), cmp);
  if (ea.size() != eb.size()) return false;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (key(ea[i]) != key(eb[i])) return false;
    if (std::fabs(ea[i].value - eb[i].value) > tol) return false;
  }
  return true;
}

}  // namespace msos
