#ifndef MSOS_SDPA_HPP
#define MSOS_SDPA_HPP

#include <string>
#include <vector>

#include "msos/relaxation.hpp"

namespace msos {

/// Block structure and coefficients of an SDPA sparse (.dat-s) file:
/// min c'x subject to X = sum_k x_k F_k - F_0 being PSD block-diagonal,
/// negative block sizes denoting diagonal blocks.
struct SdpaData {
  int nvars = 0;
  std::vector<int> block_sizes;
  std::vector<double> c;
  struct Entry {
    int matno, block, i, j;  // matno 0 = F_0; i <= j, 1-based
    double value;
  };
  std::vector<Entry> entries;
};

/// Moment relaxation in SDPA form: x = y without the y_0 slot, each equality
/// row encoded as a +/- pair in one trailing diagonal block. The constant
/// term of the objective is not representable in the format and is dropped.
SdpaData sdpa_from_relaxation(const RelaxationProblem& rp);

/// Canonical text emission; 17 significant digits, entries sorted by
/// (matno, block, i, j).
std::string export_sdpa(const SdpaData& data);
std::string export_sdpa(const RelaxationProblem& rp);

struct SdpaParseError : std::runtime_error {
  int line;
  SdpaParseError(const std::string& msg, int line_)
      : std::runtime_error(msg + " at line " + std::to_string(line_)), line(line_) {}
};

SdpaData import_sdpa(const std::string& text);

bool structurally_equal(const SdpaData& a, const SdpaData& b, double tol = 0.0);

}  // namespace msos

#endif
