#pragma once

#include <vector>

namespace sgt {

struct TruncationInfo {
  int max_word_length = 0;
  int max_mode = 0;
  std::vector<double> offsets;  // s - s0 values used for extrapolation
};

/// A numerical value together with a rigorous bound on everything that was
/// truncated away (geometric word tails, mode tails, quadrature defects).
struct ResidueEstimate {
  double value = 0.0;
  double tail_bound = 0.0;
  TruncationInfo truncation;
};

}  // namespace sgt
