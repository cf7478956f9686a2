#pragma once

#include "asymmodes/asymmodes.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace testing_util {

using asymmodes::ComplexMatrix;

/// |m = j><m = j| on a d-dimensional spin space.
inline ComplexMatrix top_state(Eigen::Index d) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(0, 0) = 1.0;
  return m;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return asymmodes::max_abs(a - b); }

/// Representations exercised throughout: irreps and a few reducible ones.
inline std::vector<asymmodes::SU2Representation> sample_reps() {
  using asymmodes::HalfInteger;
  using Rep = asymmodes::SU2Representation;
  return {Rep::spin(HalfInteger::from_twice(1)),
          Rep::spin(HalfInteger(1)),
          Rep::spin(HalfInteger::from_twice(3)),
          Rep({{HalfInteger(0), 1}, {HalfInteger(1), 1}}),
          Rep({{HalfInteger::from_twice(1), 2}}),
          Rep({{HalfInteger::from_twice(1), 1}, {HalfInteger(1), 2}})};
}

/// [block twice_j, mult] pairs for the oracle layer.
inline std::vector<std::pair<int, int>> oracle_blocks(const asymmodes::SU2Representation& rep) {
  std::vector<std::pair<int, int>> out;
  for (const auto& b : rep.blocks()) out.emplace_back(b.j.twice, b.mult);
  return out;
}

}  // namespace testing_util
