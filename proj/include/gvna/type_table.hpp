#pragma once

// Type multiplication table for graded tensor products. Only type I entries are
// computable at finite dimension; the remaining cells are reported as out of scope.

#include <string>
#include <vector>

#include "gvna/vn_algebra.hpp"

namespace gvna {

struct TableCell {
  std::string regime;    ///< "factor" or "central non-factor"
  std::string row;       ///< type of R1
  std::string column;    ///< type of R2
  std::string result;    ///< computed type, or the out-of-scope marker
  bool computed = false;
  std::string inputs;    ///< algebras realizing the cell
  std::string expected;  ///< I_{mn} in the factor regime, I_{2mn} otherwise
};

inline constexpr const char* kOutOfScope = "out of scope (infinite-dimensional)";

/// "I_k" when every summand has block size k, otherwise the full summand label.
std::string homogeneous_type(const TypeReport& r);

/// Type I cells for indices 1..max_index in both regimes, followed by the out-of-scope cells.
std::vector<TableCell> type_table(std::size_t max_index = 2, const Tolerances& tol = {});

}  // namespace gvna
