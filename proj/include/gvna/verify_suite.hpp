#pragma once

// Mechanical verification of the finite-dimensional graded-algebra statements
// over fixed preset matrices. Output order is by case id and contains no timings.

#include <cstdint>
#include <string>
#include <vector>

#include "gvna/linalg.hpp"
#include "gvna/random.hpp"

namespace gvna {

struct CaseResult {
  std::string id;
  std::string statement;
  bool passed = false;
  bool numerical_error = false;  ///< a NumericalInconsistency aborted the case
  double max_residual = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  Tolerances tol;
};

std::vector<CaseResult> run_verify_suite(const VerifyOptions& options = {});

}  // namespace gvna
