#pragma once

// Algebra documents:
//   {"generators": [matrix, ...], "grading": matrix, "hilbert_dim": d, "name": "..."}
// where a matrix is a list of rows and each entry a [re, im] pair.

#include <filesystem>
#include <string>
#include <string_view>

#include "gvna/graded.hpp"

namespace gvna {

/// Canonical form: sorted keys, one generator per line, entries printed with 17 significant digits.
std::string serialize_algebra(const GradedAlgebra& g);

/// InputError with "malformed document: ..." for structural problems; grading violations
/// surface as the GradedAlgebra invariant diagnostics.
GradedAlgebra parse_algebra(std::string_view text, const Tolerances& tol = {});
GradedAlgebra load_algebra_file(const std::filesystem::path& path, const Tolerances& tol = {});

/// "%.17g" with negative zero printed as 0.
std::string format_double(double x);

}  // namespace gvna
