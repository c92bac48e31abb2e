#include "gvna/type_table.hpp"

#include "gvna/graded_tensor.hpp"
#include "gvna/presets.hpp"

namespace gvna {

namespace {

std::string type_i(std::size_t k) { return "I_" + std::to_string(k); }

// B(C^m) with a grading; m = 1 has only the trivial one.
GradedAlgebra full_matrix_factor(std::size_t m, const Tolerances& tol) {
  if (m == 1) return make_graded(std::vector<CMatrix>{}, identity(1), "trivial C", tol);
  return mf_preset((m + 1) / 2, m / 2, tol);
}

}  // namespace

std::string homogeneous_type(const TypeReport& r) {
  if (r.summands.empty()) return {};
  for (const auto& s : r.summands) {
    if (s.block_size != r.summands.front().block_size) return r.type_label;
  }
  return type_i(r.summands.front().block_size);
}

std::vector<TableCell> type_table(std::size_t max_index, const Tolerances& tol) {
  std::vector<TableCell> cells;
  for (std::size_t m = 1; m <= max_index; ++m) {
    for (std::size_t n = 1; n <= max_index; ++n) {
      const GradedAlgebra left = full_matrix_factor(m, tol);
      const GradedAlgebra right = sp_preset(n, tol);
      const auto product = graded_tensor(left, right);
      cells.push_back({"factor", type_i(m), type_i(n), homogeneous_type(factor_decomposition(product.result.alg())),
                       true, left.name() + " ⊗̂ " + right.name(), type_i(m * n)});
    }
  }
  for (std::size_t m = 1; m <= max_index; ++m) {
    for (std::size_t n = 1; n <= max_index; ++n) {
      const GradedAlgebra left = sp_preset(m, tol);
      const GradedAlgebra right = sp_preset(n, tol);
      const auto product = graded_tensor(left, right);
      cells.push_back({"central non-factor", type_i(m), type_i(n),
                       homogeneous_type(factor_decomposition(product.result.alg())), true,
                       left.name() + " ⊗̂ " + right.name(), type_i(2 * m * n)});
    }
  }
  const char* types[] = {"I", "II_1", "II_inf", "III"};
  for (const char* regime : {"factor", "central non-factor"}) {
    for (const char* row : types) {
      for (const char* column : types) {
        if (std::string(row) == "I" && std::string(column) == "I") continue;
        cells.push_back({regime, row, column, kOutOfScope, false, {}, {}});
      }
    }
  }
  return cells;
}

}  // namespace gvna
