#pragma once

// Standard graded algebras and the `kind:params` syntax that names them:
//   mf:p,q        B(C^{p+q}) graded by diag(I_p, -I_q)
//   sp:n          M_n ⊕ M_n on C^{2n} graded by the block swap
//   clifford:k    k-fold graded tensor power of sp:1
//   diag:d:s1,..  diagonal algebra on C^d graded by the involution i -> s_i (1-based)
//   trivial:SPEC  algebra of SPEC with the trivial grading Γ = I

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gvna/graded.hpp"

namespace gvna {

struct PresetSpec {
  enum class Kind { mf, sp, clifford, diag, trivial };

  Kind kind = Kind::sp;
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t n = 0;                       ///< sp block size, clifford power, diag dimension
  std::vector<std::size_t> involution;     ///< diag only, 0-based images
  std::shared_ptr<const PresetSpec> base;  ///< trivial only

  std::string to_string() const;
};

/// InputError on unknown kinds or invalid parameters.
PresetSpec parse_preset(std::string_view text);
GradedAlgebra build_preset(const PresetSpec& spec, const Tolerances& tol = {});
GradedAlgebra build_preset(std::string_view text, const Tolerances& tol = {});

GradedAlgebra mf_preset(std::size_t p, std::size_t q, const Tolerances& tol = {});
GradedAlgebra sp_preset(std::size_t n, const Tolerances& tol = {});
GradedAlgebra clifford_preset(std::size_t k, const Tolerances& tol = {});
GradedAlgebra diag_preset(std::size_t d, const std::vector<std::size_t>& involution, const Tolerances& tol = {});
GradedAlgebra trivially_graded(const VNAlgebra& a, std::string name = {});

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of R divided out.
CMatrix random_unitary(std::size_t d, Rng& rng);
/// (uRu*, uΓu*), generators conjugated as well.
GradedAlgebra conjugated(const GradedAlgebra& g, const CMatrix& u);

struct PresetInfo {
  std::string syntax;
  std::string description;
};

std::vector<PresetInfo> preset_catalog();

}  // namespace gvna
