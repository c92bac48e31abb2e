#pragma once

// Graded tensor product R1 ⊗̂ R2 realized spatially on C^{d1} ⊗ C^{d2} through
// π(A ⊗̂ B) = A Γ1^{∂B} ⊗ B, graded by Γ1 ⊗ Γ2.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "gvna/graded.hpp"

namespace gvna {

struct HomogeneousTensor {
  CMatrix a;
  int da = 0;
  CMatrix b;
  int db = 0;
};

/// InputError unless a (b) lies in G1 (G2) and is homogeneous of the stated degree.
CMatrix pi_embed(const GradedAlgebra& g1, const GradedAlgebra& g2, const HomogeneousTensor& t);

/// Leg swap U(x ⊗ y) = y ⊗ x from C^{d1} ⊗ C^{d2} to C^{d2} ⊗ C^{d1}.
CMatrix swap_unitary(std::size_t d1, std::size_t d2);

/// Generators split into nonzero even and odd parts, paired with their degree.
std::vector<std::pair<CMatrix, int>> homogeneous_generators(const GradedAlgebra& g);

struct SignRuleReport {
  std::size_t samples = 0;
  double product_residual = 0.0;
  double adjoint_residual = 0.0;
  double max_residual() const { return std::max(product_residual, adjoint_residual); }
};

SignRuleReport verify_sign_rules(const GradedAlgebra& g1, const GradedAlgebra& g2, std::size_t samples,
                                 std::uint64_t seed = kDefaultSeed);

struct GradedTensorProduct {
  GradedAlgebra g1;
  GradedAlgebra g2;
  GradedAlgebra result;
};

GradedTensorProduct graded_tensor(const GradedAlgebra& g1, const GradedAlgebra& g2);
VNAlgebra ordinary_tensor(const GradedAlgebra& g1, const GradedAlgebra& g2);
VNAlgebra ordinary_tensor(const VNAlgebra& a1, const VNAlgebra& a2);

/// Algebra generated by (R1')^(0) ⊙ R2' and (R1')^(1) ⊙ R2'Γ2.
VNAlgebra commutant_formula(const GradedAlgebra& g1, const GradedAlgebra& g2);

struct CenterFormula {
  VNAlgebra lhs;  ///< Z(R1 ⊗̂ R2)
  VNAlgebra rhs;  ///< Z(R1)^(0) ⊗̄ Z(R2)^(0)
  bool equal;
  double residual;
};

/// PreconditionError unless both graded centers are balanced.
CenterFormula tensor_center_formula(const GradedAlgebra& g1, const GradedAlgebra& g2);

struct SwapReport {
  CMatrix w;
  bool equal;
  double residual;           ///< subspace residual of W(R1 ⊗̂ R2)W* against R2 ⊗̂ R1
  double identity_residual;  ///< worst of the four image identities over the samples
};

SwapReport swap_isomorphism(const GradedAlgebra& g1, const GradedAlgebra& g2, std::size_t samples = 50,
                            std::uint64_t seed = kDefaultSeed);

struct EvenPartReport {
  bool spatial_equal;        ///< (R1 ⊗̂ R2)^{<0>} = R1 ⊗̄ R2^(0) under Ad_{I⊗Γ2}
  double spatial_residual;
  bool iso_applicable;       ///< graded center of G2 balanced
  bool iso_equal = false;    ///< V'*(R1 ⊗̄ R2^(0))V' = (R1 ⊗̂ R2)^(0), V' built from Γ1 ⊗ U2
  double iso_residual = 0.0;
  bool types_equal = false;
  TypeReport even_type;
  TypeReport ordinary_type;
};

EvenPartReport even_part_identity(const GradedAlgebra& g1, const GradedAlgebra& g2);

struct AbelianGrid {
  std::vector<CMatrix> projections;
  bool in_algebra;
  bool abelian;
  bool equivalent;
  bool sums_to_identity;
  bool full_support;
  bool passed() const { return in_algebra && abelian && equivalent && sums_to_identity && full_support; }
};

/// PreconditionError unless both inputs are central non-factors with an odd central symmetry in G1.
AbelianGrid abelian_grid(const GradedAlgebra& g1, const GradedAlgebra& g2, std::uint64_t seed = kDefaultSeed);

/// Φ_z : R → S on R = (R1 ⊗̂ R2)^(0) + (R1 ⊗̂ R2)^(1)(Γ1 ⊗ Γ2), S generated by I ⊗ R2^(0) and I ⊗ R2^(1)Γ2.
class ConditionalExpectation {
 public:
  ConditionalExpectation(const GradedAlgebra& g1, const GradedAlgebra& g2);

  const GradedAlgebra& domain() const { return domain_; }
  /// R2^(0) + R2^(1)Γ2 on C^{d2}.
  const GradedAlgebra& target() const { return target_; }

  /// (z* ⊗ I) E(T) (z ⊗ I) with E(T) = (T + Ad_{Γ1⊗I} T)/2.
  CMatrix psi(const CVector& z, const CMatrix& t) const;
  CMatrix phi(const CVector& z, const CMatrix& t) const;

 private:
  std::size_t d1_;
  std::size_t d2_;
  CMatrix gamma1_;
  GradedAlgebra domain_;
  GradedAlgebra target_;
};

CMatrix conditional_expectation(const GradedAlgebra& g1, const GradedAlgebra& g2, const CVector& z,
                                const CMatrix& t);

struct SupportComparison {
  CMatrix c;  ///< central support in R1 ⊗̂ R2
  CMatrix d;  ///< central support in R1 ⊗̄ R2
  bool equal;
};

SupportComparison central_support_compare(const GradedAlgebra& g1, const GradedAlgebra& g2, const CMatrix& a,
                                          const CMatrix& b);

struct FactorCaseReport {
  bool equal;
  double residual;
  TypeReport graded;
  TypeReport ordinary;
};

/// PreconditionError unless G1 is B(C^{d1}) and G2 is balanced.
FactorCaseReport factor_case_identity(const GradedAlgebra& g1, const GradedAlgebra& g2);

}  // namespace gvna
