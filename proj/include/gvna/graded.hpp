#pragma once

// Spatially graded algebras (R, Ad_Γ) with Γ a self-adjoint unitary normalizing R.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gvna/vn_algebra.hpp"

namespace gvna {

struct GradedSplit {
  MatSubspace even;
  MatSubspace odd;
};

class GradedAlgebra {
 public:
  GradedAlgebra() = default;
  /// Throws InputError naming the violated invariant: "grading not self-adjoint",
  /// "grading not involutive" or "grading does not normalize algebra".
  GradedAlgebra(VNAlgebra alg, CMatrix gamma, std::string name = {});

  const VNAlgebra& alg() const { return alg_; }
  const CMatrix& gamma() const { return gamma_; }
  const std::string& name() const { return name_; }
  std::size_t hilbert_dim() const { return alg_.hilbert_dim(); }
  const Tolerances& tolerances() const { return alg_.tolerances(); }

  /// Even/odd decomposition, computed once and shared by copies.
  const GradedSplit& split() const;

 private:
  struct Cache;

  VNAlgebra alg_;
  CMatrix gamma_;
  std::string name_;
  std::shared_ptr<Cache> cache_;
};

/// generate(gens) graded by gamma.
GradedAlgebra make_graded(std::span<const CMatrix> gens, const CMatrix& gamma, std::string name = {},
                          const Tolerances& tol = {});

/// Largest violation of the grading invariants (self-adjoint, involutive, Ad_Γ-stable).
double grading_residual(const GradedAlgebra& g);

const GradedSplit& split(const GradedAlgebra& g);
/// (x + ΓxΓ)/2 and (x − ΓxΓ)/2; InputError when x is not in the algebra.
std::pair<CMatrix, CMatrix> homogeneous_parts(const GradedAlgebra& g, const CMatrix& x);
/// 0 or 1 for homogeneous x, nullopt otherwise.
std::optional<int> degree(const GradedAlgebra& g, const CMatrix& x);

GradedAlgebra graded_center(const GradedAlgebra& g);
bool is_central(const GradedAlgebra& g);
/// The self-adjoint unitary spanning Z(R) ∩ R^(1), if that space is nonzero.
std::optional<CMatrix> odd_center_line(const GradedAlgebra& g);

/// Self-adjoint unitary u in the summand with u x u = θ(x) on the generating set and u² = unit.
/// InputError when the intertwiner space is not one-dimensional.
CMatrix implementing_symmetry(const MatSubspace& summand, const CMatrix& unit, std::span<const CMatrix> gens,
                              std::span<const CMatrix> images, const Tolerances& tol = {});

struct FixedSummandSignature {
  std::size_t block_size;
  std::size_t plus;   ///< multiplicity of +1 for the implementing symmetry on the abstract factor
  std::size_t minus;
};

struct OddSymmetry {
  std::optional<CMatrix> symmetry;
  std::size_t swapped_pairs = 0;
  std::vector<FixedSummandSignature> fixed;
};

/// Structural balanced-ness test: swapped central pairs always carry an odd symmetry,
/// a fixed summand does iff the implementing symmetry has equal ± signature.
OddSymmetry find_odd_symmetry(const GradedAlgebra& g, std::uint64_t seed = kDefaultSeed);
bool is_balanced(const GradedAlgebra& g);

/// L = R^(0) + R^(1)Γ with the same grading.
GradedAlgebra twist(const GradedAlgebra& g);

struct VConjugation {
  CMatrix v;
  VNAlgebra image;
  double formula_residual;  ///< max over basis of ‖V*AV − (A^(0) + iA^(1)Γ)‖
};

CMatrix v_operator(const CMatrix& gamma);
VConjugation v_conjugate(const GradedAlgebra& g);

struct CenterGradingSplit {
  CMatrix p;
  CMatrix q;
  double residual;  ///< ‖ΓQΓ − (I − P − Q)‖ plus oddness of fixed projections
};

CenterGradingSplit center_grading_split(const GradedAlgebra& g);

/// Rank-one projections onto eigenvectors of Γ, +1 eigenspace first.
std::vector<CMatrix> minimal_even_projections(std::size_t d, const CMatrix& gamma);

}  // namespace gvna
