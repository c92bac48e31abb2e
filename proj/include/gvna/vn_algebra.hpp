#pragma once

// Finite-dimensional von Neumann algebras on C^d.
//
// At finite dimension every such algebra is a direct sum of full matrix
// factors M_{n_k} acting with multiplicity m_k, and the whole type theory
// reduces to reading off (n_k, m_k) from the minimal central projections.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gvna/linalg.hpp"
#include "gvna/random.hpp"

namespace gvna {

class VNAlgebra {
 public:
  VNAlgebra() = default;

  std::size_t hilbert_dim() const { return hilbert_dim_; }
  std::size_t dim() const { return space_.dim(); }
  const MatSubspace& space() const { return space_; }
  const std::vector<CMatrix>& generators() const { return generators_; }
  const Tolerances& tolerances() const { return tol_; }

  /// Minimal central projections for the default seed, computed once and shared by copies.
  const std::vector<CMatrix>& central_projections() const;
  /// Center as a linear space, computed once and shared by copies.
  const MatSubspace& center_space() const;

  /// Wraps a space already known to be a unital *-algebra; generators default to the basis.
  static VNAlgebra from_closed_space(MatSubspace space, std::vector<CMatrix> generators, const Tolerances& tol);

 private:
  friend VNAlgebra generate(std::span<const CMatrix>, std::size_t, const Tolerances&);

  struct Cache;

  std::size_t hilbert_dim_ = 0;
  MatSubspace space_;
  std::vector<CMatrix> generators_;
  Tolerances tol_;
  std::shared_ptr<Cache> cache_;
};

/// Non-owning handle to a projection checked to lie in an algebra.
class ProjectionHandle {
 public:
  /// Throws InputError unless p is a self-adjoint idempotent in parent.
  ProjectionHandle(const VNAlgebra& parent, CMatrix p);

  const CMatrix& matrix() const { return matrix_; }
  const VNAlgebra& parent() const { return *parent_; }
  std::size_t rank() const { return projection_rank(matrix_); }

 private:
  CMatrix matrix_;
  const VNAlgebra* parent_;
};

struct Summand {
  std::size_t block_size;
  std::size_t multiplicity;
  CMatrix central_projection;
};

struct TypeReport {
  std::vector<Summand> summands;  ///< sorted by (block size, multiplicity, position)
  bool is_factor = false;
  std::string type_label;         ///< "I_n" or "I_n1 ⊕ I_n2 ⊕ ..."
};

/// Smallest unital *-closed multiplicatively closed span containing gens.
VNAlgebra generate(std::span<const CMatrix> gens, std::size_t d, const Tolerances& tol = {});
inline VNAlgebra generate(const std::vector<CMatrix>& gens, std::size_t d, const Tolerances& tol = {}) {
  return generate(std::span<const CMatrix>(gens), d, tol);
}

/// Largest violation of unit / adjoint / product closure over basis elements.
double algebra_invariant_residual(const VNAlgebra& a);
bool double_commutant_holds(const VNAlgebra& a);

VNAlgebra commutant(const VNAlgebra& a);
VNAlgebra center(const VNAlgebra& a);

std::vector<ProjectionHandle> minimal_central_projections(const VNAlgebra& a, std::uint64_t seed = kDefaultSeed);
/// Orthogonal family of minimal (hence abelian) projections of a summing to I.
std::vector<ProjectionHandle> minimal_projections(const VNAlgebra& a, std::uint64_t seed = kDefaultSeed);

TypeReport factor_decomposition(const VNAlgebra& a);
/// Equal multisets of (block size, multiplicity).
bool same_type(const TypeReport& x, const TypeReport& y);
std::string format_summands(const TypeReport& r);

bool proj_equivalent(const VNAlgebra& a, const ProjectionHandle& e, const ProjectionHandle& f);
CMatrix central_support(const VNAlgebra& a, const ProjectionHandle& e);
bool is_abelian_projection(const VNAlgebra& a, const ProjectionHandle& e);

/// Random element sum c_k B_k with complex Gaussian coefficients.
CMatrix random_element(const MatSubspace& s, Rng& rng);
CMatrix random_self_adjoint_element(const MatSubspace& s, Rng& rng);

}  // namespace gvna
