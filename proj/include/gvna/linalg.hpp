#pragma once

// Dense complex linear algebra on spaces of d x d matrices.
//
// Matrices are row-major; the coordinate vector of a d x d matrix is its
// row-major flattening, so the Hilbert-Schmidt inner product <A,B> = tr(A* B)
// is the ordinary Hermitian dot product of coordinate vectors.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace gvna {

using Complex = std::complex<double>;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::VectorXcd;

/// Numerical tolerances. All are relative to the largest Hilbert-Schmidt norm in play.
struct Tolerances {
  double eq = 1e-8;        ///< equality / membership
  double rank = 1e-9;      ///< linear independence in orthonormalization
  double cluster = 1e-6;   ///< eigenvalue clustering
};

CMatrix identity(std::size_t d);
CMatrix zeros(std::size_t d);
/// Kronecker product with (i1, i2) -> i1 * d2 + i2.
CMatrix kron(const CMatrix& a, const CMatrix& b);

double hs_norm(const CMatrix& a);
Complex hs_inner(const CMatrix& a, const CMatrix& b);
bool is_self_adjoint(const CMatrix& a, double tol);
bool is_self_adjoint_unitary(const CMatrix& a, double tol);
bool is_projection(const CMatrix& a, double tol);
/// Rank of a projection, round(real(trace)); throws NumericalInconsistency if the trace is not integral.
std::size_t projection_rank(const CMatrix& p);

/// Linear span of d x d matrices with a Hilbert-Schmidt-orthonormal basis.
class MatSubspace {
 public:
  explicit MatSubspace(std::size_t ambient_dim = 0);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<CMatrix>& basis() const { return basis_; }
  /// d^2 x dim matrix whose columns are the basis coordinate vectors.
  const Eigen::MatrixXcd& coordinates() const { return coords_; }

  CMatrix project(const CMatrix& a) const;
  CVector coefficients(const CMatrix& a) const;
  CMatrix combine(const CVector& coefficients) const;

 private:
  friend MatSubspace extend_span(const MatSubspace&, std::span<const CMatrix>, double);
  friend MatSubspace subspace_from_coordinates(std::size_t, const Eigen::MatrixXcd&);

  std::size_t ambient_dim_;
  std::vector<CMatrix> basis_;
  Eigen::MatrixXcd coords_;
};

/// Orthonormal basis of span(mats). A candidate is dropped when its residual after
/// projection is <= tau_rank * (largest input HS norm, or 1 if all inputs are zero).
MatSubspace orthonormalize(std::span<const CMatrix> mats, double tau_rank);
/// Orthonormal basis of span(base ∪ mats); base vectors are kept unchanged and first.
MatSubspace extend_span(const MatSubspace& base, std::span<const CMatrix> mats, double tau_rank);
/// Wraps columns that are already orthonormal coordinate vectors.
MatSubspace subspace_from_coordinates(std::size_t ambient_dim, const Eigen::MatrixXcd& columns);

bool contains(const MatSubspace& s, const CMatrix& a, double tau_eq);
/// ||A - proj_S(A)|| / max(1, ||A||).
double membership_residual(const MatSubspace& s, const CMatrix& a);
bool subspace_equal(const MatSubspace& s, const MatSubspace& t, double tau_eq);
/// Largest membership residual of either basis in the other space; +inf if dimensions differ.
double subspace_residual(const MatSubspace& s, const MatSubspace& t);
MatSubspace intersect(const MatSubspace& s, const MatSubspace& t, const Tolerances& tol = {});

/// Orthonormal basis of {x : ||M x|| small}: right singular vectors with sigma <= abs_tol.
Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m, double abs_tol);

/// {X : [X, A] = 0 for every generator A and its adjoint}. Empty list gives all of B(C^d).
MatSubspace commutant_solve(std::span<const CMatrix> gens, std::size_t d, const Tolerances& tol = {});

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  CMatrix vectors;             ///< column k belongs to values[k]
};

/// Cyclic Jacobi on a Hermitian matrix; sweeps until the off-diagonal norm is <= 1e-12 * max(1, ||A||).
EigenDecomposition hermitian_eigen(const CMatrix& a);

struct SpectralComponent {
  double eigenvalue;
  CMatrix projection;
};

/// Spectral projections of a self-adjoint matrix, ascending; eigenvalues closer than
/// tau_cluster * max(1, max |lambda|) are merged into one component.
std::vector<SpectralComponent> spectral_projections(const CMatrix& a, const Tolerances& tol = {});

/// Projection onto the range of A (eigenvalues of A A* above tau_cluster of the largest).
CMatrix range_projection(const CMatrix& a, const Tolerances& tol = {});

}  // namespace gvna
