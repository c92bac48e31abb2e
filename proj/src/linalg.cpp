#include "gvna/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/QR>
#include <lapacke.h>

#include "gvna/errors.hpp"

namespace gvna {

namespace {

CVector flatten(const CMatrix& a) { return Eigen::Map<const CVector>(a.data(), a.size()); }

CMatrix unflatten(const Eigen::Ref<const CVector>& v, std::size_t d) {
  CMatrix out(d, d);
  std::copy(v.data(), v.data() + v.size(), out.data());
  return out;
}

void require_square(const CMatrix& a, std::size_t d, const char* what) {
  if (static_cast<std::size_t>(a.rows()) != d || static_cast<std::size_t>(a.cols()) != d) {
    throw InputError(std::string(what) + ": expected " + std::to_string(d) + "x" + std::to_string(d) +
                     " matrix, got " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

}  // namespace

CMatrix identity(std::size_t d) { return CMatrix::Identity(d, d); }
CMatrix zeros(std::size_t d) { return CMatrix::Zero(d, d); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hs_norm(const CMatrix& a) { return a.norm(); }

Complex hs_inner(const CMatrix& a, const CMatrix& b) { return flatten(a).dot(flatten(b)); }

bool is_self_adjoint(const CMatrix& a, double tol) {
  return a.rows() == a.cols() && (a - a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

bool is_self_adjoint_unitary(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol && (a * a - CMatrix::Identity(a.rows(), a.cols())).norm() <= tol;
}

bool is_projection(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.norm());
  return (a - a.adjoint()).norm() <= tol * scale && (a * a - a).norm() <= tol * scale;
}

std::size_t projection_rank(const CMatrix& p) {
  const double tr = p.trace().real();
  const double r = std::round(tr);
  if (std::abs(tr - r) > 1e-6 || r < 0) {
    throw NumericalInconsistency("projection trace " + std::to_string(tr) + " is not an integer");
  }
  return static_cast<std::size_t>(r);
}

// ---------------------------------------------------------------------------
// MatSubspace

MatSubspace::MatSubspace(std::size_t ambient_dim)
    : ambient_dim_(ambient_dim), coords_(ambient_dim * ambient_dim, 0) {}

CMatrix MatSubspace::project(const CMatrix& a) const {
  require_square(a, ambient_dim_, "project");
  if (basis_.empty()) return zeros(ambient_dim_);
  const CVector v = flatten(a);
  return unflatten(coords_ * (coords_.adjoint() * v), ambient_dim_);
}

CVector MatSubspace::coefficients(const CMatrix& a) const {
  require_square(a, ambient_dim_, "coefficients");
  return coords_.adjoint() * flatten(a);
}

CMatrix MatSubspace::combine(const CVector& coefficients) const {
  if (static_cast<std::size_t>(coefficients.size()) != dim()) throw InputError("combine: coefficient count mismatch");
  if (basis_.empty()) return zeros(ambient_dim_);
  return unflatten(coords_ * coefficients, ambient_dim_);
}

MatSubspace subspace_from_coordinates(std::size_t ambient_dim, const Eigen::MatrixXcd& columns) {
  MatSubspace out(ambient_dim);
  out.coords_ = columns;
  out.basis_.reserve(columns.cols());
  for (Eigen::Index j = 0; j < columns.cols(); ++j) out.basis_.push_back(unflatten(columns.col(j), ambient_dim));
  return out;
}

MatSubspace extend_span(const MatSubspace& base, std::span<const CMatrix> mats, double tau_rank) {
  const std::size_t d = base.ambient_dim();
  double scale = 0.0;
  for (const auto& m : mats) {
    require_square(m, d, "orthonormalize");
    scale = std::max(scale, m.norm());
  }
  if (scale == 0.0) scale = 1.0;
  const double threshold = tau_rank * scale;

  const auto full = static_cast<Eigen::Index>(d * d);
  const Eigen::Index capacity = std::min<Eigen::Index>(full, base.dim() + mats.size());
  Eigen::MatrixXcd q(full, capacity);
  Eigen::Index k = base.dim();
  if (k > 0) q.leftCols(k) = base.coordinates();

  // Modified Gram-Schmidt with one reorthogonalization pass.
  for (const auto& m : mats) {
    if (k == full) break;
    CVector v = flatten(m);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < k; ++j) v -= q.col(j) * q.col(j).dot(v);
    }
    const double n = v.norm();
    if (n <= threshold) continue;
    q.col(k++) = v / n;
  }
  return subspace_from_coordinates(d, q.leftCols(k));
}

MatSubspace orthonormalize(std::span<const CMatrix> mats, double tau_rank) {
  if (mats.empty()) return MatSubspace(0);
  if (mats.front().rows() != mats.front().cols()) throw InputError("orthonormalize: matrices must be square");
  return extend_span(MatSubspace(mats.front().rows()), mats, tau_rank);
}

double membership_residual(const MatSubspace& s, const CMatrix& a) {
  require_square(a, s.ambient_dim(), "contains");
  const double n = a.norm();
  return (a - s.project(a)).norm() / std::max(1.0, n);
}

bool contains(const MatSubspace& s, const CMatrix& a, double tau_eq) { return membership_residual(s, a) <= tau_eq; }

double subspace_residual(const MatSubspace& s, const MatSubspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw InputError("subspace comparison: ambient dimension mismatch");
  if (s.dim() != t.dim()) return std::numeric_limits<double>::infinity();
  if (s.dim() == 0) return 0.0;
  // Both bases are orthonormal, so residuals are column norms of (I - P) applied to coordinates.
  const auto& a = s.coordinates();
  const auto& b = t.coordinates();
  const Eigen::MatrixXcd ra = a - b * (b.adjoint() * a);
  const Eigen::MatrixXcd rb = b - a * (a.adjoint() * b);
  return std::max(ra.colwise().norm().maxCoeff(), rb.colwise().norm().maxCoeff());
}

bool subspace_equal(const MatSubspace& s, const MatSubspace& t, double tau_eq) {
  return subspace_residual(s, t) <= tau_eq;
}

Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m, double abs_tol) {
  const Eigen::Index n = m.cols();
  if (n == 0) return Eigen::MatrixXcd(0, 0);
  if (m.rows() == 0) return Eigen::MatrixXcd::Identity(n, n);
  // Square up to n x n: R of a QR when tall, zero padding when wide.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(std::max(n, m.rows() > 2 * n ? n : m.rows()), n);
  if (m.rows() > 2 * n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    a = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  } else {
    a.topRows(m.rows()) = m;
  }
  const auto rows = static_cast<lapack_int>(a.rows());
  const auto cols = static_cast<lapack_int>(n);
  Eigen::VectorXd sigma(n);
  Eigen::MatrixXcd vt(n, n);
  lapack_complex_double unused{};
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'O', rows, cols,
                                         reinterpret_cast<lapack_complex_double*>(a.data()), rows, sigma.data(),
                                         &unused, 1, reinterpret_cast<lapack_complex_double*>(vt.data()), cols);
  if (info != 0) throw NumericalInconsistency("nullspace: SVD did not converge (info " + std::to_string(info) + ")");
  Eigen::Index rank = 0;
  while (rank < n && sigma(rank) > abs_tol) ++rank;
  return vt.bottomRows(n - rank).adjoint();
}

MatSubspace intersect(const MatSubspace& s, const MatSubspace& t, const Tolerances& tol) {
  if (s.ambient_dim() != t.ambient_dim()) throw InputError("intersect: ambient dimension mismatch");
  const std::size_t d = s.ambient_dim();
  if (s.dim() == 0 || t.dim() == 0) return MatSubspace(d);
  const auto& a = s.coordinates();
  const auto& b = t.coordinates();
  const Eigen::MatrixXcd outside = a - b * (b.adjoint() * a);
  const Eigen::MatrixXcd null = nullspace(outside, tol.eq);
  return subspace_from_coordinates(d, a * null);
}

MatSubspace commutant_solve(std::span<const CMatrix> gens, std::size_t d, const Tolerances& tol) {
  std::vector<CMatrix> ops;
  for (const auto& g : gens) {
    require_square(g, d, "commutant_solve");
    ops.push_back(g);
    if (!is_self_adjoint(g, tol.eq)) ops.push_back(g.adjoint());
  }
  const auto n = static_cast<Eigen::Index>(d * d);
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Identity(n, n);
  const CMatrix id = identity(d);
  // Restrict the solution space one generator at a time; each step shrinks the unknowns.
  for (const auto& g : ops) {
    if (basis.cols() == 0) break;
    // Row-major vec: vec(XG) = (I ⊗ G^T) vec(X), vec(GX) = (G ⊗ I) vec(X).
    const CMatrix ad = kron(id, g.transpose()) - kron(g, id);
    const Eigen::MatrixXcd image = ad * basis;
    const Eigen::MatrixXcd null = nullspace(image, tol.eq * std::max(1.0, g.norm()));
    basis = basis * null;
  }
  return subspace_from_coordinates(d, basis);
}

// ---------------------------------------------------------------------------
// Hermitian eigenproblems

EigenDecomposition hermitian_eigen(const CMatrix& input) {
  if (input.rows() != input.cols()) throw InputError("hermitian_eigen: matrix must be square");
  const Eigen::Index n = input.rows();
  CMatrix a = (input + input.adjoint()) / 2.0;
  CMatrix v = CMatrix::Identity(n, n);
  const double target = 1e-12 * std::max(1.0, a.norm());

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = 0; q < n; ++q)
        if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_norm() > target; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        const double absb = std::abs(b);
        if (absb < 1e-300) continue;
        const Complex phase = std::conj(b / absb);  // e^{-i arg b}
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * absb);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- W* A W with W = [[c, s], [-s e^{-i arg b}, c e^{-i arg b}]] on (p, q).
        for (Eigen::Index r = 0; r < n; ++r) {
          const Complex ap = a(r, p), aq = a(r, q);
          a(r, p) = c * ap - s * phase * aq;
          a(r, q) = s * ap + c * phase * aq;
          const Complex vp = v(r, p), vq = v(r, q);
          v(r, p) = c * vp - s * phase * vq;
          v(r, q) = s * vp + c * phase * vq;
        }
        const Complex cphase = std::conj(phase);
        for (Eigen::Index r = 0; r < n; ++r) {
          const Complex ap = a(p, r), aq = a(q, r);
          a(p, r) = c * ap - s * cphase * aq;
          a(q, r) = s * ap + c * cphase * aq;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (sweep == kMaxSweeps && off_norm() > target) throw InternalLimit("hermitian_eigen: Jacobi did not converge");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out;
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values.push_back(a(order[k], order[k]).real());
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

std::vector<SpectralComponent> spectral_projections(const CMatrix& a, const Tolerances& tol) {
  if (!is_self_adjoint(a, tol.eq)) throw InputError("spectral_projections: matrix is not self-adjoint");
  const auto eig = hermitian_eigen(a);
  const auto n = static_cast<Eigen::Index>(eig.values.size());
  double span = 1.0;
  for (double x : eig.values) span = std::max(span, std::abs(x));
  const double gap = tol.cluster * span;

  std::vector<SpectralComponent> out;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && eig.values[end] - eig.values[end - 1] <= gap) ++end;
    const auto cols = eig.vectors.middleCols(start, end - start);
    double mean = 0.0;
    for (Eigen::Index k = start; k < end; ++k) mean += eig.values[k];
    out.push_back({mean / static_cast<double>(end - start), cols * cols.adjoint()});
    start = end;
  }
  return out;
}

CMatrix range_projection(const CMatrix& a, const Tolerances& tol) {
  const auto eig = hermitian_eigen(a * a.adjoint());
  const auto n = static_cast<Eigen::Index>(eig.values.size());
  CMatrix p = CMatrix::Zero(n, n);
  if (n == 0) return p;
  const double top = eig.values.back();
  if (top <= 1e-300) return p;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eig.values[k] > tol.cluster * top) p += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  }
  return p;
}

}  // namespace gvna
