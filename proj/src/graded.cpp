#include "gvna/graded.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "gvna/errors.hpp"

namespace gvna {

struct GradedAlgebra::Cache {
  std::mutex split_mutex;
  std::optional<GradedSplit> split;
};

namespace {

constexpr int kMaxPolarAttempts = 8;

CMatrix conj_by(const CMatrix& gamma, const CMatrix& x) { return gamma * x * gamma; }

// Sign making the first entry with a clearly nonzero real part positive
// (falling back to the imaginary part when every real part vanishes).
CMatrix fix_sign(const CMatrix& a, double tol) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double re = a.data()[i].real();
    if (std::abs(re) > tol) return re > 0 ? a : CMatrix(-a);
  }
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double im = a.data()[i].imag();
    if (std::abs(im) > tol) return im > 0 ? a : CMatrix(-a);
  }
  return a;
}

CMatrix scalar_root_normalize(const CMatrix& h, const CMatrix& unit) {
  // h self-adjoint with h² a positive multiple of unit.
  const double lambda = (h * h).trace().real() / unit.trace().real();
  if (!(lambda > 0)) throw NumericalInconsistency("normalization of a zero symmetry");
  return h / std::sqrt(lambda);
}

std::vector<CMatrix> generating_set(const VNAlgebra& a) {
  std::vector<CMatrix> out;
  for (const auto& g : a.generators()) {
    out.push_back(g);
    if (!is_self_adjoint(g, a.tolerances().eq)) out.push_back(g.adjoint());
  }
  return out;
}

// Partial isometry v in the summand with v*v = from, vv* = to, built from the polar part of to·x·from.
std::optional<CMatrix> partial_isometry(const MatSubspace& summand, const CMatrix& from, const CMatrix& to, Rng& rng) {
  const std::size_t r = projection_rank(from);
  for (int attempt = 0; attempt < kMaxPolarAttempts; ++attempt) {
    const CMatrix y = to * random_element(summand, rng) * from;
    const CMatrix yy = y.adjoint() * y;
    const auto eig = hermitian_eigen(yy);
    const double top = std::max(1e-300, eig.values.back());
    CMatrix inv_sqrt = zeros(yy.rows());
    std::size_t kept = 0;
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
      if (eig.values[k] > 1e-8 * top) {
        const auto col = eig.vectors.col(static_cast<Eigen::Index>(k));
        inv_sqrt += (col * col.adjoint()) / std::sqrt(eig.values[k]);
        ++kept;
      }
    }
    if (kept == r) return CMatrix(y * inv_sqrt);
  }
  return std::nullopt;
}

}  // namespace

GradedAlgebra::GradedAlgebra(VNAlgebra alg, CMatrix gamma, std::string name)
    : alg_(std::move(alg)), gamma_(std::move(gamma)), name_(std::move(name)), cache_(std::make_shared<Cache>()) {
  const std::size_t d = alg_.hilbert_dim();
  const double tol = alg_.tolerances().eq;
  if (static_cast<std::size_t>(gamma_.rows()) != d || static_cast<std::size_t>(gamma_.cols()) != d) {
    throw InputError("grading operator is not " + std::to_string(d) + "x" + std::to_string(d));
  }
  if ((gamma_ - gamma_.adjoint()).norm() > tol) throw InputError("grading not self-adjoint");
  if ((gamma_ * gamma_ - identity(d)).norm() > tol) throw InputError("grading not involutive");
  for (const auto& b : alg_.space().basis()) {
    if (!contains(alg_.space(), conj_by(gamma_, b), tol)) throw InputError("grading does not normalize algebra");
  }
}

const GradedSplit& GradedAlgebra::split() const {
  std::lock_guard lock(cache_->split_mutex);
  if (!cache_->split) {
    const double tau = tolerances().rank;
    std::vector<CMatrix> even;
    std::vector<CMatrix> odd;
    for (const auto& b : alg_.space().basis()) {
      const CMatrix t = conj_by(gamma_, b);
      even.push_back((b + t) / 2.0);
      odd.push_back((b - t) / 2.0);
    }
    const std::size_t d = hilbert_dim();
    cache_->split = GradedSplit{extend_span(MatSubspace(d), even, tau), extend_span(MatSubspace(d), odd, tau)};
  }
  return *cache_->split;
}

GradedAlgebra make_graded(std::span<const CMatrix> gens, const CMatrix& gamma, std::string name,
                          const Tolerances& tol) {
  return GradedAlgebra(generate(gens, static_cast<std::size_t>(gamma.rows()), tol), gamma, std::move(name));
}

double grading_residual(const GradedAlgebra& g) {
  const std::size_t d = g.hilbert_dim();
  const CMatrix& gamma = g.gamma();
  double worst = std::max((gamma - gamma.adjoint()).norm(), (gamma * gamma - identity(d)).norm());
  for (const auto& b : g.alg().space().basis()) {
    worst = std::max(worst, membership_residual(g.alg().space(), conj_by(gamma, b)));
  }
  return worst;
}

const GradedSplit& split(const GradedAlgebra& g) { return g.split(); }

std::pair<CMatrix, CMatrix> homogeneous_parts(const GradedAlgebra& g, const CMatrix& x) {
  if (x.rows() != g.gamma().rows() || x.cols() != g.gamma().cols() ||
      !contains(g.alg().space(), x, g.tolerances().eq)) {
    throw InputError("homogeneous_parts: element not in the algebra");
  }
  const CMatrix t = conj_by(g.gamma(), x);
  CMatrix x0 = (x + t) / 2.0;
  CMatrix x1 = x - x0;
  return {std::move(x0), std::move(x1)};
}

std::optional<int> degree(const GradedAlgebra& g, const CMatrix& x) {
  const double tol = g.tolerances().eq * std::max(1.0, x.norm());
  const CMatrix t = conj_by(g.gamma(), x);
  if ((t - x).norm() <= tol) return 0;
  if ((t + x).norm() <= tol) return 1;
  return std::nullopt;
}

GradedAlgebra graded_center(const GradedAlgebra& g) {
  return GradedAlgebra(center(g.alg()), g.gamma(), g.name().empty() ? std::string() : "Z(" + g.name() + ")");
}

bool is_central(const GradedAlgebra& g) {
  return intersect(g.alg().center_space(), g.split().even, g.tolerances()).dim() == 1;
}

std::optional<CMatrix> odd_center_line(const GradedAlgebra& g) {
  if (!is_central(g)) throw InputError("odd_center_line: algebra is not central");
  const auto line = intersect(g.alg().center_space(), g.split().odd, g.tolerances());
  if (line.dim() == 0) return std::nullopt;
  if (line.dim() > 1) {
    throw InvariantViolation("odd part of the center has dimension " + std::to_string(line.dim()));
  }
  const CMatrix& b = line.basis().front();
  CMatrix h = b + b.adjoint();
  if (h.norm() < 0.5) h = Complex(0, 1) * (b - b.adjoint());
  const std::size_t d = g.hilbert_dim();
  CMatrix u = fix_sign(scalar_root_normalize(h, identity(d)), g.tolerances().eq);
  if (!is_self_adjoint_unitary(u, g.tolerances().eq)) {
    throw NumericalInconsistency("odd central element does not normalize to a symmetry");
  }
  return u;
}

CMatrix implementing_symmetry(const MatSubspace& summand, const CMatrix& unit, std::span<const CMatrix> gens,
                              std::span<const CMatrix> images, const Tolerances& tol) {
  if (gens.size() != images.size()) throw InputError("implementing_symmetry: generator/image count mismatch");
  const std::size_t d = summand.ambient_dim();
  const auto k = static_cast<Eigen::Index>(summand.dim());
  // Coordinates c of u = sum c_j C_j with θ(x) u = u x for every generator x.
  Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Identity(k, k);
  for (std::size_t i = 0; i < gens.size() && coeffs.cols() > 0; ++i) {
    const CMatrix x = unit * gens[i];
    const CMatrix tx = unit * images[i];
    const double scale = std::max(1.0, x.norm());
    Eigen::MatrixXcd image(d * d, coeffs.cols());
    for (Eigen::Index j = 0; j < coeffs.cols(); ++j) {
      const CMatrix c = summand.combine(coeffs.col(j));
      const CMatrix r = tx * c - c * x;
      image.col(j) = Eigen::Map<const CVector>(r.data(), r.size());
    }
    coeffs = coeffs * nullspace(image, tol.eq * scale);
  }
  if (coeffs.cols() != 1) {
    throw InputError("implementing_symmetry: intertwiner space has dimension " + std::to_string(coeffs.cols()) +
                     ", summand is not a factor");
  }
  CMatrix u = summand.combine(coeffs.col(0));
  // u*u is central in a factor summand, so a scalar multiple of unit; then u² = λ·unit with |λ| = 1.
  u /= std::sqrt((u.adjoint() * u).trace().real() / unit.trace().real());
  const Complex lambda = (u * u).trace() / unit.trace();
  u /= std::sqrt(lambda);
  u = (u + u.adjoint()) / 2.0;
  u = fix_sign(u, tol.eq);
  if ((u * u - unit).norm() > tol.eq * std::max(1.0, unit.norm())) {
    throw NumericalInconsistency("implementing_symmetry: rephased intertwiner is not a symmetry");
  }
  return u;
}

OddSymmetry find_odd_symmetry(const GradedAlgebra& g, std::uint64_t seed) {
  const auto& a = g.alg();
  const auto& tol = g.tolerances();
  const std::size_t d = g.hilbert_dim();
  const CMatrix& gamma = g.gamma();
  const auto& zs = a.central_projections();
  const std::size_t count = zs.size();

  std::vector<std::size_t> partner(count, count);
  for (std::size_t i = 0; i < count; ++i) {
    const CMatrix image = conj_by(gamma, zs[i]);
    for (std::size_t j = 0; j < count; ++j) {
      if ((image - zs[j]).norm() <= tol.eq * std::max(1.0, zs[j].norm())) {
        partner[i] = j;
        break;
      }
    }
    if (partner[i] == count) throw NumericalInconsistency("Ad_Γ does not permute the minimal central projections");
  }

  OddSymmetry result;
  CMatrix w = zeros(d);
  bool exists = true;
  Rng rng(seed);
  const auto gens = generating_set(a);
  for (std::size_t i = 0; i < count; ++i) {
    const CMatrix& z = zs[i];
    if (partner[i] != i) {
      if (partner[i] > i) {
        w += z - zs[partner[i]];
        ++result.swapped_pairs;
      }
      continue;
    }
    std::vector<CMatrix> local;
    std::vector<CMatrix> images;
    for (const auto& x : gens) {
      local.push_back(z * x);
      images.push_back(conj_by(gamma, z * x));
    }
    std::vector<CMatrix> spanning;
    for (const auto& b : a.space().basis()) spanning.push_back(z * b);
    const MatSubspace summand = orthonormalize(spanning, tol.rank);
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(summand.dim()))));
    const std::size_t m = projection_rank(z) / n;
    const CMatrix u = implementing_symmetry(summand, z, local, images, tol);
    const CMatrix plus = (z + u) / 2.0;
    const CMatrix minus = (z - u) / 2.0;
    const std::size_t p = projection_rank(plus) / m;
    result.fixed.push_back({n, p, n - p});
    if (p != n - p) {
      exists = false;
      continue;
    }
    const auto v = partial_isometry(summand, plus, minus, rng);
    if (!v) throw DegenerateSpectrum("find_odd_symmetry: could not build a partial isometry", seed);
    w += *v + v->adjoint();
  }
  if (!exists) return result;

  const double check = tol.eq * std::max(1.0, w.norm());
  if (!is_self_adjoint_unitary(w, check) || (conj_by(gamma, w) + w).norm() > check ||
      !contains(a.space(), w, tol.eq)) {
    throw NumericalInconsistency("find_odd_symmetry: constructed element fails the odd symmetry checks");
  }
  result.symmetry = std::move(w);
  return result;
}

bool is_balanced(const GradedAlgebra& g) { return find_odd_symmetry(g).symmetry.has_value(); }

GradedAlgebra twist(const GradedAlgebra& g) {
  const auto& s = g.split();
  std::vector<CMatrix> mats = s.even.basis();
  for (const auto& b : s.odd.basis()) mats.push_back(b * g.gamma());
  MatSubspace space = orthonormalize(mats, g.tolerances().rank);
  return GradedAlgebra(VNAlgebra::from_closed_space(std::move(space), mats, g.tolerances()), g.gamma(),
                       g.name().empty() ? std::string() : "twist(" + g.name() + ")");
}

CMatrix v_operator(const CMatrix& gamma) {
  const std::size_t d = static_cast<std::size_t>(gamma.rows());
  return Complex(0.5, -0.5) * identity(d) + Complex(0.5, 0.5) * gamma;
}

VConjugation v_conjugate(const GradedAlgebra& g) {
  const CMatrix v = v_operator(g.gamma());
  const std::size_t d = g.hilbert_dim();
  if ((v.adjoint() * v - identity(d)).norm() > g.tolerances().eq) {
    throw NumericalInconsistency("v_conjugate: V is not unitary");
  }
  std::vector<CMatrix> images;
  double worst = 0.0;
  for (const auto& b : g.alg().space().basis()) {
    const CMatrix img = v.adjoint() * b * v;
    const auto [b0, b1] = homogeneous_parts(g, b);
    worst = std::max(worst, (img - (b0 + Complex(0, 1) * b1 * g.gamma())).norm());
    images.push_back(img);
  }
  MatSubspace space = orthonormalize(images, g.tolerances().rank);
  return {v, VNAlgebra::from_closed_space(std::move(space), images, g.tolerances()), worst};
}

CenterGradingSplit center_grading_split(const GradedAlgebra& g) {
  const std::size_t d = g.hilbert_dim();
  const auto& tol = g.tolerances();
  const CMatrix& gamma = g.gamma();
  const auto& zs = g.alg().central_projections();
  CMatrix p = zeros(d);
  CMatrix q = zeros(d);
  std::vector<bool> used(zs.size(), false);
  double residual = 0.0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (used[i]) continue;
    const CMatrix image = conj_by(gamma, zs[i]);
    if ((image - zs[i]).norm() <= tol.eq * std::max(1.0, zs[i].norm())) {
      p += zs[i];
      used[i] = true;
      continue;
    }
    for (std::size_t j = i + 1; j < zs.size(); ++j) {
      if (!used[j] && (image - zs[j]).norm() <= tol.eq * std::max(1.0, zs[j].norm())) {
        used[i] = used[j] = true;
        q += zs[i];
        break;
      }
    }
    if (!used[i]) throw NumericalInconsistency("center_grading_split: Ad_Γ does not permute central projections");
  }
  residual = (conj_by(gamma, q) - (identity(d) - p - q)).norm();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if ((zs[i] * p - zs[i]).norm() <= tol.eq * std::max(1.0, zs[i].norm())) {
      residual = std::max(residual, (conj_by(gamma, zs[i]) - zs[i]).norm());
    }
  }
  return {p, q, residual};
}

std::vector<CMatrix> minimal_even_projections(std::size_t d, const CMatrix& gamma) {
  if (static_cast<std::size_t>(gamma.rows()) != d || !is_self_adjoint_unitary(gamma, Tolerances{}.eq)) {
    throw InputError("minimal_even_projections: grading is not a self-adjoint unitary on C^" + std::to_string(d));
  }
  const auto eig = hermitian_eigen(gamma);
  std::vector<CMatrix> plus;
  std::vector<CMatrix> minus;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    const auto col = eig.vectors.col(static_cast<Eigen::Index>(k));
    CMatrix proj = col * col.adjoint();
    (eig.values[k] > 0 ? plus : minus).push_back(std::move(proj));
  }
  plus.insert(plus.end(), minus.begin(), minus.end());
  return plus;
}

}  // namespace gvna
