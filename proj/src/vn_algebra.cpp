#include "gvna/vn_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <optional>

#include "gvna/errors.hpp"

namespace gvna {

struct VNAlgebra::Cache {
  std::mutex center_mutex;
  std::optional<MatSubspace> center;
  std::mutex projections_mutex;
  std::optional<std::vector<CMatrix>> projections;
};

namespace {

constexpr int kMaxSaturationRounds = 64;
constexpr int kMaxSpectralAttempts = 8;

std::vector<CMatrix> with_adjoints(std::span<const CMatrix> gens, double tol) {
  std::vector<CMatrix> out;
  for (const auto& g : gens) {
    const double n = g.norm();
    if (n == 0.0) continue;
    out.push_back(g / n);
    if (!is_self_adjoint(g, tol)) out.push_back(g.adjoint() / n);
  }
  return out;
}

MatSubspace compress(const MatSubspace& space, const CMatrix& left, const CMatrix& right, double tau_rank) {
  std::vector<CMatrix> mats;
  mats.reserve(space.dim());
  for (const auto& b : space.basis()) mats.push_back(left * b * right);
  return extend_span(MatSubspace(space.ambient_dim()), mats, tau_rank);
}

std::string make_label(const std::vector<Summand>& summands) {
  std::string out;
  for (const auto& s : summands) {
    if (!out.empty()) out += " ⊕ ";
    out += "I_" + std::to_string(s.block_size);
  }
  return out;
}

MatSubspace compute_center(const VNAlgebra& a) {
  const auto& space = a.space();
  const std::size_t d = a.hilbert_dim();
  if (space.dim() <= 1) return space;
  const auto& tol = a.tolerances();
  // Elements of the algebra commuting with every generator: solve in algebra coordinates.
  const auto ops = with_adjoints(a.generators(), tol.eq);
  const auto k = static_cast<Eigen::Index>(space.dim());
  Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Identity(k, k);
  for (const auto& g : ops) {
    if (coeffs.cols() == 0) break;
    Eigen::MatrixXcd image(d * d, coeffs.cols());
    for (Eigen::Index j = 0; j < coeffs.cols(); ++j) {
      const CMatrix x = space.combine(coeffs.col(j));
      const CMatrix c = x * g - g * x;
      image.col(j) = Eigen::Map<const CVector>(c.data(), c.size());
    }
    coeffs = coeffs * nullspace(image, tol.eq);
  }
  return subspace_from_coordinates(d, space.coordinates() * coeffs);
}

// Canonical order for central projections: by the first standard basis vector they do not annihilate.
std::size_t support_start(const CMatrix& p) {
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    if (p(i, i).real() > 1e-6) return static_cast<std::size_t>(i);
  }
  return static_cast<std::size_t>(p.rows());
}

std::vector<CMatrix> compute_minimal_central_projections(const VNAlgebra& a, std::uint64_t seed) {
  const auto& z = a.center_space();
  const std::size_t d = a.hilbert_dim();
  const auto& tol = a.tolerances();
  if (z.dim() <= 1) return {identity(d)};
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxSpectralAttempts; ++attempt) {
    const CMatrix h = random_self_adjoint_element(z, rng);
    const auto comps = spectral_projections(h, tol);
    if (comps.size() != z.dim()) continue;
    bool minimal = true;
    std::vector<CMatrix> out;
    for (const auto& comp : comps) {
      if (compress(z, comp.projection, identity(d), tol.rank).dim() != 1) {
        minimal = false;
        break;
      }
      out.push_back(comp.projection);
    }
    if (minimal) {
      std::stable_sort(out.begin(), out.end(), [](const CMatrix& x, const CMatrix& y) {
        return support_start(x) < support_start(y);
      });
      return out;
    }
  }
  throw DegenerateSpectrum("minimal_central_projections: could not certify minimal projections", seed);
}

}  // namespace

// ---------------------------------------------------------------------------

VNAlgebra VNAlgebra::from_closed_space(MatSubspace space, std::vector<CMatrix> generators, const Tolerances& tol) {
  VNAlgebra out;
  out.hilbert_dim_ = space.ambient_dim();
  out.generators_ = generators.empty() ? space.basis() : std::move(generators);
  out.space_ = std::move(space);
  out.tol_ = tol;
  out.cache_ = std::make_shared<Cache>();
  return out;
}

const MatSubspace& VNAlgebra::center_space() const {
  std::lock_guard lock(cache_->center_mutex);
  if (!cache_->center) cache_->center = compute_center(*this);
  return *cache_->center;
}

const std::vector<CMatrix>& VNAlgebra::central_projections() const {
  std::lock_guard lock(cache_->projections_mutex);
  if (!cache_->projections) cache_->projections = compute_minimal_central_projections(*this, kDefaultSeed);
  return *cache_->projections;
}

ProjectionHandle::ProjectionHandle(const VNAlgebra& parent, CMatrix p) : matrix_(std::move(p)), parent_(&parent) {
  const auto& tol = parent.tolerances();
  if (static_cast<std::size_t>(matrix_.rows()) != parent.hilbert_dim() || !is_projection(matrix_, tol.eq)) {
    throw InputError("not a projection on C^" + std::to_string(parent.hilbert_dim()));
  }
  if (!contains(parent.space(), matrix_, tol.eq)) throw InputError("projection does not lie in the algebra");
}

VNAlgebra generate(std::span<const CMatrix> gens, std::size_t d, const Tolerances& tol) {
  for (const auto& g : gens) {
    if (static_cast<std::size_t>(g.rows()) != d || static_cast<std::size_t>(g.cols()) != d) {
      throw InputError("generate: generator is not " + std::to_string(d) + "x" + std::to_string(d));
    }
  }
  const auto ops = with_adjoints(gens, tol.eq);
  std::vector<CMatrix> seeds{identity(d) / std::sqrt(static_cast<double>(d))};
  seeds.insert(seeds.end(), ops.begin(), ops.end());
  MatSubspace span = extend_span(MatSubspace(d), seeds, tol.rank);

  // Closure under left multiplication by generators and adjoints reaches every word.
  std::size_t frontier_start = 0;
  int rounds = 0;
  while (frontier_start < span.dim()) {
    if (++rounds > kMaxSaturationRounds) throw InternalLimit("generate: closure did not saturate in 64 rounds");
    std::vector<CMatrix> candidates;
    candidates.reserve(ops.size() * (span.dim() - frontier_start));
    for (std::size_t j = frontier_start; j < span.dim(); ++j) {
      for (const auto& g : ops) candidates.push_back(g * span.basis()[j]);
    }
    const std::size_t before = span.dim();
    span = extend_span(span, candidates, tol.rank);
    frontier_start = before;
  }

  VNAlgebra out = VNAlgebra::from_closed_space(std::move(span), {}, tol);
  out.generators_.assign(gens.begin(), gens.end());
  return out;
}

double algebra_invariant_residual(const VNAlgebra& a) {
  const auto& s = a.space();
  double worst = membership_residual(s, identity(a.hilbert_dim()));
  for (const auto& b : s.basis()) {
    worst = std::max(worst, membership_residual(s, b.adjoint()));
    for (const auto& c : s.basis()) worst = std::max(worst, membership_residual(s, b * c));
  }
  return worst;
}

bool double_commutant_holds(const VNAlgebra& a) {
  return subspace_equal(commutant(commutant(a)).space(), a.space(), a.tolerances().eq);
}

VNAlgebra commutant(const VNAlgebra& a) {
  const auto& gens = a.generators();
  MatSubspace space = commutant_solve(gens, a.hilbert_dim(), a.tolerances());
  return VNAlgebra::from_closed_space(std::move(space), {}, a.tolerances());
}

VNAlgebra center(const VNAlgebra& a) { return VNAlgebra::from_closed_space(a.center_space(), {}, a.tolerances()); }

std::vector<ProjectionHandle> minimal_central_projections(const VNAlgebra& a, std::uint64_t seed) {
  std::vector<ProjectionHandle> out;
  const auto mats = seed == kDefaultSeed ? a.central_projections() : compute_minimal_central_projections(a, seed);
  for (const auto& z : mats) out.emplace_back(a, z);
  return out;
}

std::vector<ProjectionHandle> minimal_projections(const VNAlgebra& a, std::uint64_t seed) {
  const auto& tol = a.tolerances();
  const std::size_t d = a.hilbert_dim();
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxSpectralAttempts; ++attempt) {
    const CMatrix h = random_self_adjoint_element(a.space(), rng);
    const auto comps = spectral_projections(h, tol);
    std::vector<ProjectionHandle> out;
    bool minimal = true;
    for (const auto& comp : comps) {
      if (compress(a.space(), comp.projection, comp.projection, tol.rank).dim() != 1) {
        minimal = false;
        break;
      }
      out.emplace_back(a, comp.projection);
    }
    if (minimal) return out;
  }
  throw DegenerateSpectrum("minimal_projections: random element had a degenerate spectrum on C^" + std::to_string(d),
                           seed);
}

TypeReport factor_decomposition(const VNAlgebra& a) {
  const auto& tol = a.tolerances();
  TypeReport report;
  std::size_t total_rank = 0;
  std::size_t total_dim = 0;
  for (const auto& z : a.central_projections()) {
    const std::size_t block_dim = compress(a.space(), z, identity(a.hilbert_dim()), tol.rank).dim();
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(block_dim))));
    if (n == 0 || n * n != block_dim) {
      throw NumericalInconsistency("factor_decomposition: summand of dimension " + std::to_string(block_dim) +
                                   " is not a full matrix algebra");
    }
    const std::size_t r = projection_rank(z);
    if (r % n != 0) {
      throw NumericalInconsistency("factor_decomposition: rank " + std::to_string(r) +
                                   " is not a multiple of block size " + std::to_string(n));
    }
    report.summands.push_back({n, r / n, z});
    total_rank += r;
    total_dim += block_dim;
  }
  if (total_rank != a.hilbert_dim() || total_dim != a.dim()) {
    throw NumericalInconsistency("factor_decomposition: summands do not account for the whole algebra");
  }
  std::stable_sort(report.summands.begin(), report.summands.end(), [](const Summand& x, const Summand& y) {
    return std::pair(x.block_size, x.multiplicity) < std::pair(y.block_size, y.multiplicity);
  });
  report.is_factor = report.summands.size() == 1;
  report.type_label = make_label(report.summands);
  return report;
}

bool same_type(const TypeReport& x, const TypeReport& y) {
  if (x.summands.size() != y.summands.size()) return false;
  for (std::size_t i = 0; i < x.summands.size(); ++i) {
    if (x.summands[i].block_size != y.summands[i].block_size ||
        x.summands[i].multiplicity != y.summands[i].multiplicity) {
      return false;
    }
  }
  return true;
}

std::string format_summands(const TypeReport& r) {
  std::string out = "[";
  for (std::size_t i = 0; i < r.summands.size(); ++i) {
    if (i) out += ", ";
    out += "(" + std::to_string(r.summands[i].block_size) + "," + std::to_string(r.summands[i].multiplicity) + ")";
  }
  return out + "]";
}

bool proj_equivalent(const VNAlgebra& a, const ProjectionHandle& e, const ProjectionHandle& f) {
  for (const auto& z : a.central_projections()) {
    if (projection_rank(z * e.matrix()) != projection_rank(z * f.matrix())) return false;
  }
  return true;
}

CMatrix central_support(const VNAlgebra& a, const ProjectionHandle& e) {
  if (!contains(a.space(), e.matrix(), a.tolerances().eq)) throw InputError("central_support: projection not in algebra");
  CMatrix c = zeros(a.hilbert_dim());
  for (const auto& z : a.central_projections()) {
    // z e is a nonzero projection exactly when its HS norm is at least 1.
    if ((z * e.matrix()).norm() > 0.5) c += z;
  }
  return c;
}

bool is_abelian_projection(const VNAlgebra& a, const ProjectionHandle& e) {
  const auto& tol = a.tolerances();
  const auto corner = compress(a.space(), e.matrix(), e.matrix(), tol.rank);
  const auto& b = corner.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      if ((b[i] * b[j] - b[j] * b[i]).norm() > tol.eq) return false;
    }
  }
  return true;
}

CMatrix random_element(const MatSubspace& s, Rng& rng) {
  CVector c(s.dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = rng.complex_normal();
  return s.combine(c);
}

CMatrix random_self_adjoint_element(const MatSubspace& s, Rng& rng) {
  const CMatrix x = random_element(s, rng);
  return (x + x.adjoint()) / 2.0;
}

}  // namespace gvna
