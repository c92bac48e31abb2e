#include "gvna/graded_tensor.hpp"

#include <algorithm>
#include <cmath>

#include "gvna/errors.hpp"

namespace gvna {

namespace {

CMatrix gamma_power(const CMatrix& gamma, int degree) {
  return degree == 0 ? identity(static_cast<std::size_t>(gamma.rows())) : gamma;
}

std::string product_name(const GradedAlgebra& g1, const GradedAlgebra& g2, const char* op) {
  if (g1.name().empty() || g2.name().empty()) return {};
  return "(" + g1.name() + ") " + op + " (" + g2.name() + ")";
}

// Random homogeneous element; the degree falls back to 0 when the odd part is {0}.
std::pair<CMatrix, int> random_homogeneous(const GradedAlgebra& g, Rng& rng) {
  const auto& s = g.split();
  int deg = rng.uniform() < 0.5 ? 0 : 1;
  if (s.odd.dim() == 0) deg = 0;
  return {random_element(deg == 0 ? s.even : s.odd, rng), deg};
}

CMatrix random_in(const MatSubspace& s, Rng& rng) {
  if (s.dim() == 0) return zeros(s.ambient_dim());
  return random_element(s, rng);
}

double relative(const CMatrix& diff, const CMatrix& ref) { return diff.norm() / std::max(1.0, ref.norm()); }

VNAlgebra algebra_of(const MatSubspace& s, const Tolerances& tol) { return VNAlgebra::from_closed_space(s, {}, tol); }

MatSubspace conjugated_span(const MatSubspace& s, const CMatrix& left, const CMatrix& right, double tau_rank) {
  std::vector<CMatrix> mats;
  mats.reserve(s.dim());
  for (const auto& b : s.basis()) mats.push_back(left * b * right);
  return orthonormalize(mats, tau_rank);
}

}  // namespace

CMatrix pi_embed(const GradedAlgebra& g1, const GradedAlgebra& g2, const HomogeneousTensor& t) {
  const auto check = [](const GradedAlgebra& g, const CMatrix& x, int deg, const char* leg) {
    if (x.rows() != g.gamma().rows() || x.cols() != g.gamma().cols() || !contains(g.alg().space(), x, g.tolerances().eq)) {
      throw InputError(std::string("pi_embed: ") + leg + " factor is not in its algebra");
    }
    const auto actual = degree(g, x);
    if (!actual || (*actual != deg && x.norm() > g.tolerances().eq)) {
      throw InputError(std::string("pi_embed: ") + leg + " factor is not homogeneous of degree " + std::to_string(deg));
    }
  };
  check(g1, t.a, t.da, "left");
  check(g2, t.b, t.db, "right");
  return kron(t.a * gamma_power(g1.gamma(), t.db), t.b);
}

CMatrix swap_unitary(std::size_t d1, std::size_t d2) {
  CMatrix u = CMatrix::Zero(static_cast<Eigen::Index>(d1 * d2), static_cast<Eigen::Index>(d1 * d2));
  for (std::size_t i1 = 0; i1 < d1; ++i1) {
    for (std::size_t i2 = 0; i2 < d2; ++i2) u(i2 * d1 + i1, i1 * d2 + i2) = 1.0;
  }
  return u;
}

std::vector<std::pair<CMatrix, int>> homogeneous_generators(const GradedAlgebra& g) {
  std::vector<std::pair<CMatrix, int>> out;
  const double tol = g.tolerances().eq;
  for (const auto& x : g.alg().generators()) {
    const CMatrix t = g.gamma() * x * g.gamma();
    const CMatrix x0 = (x + t) / 2.0;
    const CMatrix x1 = (x - t) / 2.0;
    const double scale = tol * std::max(1.0, x.norm());
    if (x0.norm() > scale) out.emplace_back(x0, 0);
    if (x1.norm() > scale) out.emplace_back(x1, 1);
  }
  return out;
}

SignRuleReport verify_sign_rules(const GradedAlgebra& g1, const GradedAlgebra& g2, std::size_t samples,
                                 std::uint64_t seed) {
  Rng rng(seed);
  SignRuleReport report;
  report.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const auto [a1, da1] = random_homogeneous(g1, rng);
    const auto [b1, db1] = random_homogeneous(g2, rng);
    const auto [a2, da2] = random_homogeneous(g1, rng);
    const auto [b2, db2] = random_homogeneous(g2, rng);
    const CMatrix p1 = pi_embed(g1, g2, {a1, da1, b1, db1});
    const CMatrix p2 = pi_embed(g1, g2, {a2, da2, b2, db2});
    const double sign = (db1 * da2) % 2 ? -1.0 : 1.0;
    const CMatrix prod = pi_embed(g1, g2, {a1 * a2, (da1 + da2) % 2, b1 * b2, (db1 + db2) % 2});
    report.product_residual = std::max(report.product_residual, relative(p1 * p2 - sign * prod, prod));
    const double adj_sign = (da1 * db1) % 2 ? -1.0 : 1.0;
    const CMatrix adj = pi_embed(g1, g2, {a1.adjoint(), da1, b1.adjoint(), db1});
    report.adjoint_residual = std::max(report.adjoint_residual, relative(p1.adjoint() - adj_sign * adj, adj));
  }
  return report;
}

GradedTensorProduct graded_tensor(const GradedAlgebra& g1, const GradedAlgebra& g2) {
  const std::size_t d1 = g1.hilbert_dim();
  const std::size_t d2 = g2.hilbert_dim();
  // π(a ⊗̂ I) and π(I ⊗̂ b) generate every π(a ⊗̂ b) = π(a ⊗̂ I) π(I ⊗̂ b).
  std::vector<CMatrix> gens;
  for (const auto& [a, da] : homogeneous_generators(g1)) gens.push_back(kron(a, identity(d2)));
  for (const auto& [b, db] : homogeneous_generators(g2)) gens.push_back(kron(gamma_power(g1.gamma(), db), b));
  VNAlgebra alg = generate(gens, d1 * d2, g1.tolerances());
  GradedAlgebra result(std::move(alg), kron(g1.gamma(), g2.gamma()), product_name(g1, g2, "⊗̂"));
  return {g1, g2, std::move(result)};
}

VNAlgebra ordinary_tensor(const VNAlgebra& a1, const VNAlgebra& a2) {
  const std::size_t d1 = a1.hilbert_dim();
  const std::size_t d2 = a2.hilbert_dim();
  std::vector<CMatrix> gens;
  for (const auto& a : a1.generators()) gens.push_back(kron(a, identity(d2)));
  for (const auto& b : a2.generators()) gens.push_back(kron(identity(d1), b));
  return generate(gens, d1 * d2, a1.tolerances());
}

VNAlgebra ordinary_tensor(const GradedAlgebra& g1, const GradedAlgebra& g2) {
  return ordinary_tensor(g1.alg(), g2.alg());
}

VNAlgebra commutant_formula(const GradedAlgebra& g1, const GradedAlgebra& g2) {
  const std::size_t d1 = g1.hilbert_dim();
  const std::size_t d2 = g2.hilbert_dim();
  const GradedAlgebra c1(commutant(g1.alg()), g1.gamma());
  const VNAlgebra c2 = commutant(g2.alg());
  // X0 ⊗ Y and X1 ⊗ YΓ2 are products of X0 ⊗ I, I ⊗ Y and X1 ⊗ Γ2 since Γ2 normalizes R2'.
  std::vector<CMatrix> gens;
  for (const auto& x : c1.split().even.basis()) gens.push_back(kron(x, identity(d2)));
  for (const auto& x : c1.split().odd.basis()) gens.push_back(kron(x, g2.gamma()));
  for (const auto& y : c2.space().basis()) gens.push_back(kron(identity(d1), y));
  return generate(gens, d1 * d2, g1.tolerances());
}

CenterFormula tensor_center_formula(const GradedAlgebra& g1, const GradedAlgebra& g2) {
  const GradedAlgebra z1 = graded_center(g1);
  const GradedAlgebra z2 = graded_center(g2);
  if (!is_balanced(z1) || !is_balanced(z2)) {
    throw PreconditionError("tensor_center_formula: graded centers must both be balanced");
  }
  const auto product = graded_tensor(g1, g2);
  VNAlgebra lhs = center(product.result.alg());
  VNAlgebra rhs =
      ordinary_tensor(algebra_of(z1.split().even, g1.tolerances()), algebra_of(z2.split().even, g2.tolerances()));
  const double residual = subspace_residual(lhs.space(), rhs.space());
  return {std::move(lhs), std::move(rhs), residual <= g1.tolerances().eq, residual};
}

SwapReport swap_isomorphism(const GradedAlgebra& g1, const GradedAlgebra& g2, std::size_t samples,
                            std::uint64_t seed) {
  const std::size_t d1 = g1.hilbert_dim();
  const std::size_t d2 = g2.hilbert_dim();
  const CMatrix& gam1 = g1.gamma();
  const CMatrix& gam2 = g2.gamma();
  const CMatrix gamma = kron(gam1, gam2);
  const CMatrix w = swap_unitary(d1, d2) * gamma * v_operator(gamma) * kron(v_operator(gam1), v_operator(gam2));
  const CMatrix w_adj = w.adjoint();

  const auto forward = graded_tensor(g1, g2);
  const auto backward = graded_tensor(g2, g1);
  const MatSubspace image = conjugated_span(forward.result.alg().space(), w, w_adj, g1.tolerances().rank);
  const double residual = subspace_residual(image, backward.result.alg().space());

  Rng rng(seed);
  double worst = 0.0;
  const auto phi = [&](const CMatrix& x) { return CMatrix(w * x * w_adj); };
  for (std::size_t k = 0; k < samples; ++k) {
    const CMatrix a0 = random_in(g1.split().even, rng);
    const CMatrix a1 = random_in(g1.split().odd, rng);
    const CMatrix b0 = random_in(g2.split().even, rng);
    const CMatrix b1 = random_in(g2.split().odd, rng);
    const std::pair<CMatrix, CMatrix> cases[] = {
        {phi(kron(a0, b0)), kron(b0, a0)},
        {phi(kron(a0 * gam1, b1)), kron(b1, a0)},
        {phi(kron(a1, b0)), kron(b0 * gam2, a1)},
        {phi(kron(a1 * gam1, b1)), -kron(b1 * gam2, a1)},
    };
    for (const auto& [got, want] : cases) worst = std::max(worst, relative(got - want, want));
  }
  return {w, residual <= g1.tolerances().eq, residual, worst};
}

EvenPartReport even_part_identity(const GradedAlgebra& g1, const GradedAlgebra& g2) {
  const std::size_t d1 = g1.hilbert_dim();
  const auto& tol = g1.tolerances();
  const auto product = graded_tensor(g1, g2);
  const auto& space = product.result.alg().space();

  EvenPartReport report{};
  const CMatrix j = kron(identity(d1), g2.gamma());
  std::vector<CMatrix> spatial_even;
  for (const auto& b : space.basis()) spatial_even.push_back((b + j * b * j) / 2.0);
  const MatSubspace spatial = orthonormalize(spatial_even, tol.rank);
  const VNAlgebra ordinary = ordinary_tensor(g1.alg(), algebra_of(g2.split().even, tol));
  report.spatial_residual = subspace_residual(spatial, ordinary.space());
  report.spatial_equal = report.spatial_residual <= tol.eq;

  const auto u2 = find_odd_symmetry(graded_center(g2)).symmetry;
  report.iso_applicable = u2.has_value();
  if (!report.iso_applicable) return report;

  const CMatrix v = v_operator(kron(g1.gamma(), *u2));
  const MatSubspace image = conjugated_span(ordinary.space(), v.adjoint(), v, tol.rank);
  const MatSubspace& even = product.result.split().even;
  report.iso_residual = subspace_residual(image, even);
  report.iso_equal = report.iso_residual <= tol.eq;
  report.even_type = factor_decomposition(algebra_of(even, tol));
  report.ordinary_type = factor_decomposition(ordinary);
  report.types_equal = same_type(report.even_type, report.ordinary_type) && even.dim() == ordinary.dim();
  return report;
}

AbelianGrid abelian_grid(const GradedAlgebra& g1, const GradedAlgebra& g2, std::uint64_t seed) {
  const auto& tol = g1.tolerances();
  for (const auto* g : {&g1, &g2}) {
    if (!is_central(*g)) throw PreconditionError("abelian_grid: input is not central");
    if (factor_decomposition(g->alg()).is_factor) throw PreconditionError("abelian_grid: input is a factor");
  }
  const auto u1 = odd_center_line(g1);
  if (!u1) throw PreconditionError("abelian_grid: first input has no odd central symmetry");

  const std::size_t d1 = g1.hilbert_dim();
  const VNAlgebra even1 = algebra_of(g1.split().even, tol);
  const VNAlgebra even2 = algebra_of(g2.split().even, tol);
  const auto es = minimal_projections(even1, seed);
  const auto fs = minimal_projections(even2, seed);
  const CMatrix plus = (identity(d1) + *u1) / 2.0;
  const CMatrix minus = (identity(d1) - *u1) / 2.0;

  AbelianGrid grid{};
  for (const auto* half : {&plus, &minus}) {
    for (const auto& e : es) {
      for (const auto& f : fs) grid.projections.push_back(kron(*half * e.matrix(), f.matrix()));
    }
  }

  const auto product = graded_tensor(g1, g2);
  const VNAlgebra& r = product.result.alg();
  const std::size_t d = r.hilbert_dim();
  grid.in_algebra = std::all_of(grid.projections.begin(), grid.projections.end(), [&](const CMatrix& p) {
    return is_projection(p, tol.eq) && contains(r.space(), p, tol.eq);
  });
  if (!grid.in_algebra) return grid;

  std::vector<ProjectionHandle> handles;
  for (const auto& p : grid.projections) handles.emplace_back(r, p);
  CMatrix sum = zeros(d);
  grid.abelian = grid.equivalent = grid.full_support = true;
  for (const auto& h : handles) {
    sum += h.matrix();
    grid.abelian = grid.abelian && is_abelian_projection(r, h);
    grid.equivalent = grid.equivalent && proj_equivalent(r, h, handles.front());
    grid.full_support = grid.full_support && (central_support(r, h) - identity(d)).norm() <= tol.eq;
  }
  grid.sums_to_identity = (sum - identity(d)).norm() <= tol.eq;
  return grid;
}

ConditionalExpectation::ConditionalExpectation(const GradedAlgebra& g1, const GradedAlgebra& g2)
    : d1_(g1.hilbert_dim()),
      d2_(g2.hilbert_dim()),
      gamma1_(g1.gamma()),
      domain_(twist(graded_tensor(g1, g2).result)),
      target_(twist(g2)) {}

CMatrix ConditionalExpectation::psi(const CVector& z, const CMatrix& t) const {
  const auto& tol = domain_.tolerances();
  if (static_cast<std::size_t>(z.size()) != d1_ || std::abs(z.norm() - 1.0) > tol.eq) {
    throw InputError("conditional_expectation: z must be a unit vector in C^" + std::to_string(d1_));
  }
  if (t.rows() != domain_.gamma().rows() || !contains(domain_.alg().space(), t, tol.eq)) {
    throw InputError("conditional_expectation: T is not in the twisted product algebra");
  }
  const CMatrix flip = kron(gamma1_, identity(d2_));
  const CMatrix e = (t + flip * t * flip) / 2.0;
  CMatrix out = zeros(d2_);
  const auto n = static_cast<Eigen::Index>(d2_);
  for (std::size_t i = 0; i < d1_; ++i) {
    for (std::size_t k = 0; k < d1_; ++k) {
      const Complex c = std::conj(z(i)) * z(k);
      if (c != Complex(0.0)) out += c * e.block(i * n, k * n, n, n);
    }
  }
  return out;
}

CMatrix ConditionalExpectation::phi(const CVector& z, const CMatrix& t) const {
  return kron(identity(d1_), psi(z, t));
}

CMatrix conditional_expectation(const GradedAlgebra& g1, const GradedAlgebra& g2, const CVector& z,
                                const CMatrix& t) {
  return ConditionalExpectation(g1, g2).phi(z, t);
}

SupportComparison central_support_compare(const GradedAlgebra& g1, const GradedAlgebra& g2, const CMatrix& a,
                                          const CMatrix& b) {
  const auto require_even = [](const GradedAlgebra& g, const CMatrix& x) {
    if (x.rows() != g.gamma().rows() || !contains(g.alg().space(), x, g.tolerances().eq) || degree(g, x) != 0) {
      throw InputError("central_support_compare: input is not an even element of its algebra");
    }
  };
  require_even(g1, a);
  require_even(g2, b);
  const auto& tol = g1.tolerances();
  CMatrix x = kron(a, b);
  if (!is_projection(x, tol.eq)) x = range_projection(x, tol);

  const auto product = graded_tensor(g1, g2);
  const VNAlgebra ordinary = ordinary_tensor(g1, g2);
  CMatrix c = central_support(product.result.alg(), ProjectionHandle(product.result.alg(), x));
  CMatrix d = central_support(ordinary, ProjectionHandle(ordinary, x));
  const bool equal = (c - d).norm() <= tol.eq;
  return {std::move(c), std::move(d), equal};
}

FactorCaseReport factor_case_identity(const GradedAlgebra& g1, const GradedAlgebra& g2) {
  const auto t1 = factor_decomposition(g1.alg());
  if (!t1.is_factor || t1.summands.front().multiplicity != 1) {
    throw PreconditionError("factor_case_identity: first input must be a full matrix algebra B(C^d)");
  }
  if (!is_balanced(g2)) throw PreconditionError("factor_case_identity: second input is not balanced");
  const auto product = graded_tensor(g1, g2);
  const VNAlgebra ordinary = ordinary_tensor(g1, g2);
  const double residual = subspace_residual(product.result.alg().space(), ordinary.space());
  return {residual <= g1.tolerances().eq, residual, factor_decomposition(product.result.alg()),
          factor_decomposition(ordinary)};
}

}  // namespace gvna
