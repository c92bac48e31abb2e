#include <doctest.h>

#include <algorithm>

#include "gvna/errors.hpp"
#include "gvna/presets.hpp"
#include "gvna/vn_algebra.hpp"
#include "support.hpp"

using namespace gvna;
using namespace gvna::testing;

namespace {

const Tolerances kTol;

VNAlgebra m2_plus_m3() {
  std::vector<CMatrix> gens;
  for (const auto& e : matrix_units(2)) gens.push_back(direct_sum(e, zeros(3)));
  for (const auto& e : matrix_units(3)) gens.push_back(direct_sum(zeros(2), e));
  return generate(gens, 5);
}

VNAlgebra m2_plus_m2() {
  std::vector<CMatrix> gens;
  for (const auto& e : matrix_units(2)) {
    gens.push_back(direct_sum(e, zeros(2)));
    gens.push_back(direct_sum(zeros(2), e));
  }
  return generate(gens, 4);
}

VNAlgebra m2_with_multiplicity_2() {
  std::vector<CMatrix> gens;
  for (const auto& e : matrix_units(2)) gens.push_back(kron(e, identity(2)));
  return generate(gens, 4);
}

void check_report_counts(const VNAlgebra& a, const TypeReport& r) {
  std::size_t d = 0;
  std::size_t dim = 0;
  for (const auto& s : r.summands) {
    d += s.block_size * s.multiplicity;
    dim += s.block_size * s.block_size;
  }
  CHECK(d == a.hilbert_dim());
  CHECK(dim == a.dim());
}

// Random algebra: a random unitary conjugate of a block-diagonal sum of matrix factors with multiplicity.
VNAlgebra random_algebra(Rng& rng, std::size_t max_dim) {
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::size_t d = 0;
  while (true) {
    const std::size_t n = 1 + rng.index(2);
    const std::size_t m = 1 + rng.index(2);
    if (d + n * m > max_dim) break;
    blocks.emplace_back(n, m);
    d += n * m;
    if (rng.index(3) == 0) break;
  }
  if (blocks.empty()) {
    blocks.emplace_back(1, 1);
    d = 1;
  }
  std::vector<CMatrix> gens;
  std::size_t offset = 0;
  for (const auto& [n, m] : blocks) {
    for (const auto& e : matrix_units(n)) {
      CMatrix g = zeros(d);
      g.block(static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(n * m),
              static_cast<Eigen::Index>(n * m)) = kron(e, identity(m));
      gens.push_back(g);
    }
    offset += n * m;
  }
  const CMatrix u = random_unitary(d, rng);
  for (auto& g : gens) g = u * g * u.adjoint();
  return generate(gens, d);
}

}  // namespace

TEST_CASE("generate examples") {
  CHECK(generate(std::vector<CMatrix>{}, 3).dim() == 1);
  CHECK(generate(std::vector<CMatrix>{unit(2, 0, 1), unit(2, 1, 0)}, 2).dim() == 4);
  const auto a = generate(std::vector<CMatrix>{kron(sigma_x(), sigma_x())}, 4);
  CHECK(a.dim() == 2);
  CHECK(contains(a.space(), identity(4), kTol.eq));
  CHECK(contains(a.space(), kron(sigma_x(), sigma_x()), kTol.eq));
  CHECK_THROWS_AS(generate(std::vector<CMatrix>{identity(3)}, 2), InputError);
}

TEST_CASE("generate is a closure operator") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_algebra(rng, 6);
    CHECK(algebra_invariant_residual(a) <= kTol.eq);
    CHECK(generate(a.space().basis(), a.hilbert_dim()).dim() == a.dim());
  }
}

TEST_CASE("commutant examples") {
  CHECK(commutant(generate(matrix_units(3), 3)).dim() == 1);
  CHECK(commutant(generate(std::vector<CMatrix>{}, 3)).dim() == 9);
  const auto diag = generate(diagonal_units(3), 3);
  CHECK(subspace_equal(commutant(diag).space(), diag.space(), kTol.eq));
  CHECK(subspace_equal(commutant(diag).space(), commutant_solve(diagonal_units(3), 3), kTol.eq));
}

TEST_CASE("center examples") {
  CHECK(center(generate(matrix_units(3), 3)).dim() == 1);
  const auto z = center(m2_plus_m3());
  CHECK(z.dim() == 2);
  CHECK(contains(z.space(), direct_sum(identity(2), zeros(3)), kTol.eq));
  CHECK(contains(z.space(), direct_sum(zeros(2), identity(3)), kTol.eq));
  CHECK(center(generate(diagonal_units(3), 3)).dim() == 3);
}

TEST_CASE("minimal central projections examples") {
  const auto full = minimal_central_projections(generate(matrix_units(2), 2));
  REQUIRE(full.size() == 1);
  CHECK((full[0].matrix() - identity(2)).norm() < kTol.eq);

  const auto two = minimal_central_projections(m2_plus_m3());
  REQUIRE(two.size() == 2);
  std::vector<std::size_t> ranks{two[0].rank(), two[1].rank()};
  std::sort(ranks.begin(), ranks.end());
  CHECK(ranks == std::vector<std::size_t>{2, 3});

  const auto three = minimal_central_projections(generate(diagonal_units(3), 3));
  REQUIRE(three.size() == 3);
  for (const auto& p : three) CHECK(p.rank() == 1);
}

TEST_CASE("factor_decomposition examples") {
  SUBCASE("M2 with multiplicity 2") {
    const auto a = m2_with_multiplicity_2();
    const auto r = factor_decomposition(a);
    CHECK(r.is_factor);
    CHECK(format_summands(r) == "[(2,2)]");
    CHECK(r.type_label == "I_2");
    check_report_counts(a, r);
  }
  SUBCASE("M2 + M2") {
    const auto r = factor_decomposition(m2_plus_m2());
    CHECK_FALSE(r.is_factor);
    CHECK(format_summands(r) == "[(2,1), (2,1)]");
    CHECK(r.type_label == "I_2 ⊕ I_2");
  }
  SUBCASE("C + C") {
    const auto r = factor_decomposition(generate(diagonal_units(2), 2));
    CHECK(format_summands(r) == "[(1,1), (1,1)]");
    CHECK(r.type_label == "I_1 ⊕ I_1");
  }
}

TEST_CASE("type report counts and double commutant on random algebras") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_algebra(rng, 8);
    const auto r = factor_decomposition(a);
    check_report_counts(a, r);
    CHECK(subspace_equal(commutant(commutant(a)).space(), a.space(), kTol.eq));
  }
}

TEST_CASE("double commutant holds on presets") {
  for (const char* name : {"sp:1", "sp:2", "mf:2,1", "mf:2,2", "clifford:3", "diag:4:2,1,3,4"}) {
    CAPTURE(name);
    CHECK(double_commutant_holds(build_preset(name).alg()));
  }
}

TEST_CASE("proj_equivalent examples") {
  const auto m2 = generate(matrix_units(2), 2);
  CHECK(proj_equivalent(m2, ProjectionHandle(m2, unit(2, 0, 0)), ProjectionHandle(m2, unit(2, 1, 1))));

  const auto mm = m2_plus_m2();
  CHECK_FALSE(proj_equivalent(mm, ProjectionHandle(mm, unit(4, 0, 0)), ProjectionHandle(mm, unit(4, 2, 2))));

  const auto diag = generate(diagonal_units(2), 2);
  CHECK_FALSE(proj_equivalent(diag, ProjectionHandle(diag, unit(2, 0, 0)), ProjectionHandle(diag, unit(2, 1, 1))));

  CHECK_THROWS_AS(ProjectionHandle(m2, sigma_x()), InputError);
  CHECK_THROWS_AS(ProjectionHandle(diag, (identity(2) + sigma_x()) / 2.0), InputError);
}

TEST_CASE("proj_equivalent is an equivalence relation on sampled projections") {
  const auto a = m2_plus_m3();
  std::vector<ProjectionHandle> ps;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    for (auto& p : minimal_projections(a, seed)) ps.push_back(p);
  }
  ps.emplace_back(a, identity(5));
  ps.emplace_back(a, direct_sum(identity(2), zeros(3)));
  for (const auto& e : ps) CHECK(proj_equivalent(a, e, e));
  for (const auto& e : ps) {
    for (const auto& f : ps) {
      const bool ef = proj_equivalent(a, e, f);
      CHECK(ef == proj_equivalent(a, f, e));
      if (!ef) continue;
      for (const auto& g : ps) {
        if (proj_equivalent(a, f, g)) CHECK(proj_equivalent(a, e, g));
      }
    }
  }
}

TEST_CASE("central_support examples") {
  const auto m3 = generate(matrix_units(3), 3);
  CHECK((central_support(m3, ProjectionHandle(m3, unit(3, 1, 1))) - identity(3)).norm() < kTol.eq);

  const auto mm = m2_plus_m2();
  CHECK((central_support(mm, ProjectionHandle(mm, unit(4, 0, 0))) - direct_sum(identity(2), zeros(2))).norm() <
        kTol.eq);

  const auto diag = generate(diagonal_units(3), 3);
  const CMatrix e12 = unit(3, 0, 0) + unit(3, 1, 1);
  CHECK((central_support(diag, ProjectionHandle(diag, e12)) - e12).norm() < kTol.eq);
}

TEST_CASE("central support dominates the projection") {
  const auto a = m2_plus_m3();
  for (const auto& e : minimal_projections(a, 5)) {
    const CMatrix c = central_support(a, e);
    const auto eig = hermitian_eigen(c - e.matrix());
    CHECK(eig.values.front() >= -kTol.eq);
  }
}

TEST_CASE("is_abelian_projection examples") {
  const auto m3 = generate(matrix_units(3), 3);
  CHECK(is_abelian_projection(m3, ProjectionHandle(m3, unit(3, 2, 2))));
  const auto m2 = generate(matrix_units(2), 2);
  CHECK_FALSE(is_abelian_projection(m2, ProjectionHandle(m2, identity(2))));
  const auto mm = m2_plus_m2();
  CHECK(is_abelian_projection(mm, ProjectionHandle(mm, unit(4, 0, 0) + unit(4, 2, 2))));
}

TEST_CASE("minimal projections are abelian and sum to the identity") {
  const auto a = m2_with_multiplicity_2();
  const auto ps = minimal_projections(a);
  CHECK(ps.size() == 2);
  CMatrix sum = zeros(4);
  for (const auto& p : ps) {
    sum += p.matrix();
    CHECK(is_abelian_projection(a, p));
  }
  CHECK((sum - identity(4)).norm() < kTol.eq);
}

TEST_CASE("same_type ignores summand order") {
  const auto a = factor_decomposition(m2_plus_m3());
  std::vector<CMatrix> gens;
  for (const auto& e : matrix_units(3)) gens.push_back(direct_sum(e, zeros(2)));
  for (const auto& e : matrix_units(2)) gens.push_back(direct_sum(zeros(3), e));
  const auto b = factor_decomposition(generate(gens, 5));
  CHECK(same_type(a, b));
  CHECK_FALSE(same_type(a, factor_decomposition(m2_plus_m2())));
}
