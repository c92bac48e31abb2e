#include <doctest.h>

#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "gvna/errors.hpp"
#include "gvna/linalg.hpp"
#include "support.hpp"

using namespace gvna;
using namespace gvna::testing;

namespace {

const Tolerances kTol;

// Complex rank of integer vectors: half the real rank of {v, iv} embedded in R^{2n},
// computed by fraction-free integer elimination.
std::size_t exact_complex_rank(const std::vector<std::vector<std::complex<long long>>>& vecs) {
  using Int = __int128;
  std::vector<std::vector<Int>> rows;
  for (const auto& v : vecs) {
    std::vector<Int> re, im;
    for (const auto& x : v) re.push_back(x.real()), re.push_back(x.imag());
    for (const auto& x : v) im.push_back(-x.imag()), im.push_back(x.real());
    rows.push_back(re);
    rows.push_back(im);
  }
  const auto normalize = [](std::vector<Int>& row) {
    Int g = 0;
    for (const Int x : row) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1) {
      for (Int& x : row) x /= g;
    }
  };
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const Int f = rows[r][c];
      const Int p = rows[rank][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = rows[r][k] * p - f * rows[rank][k];
      normalize(rows[r]);
    }
    ++rank;
  }
  return rank / 2;
}

}  // namespace

TEST_CASE("kron follows the (i1, i2) -> i1 * d2 + i2 convention") {
  const CMatrix a = mat2(1, 2, 3, 4);
  const CMatrix b = sigma_x();
  const CMatrix k = kron(a, b);
  CHECK(k.rows() == 4);
  CHECK(k(0 * 2 + 1, 1 * 2 + 0) == Complex(2.0));
  CHECK(k(1 * 2 + 0, 0 * 2 + 1) == Complex(3.0));
  CHECK(k(1 * 2 + 1, 1 * 2 + 0) == Complex(4.0));
}

TEST_CASE("Hilbert-Schmidt inner product") {
  CHECK(hs_inner(identity(2), identity(2)) == Complex(2.0));
  CHECK(std::abs(hs_inner(sigma_x(), sigma_z())) == doctest::Approx(0.0));
  CHECK(hs_norm(sigma_y()) == doctest::Approx(std::sqrt(2.0)));
  const CMatrix a = mat2(Complex(0, 1), 0, 0, 0);
  CHECK(hs_inner(a, identity(2)) == std::conj(hs_inner(identity(2), a)));
}

TEST_CASE("orthonormalize examples") {
  SUBCASE("collinear inputs") {
    const std::vector<CMatrix> in{identity(2), 2.0 * identity(2)};
    const auto s = orthonormalize(in, kTol.rank);
    REQUIRE(s.dim() == 1);
    CHECK((s.basis()[0] - identity(2) / std::sqrt(2.0)).norm() < 1e-12);
  }
  SUBCASE("orthogonal pair") {
    const std::vector<CMatrix> in{identity(2), sigma_z()};
    CHECK(orthonormalize(in, kTol.rank).dim() == 2);
  }
  SUBCASE("random matrices with pairwise sums, rank checked by exact elimination") {
    Rng rng(7);
    std::vector<CMatrix> in;
    for (int i = 0; i < 4; ++i) {
      CMatrix m(3, 3);
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) m(r, c) = Complex(static_cast<double>(rng.index(19)) - 9.0, static_cast<double>(rng.index(19)) - 9.0);
      }
      in.push_back(m);
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) in.push_back(in[i] + in[j]);
    }
    std::vector<std::vector<std::complex<long long>>> rows;
    for (const auto& m : in) {
      std::vector<std::complex<long long>> row;
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) row.emplace_back(std::llround(m(r, c).real()), std::llround(m(r, c).imag()));
      }
      rows.push_back(row);
    }
    CHECK(exact_complex_rank(rows) == 4);
    CHECK(orthonormalize(in, kTol.rank).dim() == 4);
  }
  SUBCASE("basis is orthonormal") {
    Rng rng(11);
    std::vector<CMatrix> in;
    for (int i = 0; i < 6; ++i) in.push_back(random_matrix(3, rng));
    const auto s = orthonormalize(in, kTol.rank);
    for (std::size_t i = 0; i < s.dim(); ++i) {
      for (std::size_t j = 0; j < s.dim(); ++j) {
        CHECK(std::abs(hs_inner(s.basis()[i], s.basis()[j]) - Complex(i == j ? 1.0 : 0.0)) < kTol.eq);
      }
    }
  }
  SUBCASE("dimension mismatch") {
    const std::vector<CMatrix> in{identity(2), identity(3)};
    CHECK_THROWS_AS(orthonormalize(in, kTol.rank), InputError);
  }
}

TEST_CASE("orthonormalize is idempotent") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<CMatrix> in;
    for (int i = 0; i < 5; ++i) in.push_back(random_matrix(3, rng));
    in.push_back(in[0] - 2.0 * in[1]);
    const auto s = orthonormalize(in, kTol.rank);
    const auto t = orthonormalize(s.basis(), kTol.rank);
    CHECK(t.dim() == s.dim());
    CHECK(subspace_equal(s, t, kTol.eq));
  }
}

TEST_CASE("contains examples") {
  const std::vector<CMatrix> scalars{identity(2)};
  const auto s = orthonormalize(scalars, kTol.rank);
  CHECK(contains(s, 3.0 * identity(2), kTol.eq));
  CHECK_FALSE(contains(s, sigma_z(), kTol.eq));
  CHECK_THROWS_AS(contains(s, identity(3), kTol.eq), InputError);

  const auto comm = commutant_solve(matrix_units(2), 2);
  CHECK(contains(comm, 5.0 * identity(2), kTol.eq));
  CHECK_FALSE(contains(comm, sigma_x(), kTol.eq));
  CHECK_FALSE(contains(comm, identity(2) + sigma_y(), kTol.eq));
}

TEST_CASE("subspace_equal examples") {
  const std::vector<CMatrix> i2{identity(2)};
  const std::vector<CMatrix> two_i2{2.0 * identity(2)};
  CHECK(subspace_equal(orthonormalize(i2, kTol.rank), orthonormalize(i2, kTol.rank), kTol.eq));
  CHECK(subspace_equal(orthonormalize(i2, kTol.rank), orthonormalize(two_i2, kTol.rank), kTol.eq));

  std::vector<CMatrix> even;
  for (const auto& e : matrix_units(2)) even.push_back((e + sigma_z() * e * sigma_z()) / 2.0);
  CHECK(subspace_equal(orthonormalize(even, kTol.rank), orthonormalize(diagonal_units(2), kTol.rank), kTol.eq));
  CHECK_FALSE(subspace_equal(orthonormalize(i2, kTol.rank), orthonormalize(diagonal_units(2), kTol.rank), kTol.eq));
}

TEST_CASE("intersect examples") {
  const auto diag = orthonormalize(diagonal_units(2), kTol.rank);
  const std::vector<CMatrix> ix{identity(2), sigma_x()};
  const auto s = orthonormalize(ix, kTol.rank);
  CHECK(subspace_equal(intersect(diag, diag), diag, kTol.eq));
  const auto both = intersect(diag, s);
  REQUIRE(both.dim() == 1);
  CHECK(contains(both, identity(2), kTol.eq));

  std::vector<CMatrix> left, right;
  for (const auto& e : matrix_units(2)) {
    left.push_back(direct_sum(e, zeros(2)));
    right.push_back(direct_sum(zeros(2), e));
  }
  CHECK(intersect(orthonormalize(left, kTol.rank), orthonormalize(right, kTol.rank)).dim() == 0);
}

TEST_CASE("intersect is symmetric") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<CMatrix> a, b;
    const CMatrix shared = random_matrix(3, rng);
    a.push_back(shared);
    b.push_back(2.0 * shared);
    for (int i = 0; i < 3; ++i) {
      a.push_back(random_matrix(3, rng));
      b.push_back(random_matrix(3, rng));
    }
    const auto s = orthonormalize(a, kTol.rank);
    const auto t = orthonormalize(b, kTol.rank);
    const auto st = intersect(s, t);
    CHECK(st.dim() == 1);
    CHECK(subspace_equal(st, intersect(t, s), kTol.eq));
  }
}

TEST_CASE("commutant_solve examples") {
  CHECK(commutant_solve(matrix_units(3), 3).dim() == 1);
  CHECK(commutant_solve({}, 3).dim() == 9);
  const std::vector<CMatrix> gens{diagonal({1.0, 2.0})};
  const auto c = commutant_solve(gens, 2);
  CHECK(subspace_equal(c, orthonormalize(diagonal_units(2), kTol.rank), kTol.eq));
}

TEST_CASE("double commutant inclusion on random *-closed spans") {
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix x = random_matrix(2, rng);
    std::vector<CMatrix> gens{direct_sum(x, x.adjoint() * x), direct_sum(x.adjoint(), x.adjoint() * x)};
    std::vector<CMatrix> span{identity(4), gens[0], gens[1]};
    const auto s = orthonormalize(span, kTol.rank);
    const auto once = commutant_solve(s.basis(), 4);
    const auto twice = commutant_solve(once.basis(), 4);
    for (const auto& b : s.basis()) CHECK(contains(twice, b, kTol.eq));
  }
}

TEST_CASE("nullspace agrees with exact rank") {
  Eigen::MatrixXcd m(3, 4);
  m << 1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 0, 1;
  const auto n = nullspace(m, 1e-9);
  CHECK(n.cols() == 2);
  CHECK((m * n).norm() < 1e-12);
  CHECK((n.adjoint() * n - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);

  Eigen::MatrixXcd tall = Eigen::MatrixXcd::Zero(20, 3);
  tall.col(0).setConstant(1.0);
  tall.col(1).setConstant(2.0);
  tall(4, 2) = 1.0;
  CHECK(nullspace(tall, 1e-9).cols() == 1);
}

TEST_CASE("spectral_projections examples") {
  SUBCASE("identity") {
    const auto sp = spectral_projections(identity(2));
    REQUIRE(sp.size() == 1);
    CHECK(sp[0].eigenvalue == doctest::Approx(1.0));
    CHECK((sp[0].projection - identity(2)).norm() < 1e-12);
  }
  SUBCASE("sigma_x") {
    const auto sp = spectral_projections(sigma_x());
    REQUIRE(sp.size() == 2);
    CHECK(sp[0].eigenvalue == doctest::Approx(-1.0));
    CHECK((sp[0].projection - (identity(2) - sigma_x()) / 2.0).norm() < 1e-12);
    CHECK((sp[1].projection - (identity(2) + sigma_x()) / 2.0).norm() < 1e-12);
  }
  SUBCASE("near-degenerate cluster") {
    const auto sp = spectral_projections(diagonal({1.0, 1.0 + 1e-9, 5.0}));
    REQUIRE(sp.size() == 2);
    CHECK(projection_rank(sp[0].projection) == 2);
    CHECK(projection_rank(sp[1].projection) == 1);
  }
  SUBCASE("non-self-adjoint input") { CHECK_THROWS_AS(spectral_projections(unit(2, 0, 1)), InputError); }
}

TEST_CASE("spectral projections reconstruct random self-adjoint matrices") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + rng.index(6);
    const CMatrix x = random_matrix(d, rng);
    const CMatrix a = (x + x.adjoint()) / 2.0;
    const auto sp = spectral_projections(a);
    CMatrix sum = zeros(d);
    CMatrix recon = zeros(d);
    for (std::size_t k = 0; k < sp.size(); ++k) {
      sum += sp[k].projection;
      recon += sp[k].eigenvalue * sp[k].projection;
      for (std::size_t l = k + 1; l < sp.size(); ++l) CHECK((sp[k].projection * sp[l].projection).norm() <= 1e-9);
    }
    CHECK((sum - identity(d)).norm() <= 1e-9);
    CHECK((recon - a).norm() <= 1e-8);
  }
}

TEST_CASE("Jacobi eigenvalues match Eigen's self-adjoint solver") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + rng.index(10);
    const CMatrix x = random_matrix(d, rng);
    const CMatrix a = (x + x.adjoint()) / 2.0;
    const auto mine = hermitian_eigen(a);
    const Eigen::MatrixXcd dense = a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> reference(dense);
    for (std::size_t k = 0; k < d; ++k) {
      CHECK(mine.values[k] == doctest::Approx(reference.eigenvalues()(static_cast<Eigen::Index>(k))).epsilon(1e-10));
    }
    const CMatrix v = mine.vectors;
    CHECK((v.adjoint() * v - identity(d)).norm() < 1e-10);
  }
}

TEST_CASE("projection predicates") {
  CHECK(is_projection((identity(2) + sigma_x()) / 2.0, kTol.eq));
  CHECK_FALSE(is_projection(sigma_x(), kTol.eq));
  CHECK(is_self_adjoint_unitary(sigma_y(), kTol.eq));
  CHECK_FALSE(is_self_adjoint_unitary(2.0 * identity(2), kTol.eq));
  CHECK(projection_rank(diagonal({1.0, 0.0, 1.0})) == 2);
  CHECK_THROWS_AS(projection_rank(diagonal({0.5, 0.0})), NumericalInconsistency);
  CHECK((range_projection(unit(3, 0, 1)) - unit(3, 0, 0)).norm() < 1e-12);
}
