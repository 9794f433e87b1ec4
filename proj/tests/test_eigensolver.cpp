#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "kpp/eigensolver.hpp"
#include "kpp/errors.hpp"

using namespace kpp;

namespace {

std::vector<double> cos_potential(const CrossSection& cs, double amplitude = 1.0, int mode = 1) {
  std::vector<double> v(cs.n);
  for (int i = 0; i < cs.n; ++i) {
    v[i] = amplitude * std::cos(2.0 * std::numbers::pi * mode * cs.node(i) / cs.length);
  }
  return v;
}

}  // namespace

TEST_CASE("assemble: periodic stencil entries and zero row sums") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 4);
  const CellOperator op = assemble(cs, 1.0, std::vector<double>(4, 0.0));
  CHECK(op.coupling == doctest::Approx(16.0).epsilon(1e-15));
  const auto a = op.dense();
  for (int i = 0; i < 4; ++i) {
    CHECK(a[i * 4 + i] == doctest::Approx(-32.0).epsilon(1e-15));
    double row_sum = 0.0;
    for (int j = 0; j < 4; ++j) row_sum += a[i * 4 + j];
    CHECK(std::abs(row_sum) < 1e-12);
  }
  CHECK(a[0 * 4 + 3] == doctest::Approx(16.0).epsilon(1e-15));
  CHECK(a[3 * 4 + 0] == doctest::Approx(16.0).epsilon(1e-15));
}

TEST_CASE("assemble: Neumann walls drop the outward coupling") {
  const CrossSection cs = make_grid(BoundaryKind::IntervalNeumann, 1.0, 4);
  const CellOperator op = assemble(cs, 1.0, std::vector<double>(4, 0.0));
  const auto a = op.dense();
  CHECK(a[0] == doctest::Approx(-16.0).epsilon(1e-15));
  CHECK(a[1] == doctest::Approx(16.0).epsilon(1e-15));
  for (int i = 0; i < 4; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < 4; ++j) row_sum += a[i * 4 + j];
    CHECK(std::abs(row_sum) < 1e-12);
  }
}

TEST_CASE("assemble: constant potential is a diagonal shift") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 4);
  const CellOperator base = assemble(cs, 1.0, std::vector<double>(4, 0.0));
  const CellOperator shifted = assemble(cs, 1.0, std::vector<double>(4, 2.5));
  for (int i = 0; i < 4; ++i) {
    CHECK(shifted.diag[i] == doctest::Approx(base.diag[i] + 2.5).epsilon(1e-15));
  }
  CHECK_THROWS_AS(assemble(cs, 0.0, std::vector<double>(4, 0.0)), ValidationError);
  CHECK_THROWS_AS(assemble(cs, 1.0, std::vector<double>(5, 0.0)), ValidationError);
}

TEST_CASE("assembled matrix is exactly symmetric") {
  for (auto kind : {BoundaryKind::CirclePeriodic, BoundaryKind::IntervalNeumann}) {
    const CrossSection cs = make_grid(kind, 2.0, 16);
    const CellOperator op = assemble(cs, 0.7, cos_potential(cs, 3.0, 2));
    const auto a = op.dense();
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) {
        CHECK(a[i * 16 + j] == a[j * 16 + i]);
      }
    }
  }
}

TEST_CASE("principal eigenpair: constant potential gives k = c with constant eigenfunction") {
  for (auto kind : {BoundaryKind::CirclePeriodic, BoundaryKind::IntervalNeumann}) {
    const CrossSection cs = make_grid(kind, 1.0, 32);
    const CellOperator op = assemble(cs, 2.0, std::vector<double>(32, 1.7));
    const EigenResult r = principal_eigenpair(op);
    CHECK(r.eigenvalue == doctest::Approx(1.7).epsilon(1e-12));
    for (double psi : r.eigenfunction) CHECK(psi == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.residual <= 1e-10 * (1.0 + std::abs(r.eigenvalue)));
  }
}

TEST_CASE("principal eigenpair on a 2x2 dense example") {
  // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
  CellOperator op;
  op.n = 2;
  op.h = 1.0;
  op.coupling = 1.0;
  op.bc = BoundaryKind::IntervalNeumann;
  op.diag = {2.0, 2.0};
  op.potential = {2.0, 2.0};
  CHECK(principal_eigenpair(op).eigenvalue == doctest::Approx(3.0).epsilon(1e-12));
  const auto eigs = dense_oracle_eigenvalues(op);
  CHECK(eigs.front() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eigs.back() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("dense oracle: diagonal matrix") {
  CellOperator op;
  op.n = 3;
  op.h = 1.0;
  op.coupling = 0.0;
  op.bc = BoundaryKind::IntervalNeumann;
  op.diag = {2.0, 1.0, 3.0};
  op.potential = op.diag;
  const auto eigs = dense_oracle_eigenvalues(op);
  REQUIRE(eigs.size() == 3);
  CHECK(eigs[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eigs[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(eigs[2] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("dense oracle: 4-point periodic Laplacian spectrum") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 4);
  const CellOperator op = assemble(cs, 1.0, std::vector<double>(4, 0.0));
  const auto eigs = dense_oracle_eigenvalues(op);
  // Eigenvalues -(2 beta/h^2)(1 - cos(2 pi k/4)), h = 1/4.
  CHECK(eigs[0] == doctest::Approx(-64.0).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(-32.0).epsilon(1e-12));
  CHECK(eigs[2] == doctest::Approx(-32.0).epsilon(1e-12));
  CHECK(std::abs(eigs[3]) < 1e-10);
}

TEST_CASE("oracle equivalence for a cosine potential at n = 64") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 64);
  const CellOperator op = assemble(cs, 1.0, cos_potential(cs));
  const EigenResult r = principal_eigenpair(op);
  const auto eigs = dense_oracle_eigenvalues(op);
  CHECK(std::abs(r.eigenvalue - eigs.back()) <= 1e-10 * (1.0 + std::abs(r.eigenvalue)));
  CHECK(r.residual <= 1e-10 * (1.0 + std::abs(r.eigenvalue)));
}

TEST_CASE("Perron positivity and variational dominance on random operators") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> amp(-4.0, 4.0);
  std::uniform_real_distribution<double> beta_dist(0.2, 5.0);
  std::uniform_int_distribution<int> n_dist(8, 96);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = n_dist(rng);
    const auto kind =
        trial % 2 == 0 ? BoundaryKind::CirclePeriodic : BoundaryKind::IntervalNeumann;
    const CrossSection cs = make_grid(kind, 1.0, n);
    std::vector<double> v = cos_potential(cs, amp(rng), 1 + trial % 3);
    const CellOperator op = assemble(cs, beta_dist(rng), v);
    const EigenResult r = principal_eigenpair(op);

    for (double psi : r.eigenfunction) CHECK(psi > 0.0);
    CHECK(*std::max_element(r.eigenfunction.begin(), r.eigenfunction.end()) ==
          doctest::Approx(1.0).epsilon(1e-15));

    // Any test vector's Rayleigh quotient is dominated by the principal value.
    std::uniform_real_distribution<double> entry(0.1, 1.0);
    for (int probe = 0; probe < 5; ++probe) {
      std::vector<double> phi(n);
      for (double& x : phi) x = entry(rng);
      CHECK(op.rayleigh(phi) <= r.eigenvalue + 1e-12 * (1.0 + std::abs(r.eigenvalue)));
    }
  }
}

TEST_CASE("mesh convergence of the principal eigenvalue is second order") {
  auto k_at = [](int n) {
    const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, n);
    return principal_eigenpair(assemble(cs, 1.0, cos_potential(cs))).eigenvalue;
  };
  const double reference = k_at(512);
  const double e32 = std::abs(k_at(32) - reference);
  const double e64 = std::abs(k_at(64) - reference);
  const double e128 = std::abs(k_at(128) - reference);
  CHECK(std::log2(e32 / e64) >= 1.9);
  CHECK(std::log2(e64 / e128) >= 1.9);
}

TEST_CASE("dense oracle size cap") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 1024);
  const CellOperator op = assemble(cs, 1.0, std::vector<double>(1024, 0.0));
  CHECK_THROWS_AS(dense_oracle_eigenvalues(op), ValidationError);
}
