#include <cmath>
#include <vector>

#include <doctest.h>

#include "kpp/errors.hpp"
#include "kpp/speed.hpp"

using namespace kpp;

TEST_CASE("k(lambda) for zero flow is the analytic parabola") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 64);
  ProblemSpec spec{cs, DiffusionSpec::isotropic(1.0), ShearFlow::zero(cs),
                   KppReaction::make_logistic(1.0)};
  for (double lambda : {0.25, 1.0, 3.0}) {
    const double expected = lambda * lambda + 1.0;
    CHECK(k_of_lambda(spec, lambda).eigenvalue == doctest::Approx(expected).epsilon(1e-11));
  }
  spec.diffusion = DiffusionSpec{2.0, 0.5};
  CHECK(k_of_lambda(spec, 1.5).eigenvalue == doctest::Approx(2.0 * 2.25 + 1.0).epsilon(1e-11));
}

TEST_CASE("homogeneous minimal speed is 2 sqrt(D f'(0))") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 64);
  for (double d : {1.0, 4.0, 0.25}) {
    for (double mu : {1.0, 4.0}) {
      ProblemSpec spec{cs, DiffusionSpec::isotropic(d), ShearFlow::zero(cs),
                       KppReaction::make_logistic(mu)};
      const SpeedResult r = minimal_speed(spec);
      const double expected = 2.0 * std::sqrt(d * mu);
      CHECK(r.c_star == doctest::Approx(expected).epsilon(1e-9));
      CHECK(r.lambda_star == doctest::Approx(std::sqrt(mu / d)).epsilon(1e-5));
      CHECK(r.k_at_star == doctest::Approx(r.c_star * r.lambda_star).epsilon(1e-12));
      CHECK(r.bracket_lo <= r.lambda_star);
      CHECK(r.lambda_star <= r.bracket_hi);
      CHECK(r.evaluations > 0);
    }
  }
}

TEST_CASE("shear flow strictly enhances the speed") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 128);
  ProblemSpec spec{cs, DiffusionSpec::isotropic(1.0), ShearFlow::cosine(cs, 2.0),
                   KppReaction::make_logistic(1.0)};
  const SpeedResult r = minimal_speed(spec);
  CHECK(r.c_star > 2.0 + 1e-4);
  // The speed is below the crude upper bound 2 sqrt(f'(0)) + max q1.
  CHECK(r.c_star < 2.0 + 2.0);
}

TEST_CASE("analytic bounds sandwich k(lambda)") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 128);
  ProblemSpec spec{cs, DiffusionSpec{1.0, 0.5}, ShearFlow::cosine(cs, 3.0, 2),
                   KppReaction::make_logistic(2.0)};
  for (double lambda : {0.1, 0.7, 2.0, 5.0}) {
    const auto [lo, hi] = analytic_bounds(spec, lambda);
    const double k = k_of_lambda(spec, lambda).eigenvalue;
    CHECK(lo <= k + 1e-10);
    CHECK(k <= hi + 1e-10);
  }
}

TEST_CASE("k(lambda) is convex along sampled triples") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 64);
  ProblemSpec spec{cs, DiffusionSpec::A_b(0.5), ShearFlow::cosine(cs, 2.0),
                   KppReaction::make_logistic(1.0)};
  for (double lambda : {0.3, 0.8, 1.5, 2.5}) {
    const double km = k_of_lambda(spec, lambda - 0.1).eigenvalue;
    const double k0 = k_of_lambda(spec, lambda).eigenvalue;
    const double kp = k_of_lambda(spec, lambda + 0.1).eigenvalue;
    CHECK(k0 <= 0.5 * (km + kp) + 1e-10);
  }
}

TEST_CASE("rescaling identity holds to round-off") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 128);
  const ShearFlow flow = ShearFlow::cosine(cs, 4.0);
  const KppReaction reaction = KppReaction::make_logistic(1.0);
  for (double b : {0.1, 0.5, 2.0, 10.0}) {
    CHECK(rescale_identity_check(b, flow, reaction, cs) <= 1e-8);
  }
}

TEST_CASE("speed_for_Ab matches minimal_speed on the assembled spec") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 64);
  const ShearFlow flow = ShearFlow::cosine(cs, 2.0);
  const KppReaction reaction = KppReaction::make_logistic(1.0);
  const SpeedResult via_helper = speed_for_Ab(0.5, flow, reaction, cs);
  ProblemSpec spec{cs, DiffusionSpec::A_b(0.5), flow, reaction};
  const SpeedResult direct = minimal_speed(spec);
  CHECK(via_helper.c_star == doctest::Approx(direct.c_star).epsilon(1e-12));
}

TEST_CASE("minimal_speed rejects invalid specs and non-finite data") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 32);
  ProblemSpec bad{cs, DiffusionSpec::isotropic(0.0), ShearFlow::zero(cs),
                  KppReaction::make_logistic(1.0)};
  CHECK_THROWS_AS(minimal_speed(bad), ValidationError);

  ProblemSpec overflow{cs, DiffusionSpec::isotropic(1.0), ShearFlow::zero(cs),
                       KppReaction::make_logistic(1e308)};
  CHECK_THROWS_AS(minimal_speed(overflow), SolverError);
}

TEST_CASE("lower-bound certificate is a valid lower bound for small b") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 256);
  const ShearFlow flow = ShearFlow::cosine(cs, 6.0);
  const KppReaction reaction = KppReaction::make_logistic(1.0);
  const double delta = 1.0;

  const LowerBoundCertificate probe = lower_bound_certificate(flow, reaction, cs, delta, 1e-4);
  CHECK(probe.b0 > 0.0);
  CHECK(probe.support_len > 0);
  CHECK(probe.grad_energy > 0.0);

  for (double b : {1e-3, 1e-4}) {
    REQUIRE(b < probe.b0);
    const LowerBoundCertificate cert = lower_bound_certificate(flow, reaction, cs, delta, b);
    CHECK(cert.beta_b == doctest::Approx(1.0 - b * cert.grad_energy).epsilon(1e-13));
    CHECK(cert.value ==
          doctest::Approx(2.0 * std::sqrt(cert.beta_b) + (6.0 - delta)).epsilon(1e-13));
    // The certificate bounds c*_{b Id, sqrt(b) q} / sqrt(b) from below.
    const SpeedResult speed =
        minimal_speed({cs, DiffusionSpec::isotropic(b), flow.scaled(std::sqrt(b)), reaction});
    CHECK(cert.value <= speed.c_star / std::sqrt(b) + 1e-8);
  }

  CHECK_THROWS_AS(lower_bound_certificate(flow, reaction, cs, delta, 2.0 * probe.b0),
                  ValidationError);
}

TEST_CASE("speed decreases as transverse diffusion grows for the A_b family") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 128);
  const ShearFlow flow = ShearFlow::cosine(cs, 4.0);
  const KppReaction reaction = KppReaction::make_logistic(1.0);
  double prev = speed_for_Ab(0.05, flow, reaction, cs).c_star;
  for (double b : {0.2, 1.0, 5.0, 25.0}) {
    const double c = speed_for_Ab(b, flow, reaction, cs).c_star;
    CHECK(c < prev);
    prev = c;
  }
  // The two endpoints bracket the known limits.
  CHECK(prev > 2.0 - 1e-6);
  CHECK(speed_for_Ab(0.05, flow, reaction, cs).c_star < 4.0 + 2.0);
}
