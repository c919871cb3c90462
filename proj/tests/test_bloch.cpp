#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lattes/bloch.hpp"
#include "lattes/experiments.hpp"

using namespace lattes;

namespace {

bool near(const BlochVector& a, const BlochVector& b, double tol) { return distance(a, b) < tol; }

// Central differences of apply_M_L, independent of jacobian_at.
Eigen::Matrix3d finite_difference_jacobian(const BlochVector& b, double h) {
  Eigen::Matrix3d j;
  for (int col = 0; col < 3; ++col) {
    BlochVector plus = b;
    BlochVector minus = b;
    double* p = col == 0 ? &plus.u : col == 1 ? &plus.v : &plus.w;
    double* m = col == 0 ? &minus.u : col == 1 ? &minus.v : &minus.w;
    *p += h;
    *m -= h;
    const BlochVector fp = apply_M_L(plus);
    const BlochVector fm = apply_M_L(minus);
    j(0, col) = (fp.u - fm.u) / (2.0 * h);
    j(1, col) = (fp.v - fm.v) / (2.0 * h);
    j(2, col) = (fp.w - fm.w) / (2.0 * h);
  }
  return j;
}

}  // namespace

TEST_CASE("squaring_S examples") {
  const auto mixed = squaring_S(DensityMatrix2{});
  CHECK(mixed.state.rho11 == doctest::Approx(0.5));
  CHECK(mixed.state.rho22 == doctest::Approx(0.5));
  CHECK(mixed.success_probability == doctest::Approx(0.5));

  // (3/4)^2 / ((3/4)^2 + (1/4)^2) = (9/16) / (10/16)
  const double expected = (9.0 / 16.0) / (10.0 / 16.0);
  const auto biased = squaring_S(DensityMatrix2{0.75, 0.25, Complex{}});
  CHECK(biased.state.rho11 == doctest::Approx(expected));
  CHECK(biased.state.rho22 == doctest::Approx(1.0 - expected));
  CHECK(biased.success_probability == doctest::Approx(10.0 / 16.0));

  // z = 1: all entries 1/2, a fixed point of f0.
  const auto plus = squaring_S(DensityMatrix2{0.5, 0.5, Complex{0.5, 0.0}});
  CHECK(plus.state.rho11 == doctest::Approx(0.5));
  CHECK(plus.state.rho12.real() == doctest::Approx(0.5));
  CHECK(plus.success_probability == doctest::Approx(0.5));
}

TEST_CASE("squaring_S keeps states physical") {
  for (std::uint64_t i = 0; i < 10'000; ++i) {
    Rng rng = sample_stream(31, i);
    const auto rho = density_from_bloch(sample_ball_uniform(1.0, rng));
    const auto out = squaring_S(rho);
    CHECK(out.state.is_valid());
    CHECK(out.state.purity() <= 1.0 + 1e-12);
    CHECK(out.success_probability >= 0.5 - 1e-15);
    CHECK(out.success_probability <= 1.0 + 1e-15);
  }
}

TEST_CASE("apply_M_L examples") {
  CHECK(apply_M_L({0.0, 0.0, 0.0}) == BlochVector{});
  CHECK(apply_M_L({1.0, 0.0, 0.0}) == BlochVector{1.0, 0.0, 0.0});
  CHECK(apply_M_L({0.0, 0.0, 1.0}) == BlochVector{0.0, 1.0, 0.0});
  CHECK(near(apply_M_L({-0.382, -0.786, 0.486}), {-0.382, 0.786, -0.486}, 2e-3));
}

TEST_CASE("apply_M_L maps the ball into itself") {
  for (std::uint64_t i = 0; i < 100'000; ++i) {
    Rng rng = sample_stream(32, i);
    const BlochVector b = sample_ball_uniform(1.0, rng);
    const BlochVector out = apply_M_L(b);
    REQUIRE(out.norm() <= 1.0 + 1e-12);
    REQUIRE(out.purity() <= 1.0 + 1e-12);
  }
}

TEST_CASE("two-step quadratic contraction near C0") {
  for (std::uint64_t i = 0; i < 100'000; ++i) {
    Rng rng = sample_stream(33, i);
    const BlochVector b = sample_ball_uniform(0.1, rng);
    REQUIRE(apply_M_L(apply_M_L(b)).norm() <= 5.0 * b.norm_squared());
  }
}

TEST_CASE("inverse branches at the fixed points") {
  CHECK(inverse_m_plus({0.0, 0.0, 0.0}) == BlochVector{});
  CHECK(inverse_m_minus({0.0, 0.0, 0.0}) == BlochVector{});
  CHECK(near(inverse_m_plus({1.0, 0.0, 0.0}), {1.0, 0.0, 0.0}, 1e-15));
  CHECK(near(inverse_m_minus({1.0, 0.0, 0.0}), {-1.0, 0.0, 0.0}, 1e-15));
  CHECK(apply_M_L(inverse_m_plus({1.0, 0.0, 0.0})) == BlochVector{1.0, 0.0, 0.0});
}

TEST_CASE("inverse branches are right inverses ball-wide") {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 100'000; ++i) {
    Rng rng = sample_stream(34, i);
    const BlochVector t = sample_ball_uniform(1.0, rng);
    const BlochVector p = inverse_m_plus(t);
    const BlochVector m = inverse_m_minus(t);
    REQUIRE(p.norm() <= 1.0 + 1e-12);
    REQUIRE(m.norm() <= 1.0 + 1e-12);
    REQUIRE(p.u >= 0.0);
    REQUIRE(m.u <= 0.0);
    worst = std::max({worst, distance(apply_M_L(p), t), distance(apply_M_L(m), t)});
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("inverse branches on degenerate strata") {
  const auto roundtrip = [](const BlochVector& t) {
    CAPTURE(t);
    for (Branch br : {Branch::plus, Branch::minus}) {
      const BlochVector pre = inverse_M_L(t, br);
      CHECK(std::isfinite(pre.u));
      CHECK(std::isfinite(pre.v));
      CHECK(std::isfinite(pre.w));
      CHECK(pre.norm() <= 1.0 + 1e-12);
      CHECK(distance(apply_M_L(pre), t) < 1e-10);
    }
  };

  SUBCASE("V = 0 and V -> 0") {
    roundtrip({0.3, 0.0, -0.4});
    roundtrip({0.3, 1e-9, -0.4});
    roundtrip({0.3, -1e-300, -0.4});
    roundtrip({-0.3, 1e-12, 0.2});
    CHECK(inverse_m_plus({0.3, 0.0, -0.4}).w == 0.0);
    CHECK(inverse_m_plus({0.3, 1e-12, 0.0}).w == doctest::Approx(5e-13));
  }

  SUBCASE("W = 0 with U <= 0 forces u = 0") {
    for (double big_u : {-0.7, -0.1, -1e-9, 0.0}) {
      const BlochVector t{big_u, 0.5, 0.0};
      roundtrip(t);
      const BlochVector p = inverse_m_plus(t);
      const BlochVector m = inverse_m_minus(t);
      CHECK(p.u == 0.0);
      CHECK(m.u == 0.0);
      const double a = 1.0 + p.w * p.w;
      CHECK(p.v == doctest::Approx(-std::sqrt(-big_u * a)));
      CHECK(m.v == doctest::Approx(std::sqrt(-big_u * a)));
    }
  }

  SUBCASE("W -> 0 with U < 0 approaches the u = 0 stratum continuously") {
    const BlochVector limit = inverse_m_plus({-0.5, 0.2, 0.0});
    const BlochVector nearby = inverse_m_plus({-0.5, 0.2, 1e-12});
    CHECK(distance(limit, nearby) < 1e-10);
    roundtrip({-0.5, 0.2, -1e-14});
  }

  SUBCASE("targets on the sphere and the poles") {
    roundtrip({0.0, 1.0, 0.0});
    roundtrip({0.0, -1.0, 0.0});
    roundtrip({0.0, 0.0, 1.0});
    roundtrip({0.0, 0.0, -1.0});
    roundtrip({-1.0, 0.0, 0.0});
    for (std::uint64_t i = 0; i < 10'000; ++i) {
      Rng rng = sample_stream(35, i);
      BlochVector t = sample_ball_uniform(1.0, rng);
      const double n = t.norm();
      roundtrip({t.u / n, t.v / n, t.w / n});
    }
  }
}

TEST_CASE("find_mixed_cycles reproduces the published coordinates") {
  CHECK_THROWS_AS(find_mixed_cycles(3), std::invalid_argument);

  const auto fixed = find_mixed_cycles(1);
  REQUIRE(fixed.size() == 4);
  CHECK(fixed[0].points[0] == BlochVector{});
  CHECK(near(fixed[1].points[0], {1.0, 0.0, 0.0}, 5e-4));
  CHECK(near(fixed[2].points[0], {-0.382, 0.786, 0.486}, 5e-4));
  CHECK(near(fixed[3].points[0], {-0.382, -0.786, -0.486}, 5e-4));

  const auto all = find_mixed_cycles(2);
  REQUIRE(all.size() == 5);
  const auto& c4 = all[4];
  CHECK(c4.label == "C4");
  REQUIRE(c4.period == 2);
  CHECK(near(c4.points[0], {-0.382, -0.786, 0.486}, 5e-4));
  CHECK(near(c4.points[1], {-0.382, 0.786, -0.486}, 5e-4));

  for (const auto& c : all) {
    CAPTURE(c.label);
    CHECK(c.residual < 1e-12);
    if (c.label == "C0") continue;
    for (const auto& p : c.points) CHECK(p.purity() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("Jacobian at C0 is nilpotent") {
  const Eigen::Matrix3d j = jacobian_at({0.0, 0.0, 0.0});
  Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
  expected(1, 2) = 2.0;
  CHECK((j - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK((j * j).cwiseAbs().maxCoeff() == 0.0);
  CHECK(spectral_radius(j) == doctest::Approx(0.0));
  CHECK((finite_difference_jacobian({0.0, 0.0, 0.0}, 1e-6) - j).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("Jacobian agrees with finite differences inside the ball") {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng = sample_stream(36, i);
    const BlochVector b = sample_ball_uniform(0.99, rng);
    CHECK((finite_difference_jacobian(b, 1e-6) - jacobian_at(b)).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("C1 is repelling for the forward map") {
  const Eigen::Matrix3d j = jacobian_at({1.0, 0.0, 0.0});
  CHECK((finite_difference_jacobian({1.0, 0.0, 0.0}, 1e-6) - j).cwiseAbs().maxCoeff() < 1e-6);
  // Eigenvalues 2 and +-2i.
  CHECK(spectral_radius(j) == doctest::Approx(2.0));
}
