#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "quadrature.hpp"

using namespace bergman;

TEST_CASE("polynomial on (0,1)") {
  auto q = integrate01([](double x, double) { return x * x; });
  CHECK(q.converged);
  CHECK(q.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("integrable singularity at the left endpoint") {
  auto q = integrate01([](double x, double) { return std::log(1.0 / x); });
  CHECK(q.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("right-endpoint singularity uses the exact distance") {
  // 1/sqrt(1-x): the dist_to_right argument avoids catastrophic cancellation.
  auto q = integrate01(
      [](double, double d) { return 1.0 / std::sqrt(d); });
  CHECK(q.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("affine-mapped interval") {
  auto q = integrate([](double x, double) { return std::sin(x); }, 0.0, M_PI);
  CHECK(q.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("split rule handles a jump exactly at the breakpoint") {
  auto step = [](double x, double) { return x < 0.3 || x > 0.4 ? 1.0 : 0.0; };
  auto q = integrate_split(step, 0.0, 1.0, {0.3, 0.4});
  CHECK(q.value == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("radial rule integrates smooth functions") {
  RadialRule rule = radial_rule(60);
  double acc = 0.0;
  for (size_t i = 0; i < rule.r.size(); ++i)
    acc += rule.w[i] * rule.r[i] * rule.r[i] * rule.r[i];
  CHECK(acc == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("radial rule keeps 1-r exact near the boundary") {
  RadialRule rule = radial_rule(120);
  double worst = 0.0;
  for (size_t i = 0; i < rule.r.size(); ++i) {
    if (rule.one_minus_r[i] < 1e-8) {
      // 1 - r computed directly would lose most digits here.
      CHECK(rule.one_minus_r[i] > 0.0);
    }
    worst = std::max(worst, std::abs((1.0 - rule.r[i]) - rule.one_minus_r[i]));
  }
  CHECK(worst < 1e-15);
}

TEST_CASE("radial rule splits at breakpoints") {
  RadialRule rule = radial_rule(80, {0.3, 0.4});
  auto step = [](double r) { return r < 0.3 || r > 0.4 ? 1.0 : 0.0; };
  double acc = 0.0;
  for (size_t i = 0; i < rule.r.size(); ++i) acc += rule.w[i] * step(rule.r[i]);
  CHECK(acc == doctest::Approx(0.9).epsilon(1e-8));
}
