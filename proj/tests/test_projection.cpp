#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracle.hpp"
#include "projection.hpp"

using namespace bergman;

namespace {

double max_coeff_dev(const PowerSeries& a, const PowerSeries& b) {
  double dev = 0.0;
  for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k)
    dev = std::max(dev, std::abs(a.coeff(k) - b.coeff(k)));
  return dev;
}

}  // namespace

TEST_CASE("grid self-calibration: monomials are orthogonal on the grid") {
  for (const char* spec : {"std:alpha=0", "zero:[0.3,0.4]:std:alpha=1"}) {
    auto w = parse_weight(spec);
    const PolarGrid grid = PolarGrid::build(200, 34, w->breakpoints());
    for (int m = 0; m <= 8; ++m) {
      DiskSample g = DiskSample::from_factored(
          {Complex{0.0}, [](double) { return 1.0; }, "1", PowerSeries::monomial(m)});
      PowerSeries p = project(w, g, grid, 8);
      for (int k = 0; k <= 8; ++k) {
        const double expect = k == m ? 1.0 : 0.0;
        CHECK(std::abs(p.coeff(k) - expect) <= 1e-8);
      }
    }
  }
}

TEST_CASE("projection of anti-analytic input vanishes") {
  auto w = make_standard(0.0);
  const PolarGrid grid = PolarGrid::build(120, 32);
  const size_t J = static_cast<size_t>(grid.radial_count());
  const size_t M = static_cast<size_t>(grid.angles);
  std::vector<Complex> vals(J * M);
  for (size_t j = 0; j < J; ++j)
    for (size_t m = 0; m < M; ++m) {
      const double th = grid.angle(static_cast<int>(m));
      const Complex xi{grid.radial.r[j] * std::cos(th),
                       grid.radial.r[j] * std::sin(th)};
      vals[j * M + m] = std::conj(xi);
    }
  PowerSeries p = project(w, DiskSample::from_values(std::move(vals)), grid, 10);
  for (int k = 0; k <= 10; ++k) CHECK(std::abs(p.coeff(k)) <= 1e-10);
}

TEST_CASE("projection reproduces polynomials") {
  auto w = make_standard(1.5);
  const PolarGrid grid = PolarGrid::build(200, 40);
  PowerSeries f = parse_series("poly:[1,-0.5,0,2,0.25]");
  DiskSample g = DiskSample::from_factored(
      {Complex{0.0}, [](double) { return 1.0; }, "1", f});
  CHECK(max_coeff_dev(project(w, g, grid, 4), f) <= 1e-10);
  // Idempotence: projecting the result changes nothing.
  DiskSample g2 = DiskSample::from_factored(
      {Complex{0.0}, [](double) { return 1.0; }, "1", project(w, g, grid, 4)});
  CHECK(max_coeff_dev(project(w, g2, grid, 4), f) <= 1e-10);
}

TEST_CASE("aliasing refusal") {
  auto w = make_standard(0.0);
  const PolarGrid grid = PolarGrid::build(60, 16);
  DiskSample g = DiskSample::from_factored(
      {Complex{0.0}, [](double) { return 1.0; }, "1", PowerSeries::monomial(1)});
  CHECK_THROWS_AS(project(w, g, grid, 12), std::invalid_argument);
}

TEST_CASE("factored and grid paths agree") {
  auto w = make_standard(0.0);
  PowerSeries h = parse_series("poly:[0.5,1,-1,0.25]");
  DiskSample::Factored fac{Complex{0.2}, [](double r) { return 1.0 - r; },
                           "(1-r)", h};
  WeightPtr uw = make_profile_product(
      w, [](double r) { return 1.0 - r; }, "(1-r)*flat", true);
  PowerSeries fast = project_factored(w, uw, h, fac.constant, 3);
  const PolarGrid grid = PolarGrid::build(200, 16);
  PowerSeries slow = project(w, DiskSample::from_factored(fac), grid, 3);
  CHECK(max_coeff_dev(fast, slow) <= 1e-8);
}

TEST_CASE("bounded pre-image: worked flat-weight values") {
  auto w = make_standard(0.0);
  // h ≡ 1, α = 1: analytic part is the constant ω_0/(ω_α)_0 = 3.
  BlochPreimage p1 = preimage_bloch(w, PowerSeries({Complex{1.0}}), 1.0);
  REQUIRE(p1.sample.factored.has_value());
  CHECK(p1.sample.factored->analytic.coeff(0).real() ==
        doctest::Approx(3.0).epsilon(1e-10));
  CHECK(p1.sample.factored->profile(0.75) == doctest::Approx(0.25));

  // h = z, α = 1: ω_1/(ω_α)_1 = (1/2)/(1/10) = 5.
  BlochPreimage p2 = preimage_bloch(w, PowerSeries::monomial(1), 1.0);
  CHECK(p2.sample.factored->analytic.coeff(1).real() ==
        doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("bounded pre-image round trip") {
  for (const char* spec : {"std:alpha=0", "std:alpha=1.5"}) {
    auto w = parse_weight(spec);
    for (double alpha : {0.5, 1.0, 2.0}) {
      PowerSeries h = parse_series("poly:[1,0.5,-2,0,0.125,3]");
      BlochPreimage p = preimage_bloch(w, h, alpha);
      WeightPtr uw = make_profile_product(
          w, [alpha](double r) { return std::pow(1.0 - r, alpha); },
          "(1-r)^a*w", true);
      // Factored path with the shared alpha-shift weight: exact cancellation.
      PowerSeries fast =
          project_factored(w, p.omega_alpha, p.sample.factored->analytic,
                           p.sample.factored->constant, h.degree());
      CHECK(max_coeff_dev(fast, h) <= 1e-10);
      // Independent profile-product weight still agrees to quadrature level.
      PowerSeries fast2 =
          project_factored(w, uw, p.sample.factored->analytic,
                           p.sample.factored->constant, h.degree());
      CHECK(max_coeff_dev(fast2, h) <= 1e-8);
      // Grid path.
      const PolarGrid grid = PolarGrid::build(200, 2 * h.degree() + 2);
      PowerSeries slow = project(w, p.sample, grid, h.degree());
      CHECK(max_coeff_dev(slow, h) <= 1e-6);
    }
  }
}

TEST_CASE("bounded pre-image gate") {
  auto exp1 = make_exponential(1.0);
  CHECK_THROWS_AS(preimage_bloch(exp1, PowerSeries::monomial(1), 1.0),
                  std::runtime_error);
  // Override still produces a factored sample.
  BlochPreimage p = preimage_bloch(exp1, PowerSeries::monomial(1), 1.0, true);
  CHECK(p.sample.factored.has_value());
}

TEST_CASE("regular pre-image: worked flat-weight value") {
  // f = z, flat weight: profile ω̂/(rω) = (1-r)/r, analytic part 3z, so the
  // k = 1 projection coefficient is 3·2∫r²(1-r)dr / ω_1 = 1.
  auto w = make_standard(0.0);
  RegularPreimage p = preimage_regular(w, PowerSeries::monomial(1));
  REQUIRE(p.sample.factored.has_value());
  CHECK(p.sample.factored->analytic.coeff(1).real() == doctest::Approx(3.0));
  CHECK(p.sample.factored->profile(0.5) == doctest::Approx(1.0).epsilon(1e-12));
  const double brute =
      oracle::simpson([](double r) { return 2.0 * r * r * (1.0 - r); }, 0.0, 1.0);
  CHECK(3.0 * brute / w->moment(1) == doctest::Approx(1.0).epsilon(1e-10));
  PowerSeries rec = project_factored(w, p.profile_weight,
                                     p.sample.factored->analytic,
                                     p.sample.factored->constant, 1);
  CHECK(max_coeff_dev(rec, PowerSeries::monomial(1)) <= 1e-8);
}

TEST_CASE("regular pre-image round trip") {
  for (const char* spec : {"std:alpha=0", "std:alpha=1.5", "std:alpha=3"}) {
    auto w = parse_weight(spec);
    PowerSeries f = parse_series("poly:[0.5,1,0,-0.25,2]");
    RegularPreimage p = preimage_regular(w, f);
    PowerSeries rec = project_factored(w, p.profile_weight,
                                       p.sample.factored->analytic,
                                       p.sample.factored->constant, f.degree());
    CHECK(max_coeff_dev(rec, f) <= 1e-8);
    // Grid path.
    const PolarGrid grid = PolarGrid::build(260, 2 * f.degree() + 2);
    PowerSeries slow = project(w, p.sample, grid, f.degree());
    CHECK(max_coeff_dev(slow, f) <= 1e-6);
  }
  // Constant input: the correction vanishes and h = f.
  auto w = make_standard(0.0);
  RegularPreimage pc = preimage_regular(w, PowerSeries({Complex{2.0, -1.0}}));
  for (int k = 0; k <= pc.sample.factored->analytic.degree(); ++k)
    CHECK(std::abs(pc.sample.factored->analytic.coeff(k)) == 0.0);
  CHECK(pc.sample.factored->constant == Complex{2.0, -1.0});
}

TEST_CASE("regular pre-image rejects weights with zeros") {
  auto w = parse_weight("zero:[0.3,0.4]:std:alpha=1");
  CHECK_THROWS_AS(preimage_regular(w, PowerSeries::monomial(1)),
                  std::runtime_error);
}

TEST_CASE("factored samples match their grid values") {
  auto w = make_standard(0.0);
  BlochPreimage p = preimage_bloch(w, parse_series("poly:[1,1,1]"), 1.0);
  const PolarGrid grid = PolarGrid::build(40, 16);
  const std::vector<Complex> vals = p.sample.values_on(grid);
  for (int j = 0; j < grid.radial_count(); j += 7) {
    const double r = grid.radial.r[static_cast<size_t>(j)];
    for (int m = 0; m < grid.angles; m += 5) {
      const double th = grid.angle(m);
      const Complex z{r * std::cos(th), r * std::sin(th)};
      const Complex direct =
          std::pow(1.0 - r, 1.0) * p.sample.factored->analytic.eval(z);
      const Complex gridval = vals[static_cast<size_t>(j * grid.angles + m)];
      CHECK(std::abs(direct - gridval) <= 1e-10 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("decay curve toward the boundary") {
  auto w = make_standard(0.0);
  // h ≡ 1: the curve is exactly (1-r)^α ω_0/(ω_α)_0.
  std::vector<double> radii{0.0, 0.5, 0.9, 0.99};
  std::vector<double> curve =
      little_bloch_decay(w, PowerSeries({Complex{1.0}}), 1.0, radii);
  for (size_t i = 0; i < radii.size(); ++i)
    CHECK(curve[i] == doctest::Approx(3.0 * (1.0 - radii[i])).epsilon(1e-10));

  PowerSeries h = parse_series("poly:[1,1,1]");
  std::vector<double> rs;
  for (int i = 0; i <= 40; ++i) rs.push_back(i / 41.0);
  rs.push_back(0.999);
  std::vector<double> c2 = little_bloch_decay(w, h, 1.0, rs);
  const double peak = *std::max_element(c2.begin(), c2.end());
  CHECK(c2.back() <= 0.01 * peak);
}
