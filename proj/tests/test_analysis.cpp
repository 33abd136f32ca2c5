#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "analysis.hpp"
#include "oracle.hpp"

using namespace bergman;

TEST_CASE("classifier ground truth") {
  // (1-r)^α tails are (1-r)^{α+1}/(α+1), so the doubling constant is 2^{α+1}.
  for (double alpha : {0.0, 1.0, 2.5}) {
    ClassReport rep = classify(alpha_shift(make_standard(0.0), alpha));
    CHECK(rep.dhat.verdict);
    CHECK(rep.dcheck.verdict);
    CHECK(rep.regular.verdict);
    CHECK(rep.dhat.C ==
          doctest::Approx(std::pow(2.0, alpha + 1.0)).epsilon(0.05));
    CHECK(rep.dcheck.C_prime <=
          std::pow(2.0, alpha + 1.0) * 1.05);
  }

  // Slowly varying tail 1/(1-log(1-r)): bounded doubling ratio but the
  // K-fold ratio tends to 1, so the lower-doubling verdict must be negative.
  ClassReport lg = classify(make_logarithmic(2.0));
  CHECK(lg.dhat.verdict);
  CHECK(lg.dhat.C <= 1.0 + std::log(2.0) + 0.05);
  CHECK_FALSE(lg.dcheck.verdict);
  CHECK_FALSE(lg.doubling());

  // exp(-1/(1-r)) tails collapse super-fast: upper doubling fails.
  ClassReport ex = classify(make_exponential(1.0));
  CHECK_FALSE(ex.dhat.verdict);

  // Zeroed annulus: doubling survives (tail barely changes) but the
  // pointwise comparison ω̂ ≍ (1-r)ω fails on the dead zone.
  ClassReport za = classify(parse_weight("zero:[0.3,0.4]:std:alpha=1"));
  CHECK(za.doubling());
  CHECK_FALSE(za.regular.verdict);

  ClassReport st = classify(make_standard(1.5));
  CHECK(st.doubling());
  CHECK(st.regular.verdict);

  CHECK_THROWS_AS(classify(make_standard(0.0), 1.0), std::domain_error);
}

TEST_CASE("classifier report serializes") {
  const std::string j = classify(make_standard(0.0)).to_json();
  CHECK(j.find("\"doubling\": true") != std::string::npos);
  CHECK(j.find("C_omega") != std::string::npos);
  CHECK(j.find("reduced_confidence") != std::string::npos);
}

TEST_CASE("bloch seminorm") {
  CHECK(bloch_seminorm(PowerSeries::monomial(1)).value ==
        doctest::Approx(1.0).epsilon(1e-6));

  // max of 2r(1-r²) sits at r = 1/√3.
  NormReport z2 = bloch_seminorm(PowerSeries::monomial(2));
  CHECK(z2.value == doctest::Approx(4.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-4));
  CHECK(z2.refinement_delta < 1e-3);

  // (1-r²)/(1-r) = 1+r climbs to 2; a truncation stays below.
  NormReport lg = bloch_seminorm(parse_series("logfn@512"));
  CHECK(lg.value < 2.0);
  CHECK(lg.value > 1.9);

  // |f(0)| term.
  CHECK(bloch_seminorm(PowerSeries({Complex{3.0, -4.0}})).value ==
        doctest::Approx(5.0));
}

TEST_CASE("besov norm") {
  // f = z, order 2: second derivative vanishes, only |c0| + |c1| survive.
  NormReport z1 = besov_norm(PowerSeries::monomial(1), 2.0);
  CHECK(z1.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(z1.diverged);

  // f = z², p = 2: radial reduction ∫4(1-r)⁴ dλ = 8∫ r(1-r)²/(1+r)² dr.
  const double radial = 8.0 * oracle::simpson(
                                  [](double r) {
                                    const double q = (1.0 - r) / (1.0 + r);
                                    return r * q * q;
                                  },
                                  0.0, 1.0);
  NormReport z2 = besov_norm(PowerSeries::monomial(2), 2.0);
  CHECK(z2.value == doctest::Approx(std::sqrt(radial)).epsilon(1e-6));
  CHECK_FALSE(z2.diverged);

  // Homogeneity of the seminorm term (head terms vanish for z²).
  NormReport z2x2 = besov_norm(PowerSeries::monomial(2) * Complex{2.0}, 2.0);
  CHECK(z2x2.value == doctest::Approx(2.0 * z2.value).epsilon(1e-10));

  CHECK_THROWS_AS(besov_norm(PowerSeries::monomial(1), 2.0, 1),
                  std::domain_error);
  CHECK_THROWS_AS(besov_norm(PowerSeries::monomial(1), 0.4, 2),
                  std::domain_error);
}

TEST_CASE("weighted lambda norm") {
  auto flat = make_standard(0.0);
  // Constant against ω dA/(ω̂(1-r)) = dA/(1-r)²: divergent, must be flagged.
  NormReport bad = lp_lambda_omega_norm(
      flat, [](double) { return 1.0; }, PowerSeries({Complex{1.0}}),
      Complex{0.0}, 1.0);
  CHECK(bad.diverged);

  // Profile (1-r)² tames it: ∫(1-r)²/(1-r)² dA = 1 exactly.
  NormReport ok = lp_lambda_omega_norm(
      flat, [](double r) { return (1.0 - r) * (1.0 - r); },
      PowerSeries({Complex{1.0}}), Complex{0.0}, 1.0);
  CHECK_FALSE(ok.diverged);
  CHECK(ok.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(ok.refinement_delta < 1e-8);
}

TEST_CASE("littlewood-paley identity") {
  auto flat = make_standard(0.0);
  // Worked value: ⟨z,z⟩ = 1/2 and 4⟨1,1⟩_* = 4ω*_0 = 1/2.
  CHECK(lp_identity_residual(PowerSeries::monomial(1), PowerSeries::monomial(1),
                             flat) <= 1e-10);
  // Constants reduce to the mass term.
  CHECK(lp_identity_residual(PowerSeries({Complex{2.0, 1.0}}),
                             PowerSeries({Complex{-1.0, 0.5}}), flat) <= 1e-12);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const char* spec : {"std:alpha=0", "std:alpha=1.5", "log:beta=2"}) {
    auto w = parse_weight(spec);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Complex> fc(51), gc(51);
      for (size_t k = 0; k <= 50; ++k) {
        fc[k] = Complex{u(rng), u(rng)};
        gc[k] = Complex{u(rng), u(rng)};
      }
      PowerSeries f(fc), g(gc);
      MomentTable t = w->moments_upto(50);
      const double scale =
          std::abs(inner_product_radial(f, g, t)) + 1.0;
      CHECK(lp_identity_residual(f, g, w) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("moment-level littlewood-paley skeleton") {
  // The identity reduces to ω_n = 4n²·ω*_{n-1} (n ≥ 1) plus ω_0 = ω(𝔻).
  for (const char* spec : {"std:alpha=0", "log:beta=2"}) {
    auto w = parse_weight(spec);
    auto ws = star_transform(w);
    for (int n : {1, 2, 10, 25}) {
      const double lhs = w->moment(n);
      const double rhs = 4.0 * n * n * ws->moment(n - 1);
      CHECK(rhs == doctest::Approx(lhs).epsilon(1e-8));
    }
    CHECK(w->moment(0) == doctest::Approx(w->total_mass()));
  }
}

TEST_CASE("fractional littlewood-paley identity") {
  auto flat = make_standard(0.0);
  auto eta = make_standard(1.0);
  auto nu = make_logarithmic(2.0);
  PowerSeries z1 = PowerSeries::monomial(1);
  CHECK(frac_lp_residual(z1, z1, flat, eta, nu, 0, 0) == 0.0);
  CHECK(frac_lp_residual(z1, z1, flat, eta, nu, 1, 1) <= 1e-8);

  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Complex> fc(41), gc(41);
    for (size_t k = 0; k <= 40; ++k) {
      fc[k] = Complex{u(rng), u(rng)};
      gc[k] = Complex{u(rng), u(rng)};
    }
    PowerSeries f(fc), g(gc);
    for (int N : {0, 1, 2})
      for (int M : {0, 1}) {
        CHECK(frac_lp_residual(f, g, flat, eta, nu, N, M) <= 1e-8);
      }
  }
}

TEST_CASE("shifted-coefficient derivation of the classical identity") {
  // With f₀ = (f - f(0))/z: ⟨f₀,g₀⟩ against r²ω equals 4⟨f',g'⟩ against ω*.
  auto w = make_standard(1.5);
  auto ws = star_transform(w);
  auto wr2 = r2_multiply(w);
  PowerSeries f = parse_series("poly:[1,2,-1,0.5]");
  PowerSeries g = parse_series("poly:[0,1,1,0,0.25]");
  auto shift = [](const PowerSeries& s) {
    std::vector<Complex> c;
    for (int k = 1; k <= s.degree(); ++k) c.push_back(s.coeff(k));
    return PowerSeries(c);
  };
  MomentTable tr2 = wr2->moments_upto(4);
  MomentTable tstar = ws->moments_upto(4);
  const Complex lhs = inner_product_radial(shift(f), shift(g), tr2);
  const Complex rhs =
      4.0 * inner_product_radial(f.derivative(), g.derivative(), tstar);
  CHECK(std::abs(lhs - rhs) <= 1e-8 * (1.0 + std::abs(lhs)));
}

TEST_CASE("asymptotic tail ratios") {
  // Twice-integrated tail over ω̂(r)(1-r) is exactly 1/(α+2) for (1-r)^α.
  auto sh = alpha_shift(make_standard(0.0), 1.0);
  std::vector<double> radii{0.5, 0.9, 0.99};
  std::vector<double> hh = asymptotic_ratio_probe(RatioProbe::HatHat, sh, 0.0, radii);
  for (double v : hh) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

  std::vector<double> band = asymptotic_ratio_probe(
      RatioProbe::Lemma4, make_standard(1.5), 0.8, {0.5, 0.9, 0.99, 0.9999});
  const double lo = *std::min_element(band.begin(), band.end());
  const double hi = *std::max_element(band.begin(), band.end());
  CHECK(hi / lo < 10.0);

  std::vector<double> blow = asymptotic_ratio_probe(
      RatioProbe::Lemma4, make_exponential(1.0), 0.8, {0.5, 0.9, 0.99});
  CHECK(blow.back() > 10.0 * blow.front());
}

TEST_CASE("fitted tail exponents") {
  ClassReport rep = classify(alpha_shift(make_standard(0.0), 1.5));
  // ω̂ = (1-r)^{2.5}/2.5: the log-log slope recovers the exponent.
  CHECK(rep.exponent_a == doctest::Approx(2.5).epsilon(0.05));
}
