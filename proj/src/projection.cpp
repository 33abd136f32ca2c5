#include "projection.hpp"

#include <cmath>
#include <stdexcept>

#include "analysis.hpp"

namespace bergman {

DiskSample DiskSample::from_factored(Factored f) {
  DiskSample s;
  s.factored = std::move(f);
  return s;
}

DiskSample DiskSample::from_values(std::vector<Complex> values) {
  DiskSample s;
  s.raw_values = std::move(values);
  return s;
}

std::vector<Complex> DiskSample::values_on(const PolarGrid& grid) const {
  const size_t J = static_cast<size_t>(grid.radial_count());
  const size_t M = static_cast<size_t>(grid.angles);
  if (!factored) {
    if (raw_values.size() != J * M)
      throw std::invalid_argument("raw sample does not match grid size");
    return raw_values;
  }
  std::vector<Complex> out(J * M);
  for (size_t j = 0; j < J; ++j) {
    const double r = grid.radial.r[j];
    const double u = factored->profile(r);
    const std::vector<Complex> circ =
        series_on_circle(factored->analytic, r, grid.angles);
    for (size_t m = 0; m < M; ++m)
      out[j * M + m] = factored->constant + u * circ[m];
  }
  return out;
}

PowerSeries project(const WeightPtr& w, const DiskSample& g,
                    const PolarGrid& grid, int N) {
  if (N > grid.max_degree())
    throw std::invalid_argument(
        "grid cannot resolve the requested degree (aliasing)");
  const size_t J = static_cast<size_t>(grid.radial_count());
  const size_t M = static_cast<size_t>(grid.angles);
  const std::vector<Complex> vals = g.values_on(grid);

  // Angular Fourier coefficients a_k(r_j) = (1/M) Σ_m v_{jm} e^{-ik θ_m}.
  std::vector<Complex> fourier(J * static_cast<size_t>(N + 1));
  for (size_t j = 0; j < J; ++j) {
    for (int k = 0; k <= N; ++k) {
      Complex acc{0.0};
      for (size_t m = 0; m < M; ++m) {
        const double th = -grid.angle(static_cast<int>(m)) * k;
        acc += vals[j * M + m] * Complex{std::cos(th), std::sin(th)};
      }
      fourier[j * static_cast<size_t>(N + 1) + static_cast<size_t>(k)] =
          acc / static_cast<double>(M);
    }
  }

  std::vector<Complex> coeffs(static_cast<size_t>(N + 1));
  for (int k = 0; k <= N; ++k) {
    Complex acc{0.0};
    for (size_t j = 0; j < J; ++j) {
      const double r = grid.radial.r[j];
      acc += grid.radial.w[j] * std::pow(r, k + 1) * w->eval(r) *
             fourier[j * static_cast<size_t>(N + 1) + static_cast<size_t>(k)];
    }
    coeffs[static_cast<size_t>(k)] = 2.0 * acc / w->moment(k);
  }
  return PowerSeries(std::move(coeffs));
}

PowerSeries project_factored(const WeightPtr& w, const WeightPtr& profile_weight,
                             const PowerSeries& h, Complex constant, int N) {
  std::vector<Complex> coeffs(static_cast<size_t>(N + 1), Complex{0.0});
  for (int k = 0; k <= std::min(N, h.degree()); ++k)
    coeffs[static_cast<size_t>(k)] =
        h.coeff(k) * profile_weight->moment(k) / w->moment(k);
  coeffs[0] += constant;  // ⟨c, 1⟩_ω / ω_0 = c
  return PowerSeries(std::move(coeffs));
}

BlochPreimage preimage_bloch(const WeightPtr& w, const PowerSeries& h,
                             double alpha, bool force) {
  if (!(alpha > 0.0)) throw std::domain_error("preimage_bloch requires alpha > 0");
  if (!force) {
    const ClassReport rep = classify(w);
    if (!rep.doubling())
      throw std::runtime_error(
          "weight does not look doubling; pre-image construction is only "
          "guaranteed for doubling weights (pass force to override)");
  }
  WeightPtr wa = alpha_shift(w, alpha);
  FracDerivative R(w, wa, h.degree());
  DiskSample::Factored f;
  f.constant = Complex{0.0};
  f.profile = [alpha](double r) { return std::pow(1.0 - r, alpha); };
  f.profile_desc = "(1-r)^alpha";
  f.analytic = R.apply(h);
  return BlochPreimage{DiskSample::from_factored(std::move(f)), std::move(wa)};
}

RegularPreimage preimage_regular(const WeightPtr& w, const PowerSeries& f,
                                 bool force) {
  if (!w->strictly_positive())
    throw std::runtime_error(
        "regular pre-image needs a weight without zeros; the formula can "
        "produce unbounded pre-images otherwise");
  if (!force) {
    const ClassReport rep = classify(w);
    if (!rep.regular.verdict)
      throw std::runtime_error(
          "weight does not look regular (pass force to override)");
  }
  // analytic part 2 z f' + f - f(0): coefficient (2k+1) f_k for k >= 1
  std::vector<Complex> a(static_cast<size_t>(f.degree()) + 1, Complex{0.0});
  for (int k = 1; k <= f.degree(); ++k)
    a[static_cast<size_t>(k)] = (2.0 * k + 1.0) * f.coeff(k);

  DiskSample::Factored fac;
  fac.constant = f.coeff(0);
  WeightPtr wcap = w;
  fac.profile = [wcap](double r) {
    if (r == 0.0) return 0.0;  // removable: the analytic factor vanishes at 0
    return wcap->tail(r) / (r * wcap->eval(r));
  };
  fac.profile_desc = "tail(r)/(r*omega(r))";
  fac.analytic = PowerSeries(std::move(a));

  // u·ω = ω̂(r)/r as a weight, for the 1-D projection fast path
  WeightPtr uw = make_profile_product(
      w,
      [wcap](double r) {
        return wcap->tail(r) / (std::max(r, 1e-300) * wcap->eval(r));
      },
      w->spec() + "@tail_over_r", true);
  return RegularPreimage{DiskSample::from_factored(std::move(fac)),
                         std::move(uw)};
}

std::vector<double> little_bloch_decay(const WeightPtr& w, const PowerSeries& h,
                                       double alpha,
                                       const std::vector<double>& radii,
                                       int angles) {
  WeightPtr wa = alpha_shift(w, alpha);
  FracDerivative R(w, wa, h.degree());
  const PowerSeries rh = R.apply(h);
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) {
    const std::vector<Complex> circ = series_on_circle(rh, r, angles);
    double mx = 0.0;
    for (const Complex& v : circ) mx = std::max(mx, std::abs(v));
    out.push_back(std::pow(1.0 - r, alpha) * mx);
  }
  return out;
}

}  // namespace bergman
