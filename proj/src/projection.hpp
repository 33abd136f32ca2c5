#ifndef BERGMAN_PROJECTION_HPP
#define BERGMAN_PROJECTION_HPP

#include <functional>
#include <optional>

#include "grid.hpp"
#include "operators.hpp"
#include "series.hpp"
#include "weights.hpp"

namespace bergman {

// A sampled function on the disk, optionally in the factored form
// g(z) = constant + profile(|z|) · analytic(z).
struct DiskSample {
  struct Factored {
    Complex constant{0.0};
    std::function<double(double)> profile;
    std::string profile_desc;
    PowerSeries analytic;
  };

  std::optional<Factored> factored;

  // Values laid out radius-major on a grid (row j = radius j, M angles).
  std::vector<Complex> values_on(const PolarGrid& grid) const;

  static DiskSample from_factored(Factored f);
  static DiskSample from_values(std::vector<Complex> values);

  // Only set for samples constructed from raw values.
  std::vector<Complex> raw_values;
};

// Bergman projection P_ω of grid samples: coefficients c_k = ⟨g, ξ^k⟩_ω/ω_k,
// angular part by discrete Fourier sums, radial part by grid weights.
// Throws when N exceeds the grid's resolvable degree.
PowerSeries project(const WeightPtr& w, const DiskSample& g,
                    const PolarGrid& grid, int N);

// Fast path for factored samples: c_k = h_k · (uω)_k / ω_k (+ the constant),
// 1-D quadrature only. `profile_weight` must be the pointwise product u·ω.
PowerSeries project_factored(const WeightPtr& w, const WeightPtr& profile_weight,
                             const PowerSeries& h, Complex constant, int N);

// Theorem-4 pre-image of a Bloch function: g_α = (1-|z|)^α R^{ω,ω_α} h.
// Returns the factored sample together with the ω_α weight used (sharing it
// with project_factored makes the round trip cancel exactly).
struct BlochPreimage {
  DiskSample sample;
  WeightPtr omega_alpha;
};
BlochPreimage preimage_bloch(const WeightPtr& w, const PowerSeries& h,
                             double alpha, bool force = false);

// §6-style pre-image for strictly positive regular weights:
// h = f(0) + ω̂(|z|)/(|z|ω(|z|)) (2 z f'(z) + f(z) - f(0)).
struct RegularPreimage {
  DiskSample sample;
  WeightPtr profile_weight;  // u·ω = ω̂(r)/r
};
RegularPreimage preimage_regular(const WeightPtr& w, const PowerSeries& f,
                                 bool force = false);

// Samples max_θ |g_α(r e^{iθ})| along the given radii (decay toward the
// boundary for polynomial h).
std::vector<double> little_bloch_decay(const WeightPtr& w, const PowerSeries& h,
                                       double alpha,
                                       const std::vector<double>& radii,
                                       int angles = 512);

}  // namespace bergman

#endif
