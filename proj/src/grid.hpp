#ifndef BERGMAN_GRID_HPP
#define BERGMAN_GRID_HPP

#include <complex>
#include <vector>

#include "quadrature.hpp"
#include "series.hpp"

namespace bergman {

// Radial tanh-sinh nodes × equispaced angles; quadrature for disk integrals
// with the normalized area measure:  ∫_𝔻 G dA ≈ 2 Σ_j w_j r_j · mean_m G(r_j e^{iθ_m}).
struct PolarGrid {
  RadialRule radial;
  int angles = 0;

  int radial_count() const { return static_cast<int>(radial.r.size()); }
  int max_degree() const { return (angles - 1) / 2; }
  double angle(int m) const { return 2.0 * M_PI * m / angles; }

  // J radial nodes, M angles; the radial rule splits at the weight's
  // breakpoints so discontinuous weights integrate cleanly.
  static PolarGrid build(int J, int M,
                         const std::vector<double>& breakpoints = {});
};

// In-place radix-2 FFT, sign = -1 forward (e^{-i...}), +1 inverse kernel
// (unnormalized). Size must be a power of two.
void fft_pow2(std::vector<Complex>& a, int sign);

size_t next_pow2(size_t n);

// Values of a series on the M grid angles at radius r (via FFT when M is a
// power of two, direct sums otherwise).
std::vector<Complex> series_on_circle(const PowerSeries& f, double r, int M);

}  // namespace bergman

#endif
