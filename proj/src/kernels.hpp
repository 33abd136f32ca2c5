#ifndef BERGMAN_KERNELS_HPP
#define BERGMAN_KERNELS_HPP

#include "grid.hpp"
#include "series.hpp"
#include "weights.hpp"

namespace bergman {

// Bergman kernel slice B_z^ω as a power series in ξ: coefficient k is
// conj(z)^k / ω_k.
struct KernelSlice {
  Complex anchor;
  std::string weight_spec;
  PowerSeries series;
};

KernelSlice kernel_slice(const WeightPtr& w, Complex z, int N);

// ∂_z̄^n B_z^ω as a series in ξ: coefficient k(k-1)…(k-n+1) conj(z)^{k-n}/ω_k
// at ξ^k. Works at z = 0 too (only the k = n term survives there).
PowerSeries kernel_dbar_slice(const WeightPtr& w, Complex z, int n, int N);

// ∫_𝔻 |S(ξ)| ν(ξ) dA(ξ) by polar quadrature; the modulus defeats
// orthogonality so a genuine 2-D rule is required. Throws when the grid
// cannot resolve the slice degree (needs M > degree).
double kernel_a1_norm(const PowerSeries& slice, const WeightPtr& nu,
                      const PolarGrid& grid);
double kernel_a1_norm(const PowerSeries& slice, const WeightPtr& nu, int J,
                      int M);

// Truncation degree schedule for near-boundary anchors.
int kernel_degree_for(double abs_z, int cap = 16384);

// Max relative coefficient deviation between R^{ω,ν} B_z^{ω_{+N}} and
// B_z^{ν_{+N}} (zero by the multiplier identity, up to moment error).
double kernel_plusN_deviation(const WeightPtr& w, const WeightPtr& v,
                              int n_plus, Complex z, int N);

}  // namespace bergman

#endif
