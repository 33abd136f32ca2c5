#include "kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace bergman {

KernelSlice kernel_slice(const WeightPtr& w, Complex z, int N) {
  if (std::abs(z) >= 1.0)
    throw std::domain_error("kernel anchor must satisfy |z| < 1");
  std::vector<Complex> c(static_cast<size_t>(N) + 1);
  const Complex zb = std::conj(z);
  Complex zbk{1.0};
  for (int k = 0; k <= N; ++k) {
    c[static_cast<size_t>(k)] = zbk / w->moment(k);
    zbk *= zb;
  }
  return KernelSlice{z, w->spec(), PowerSeries(std::move(c))};
}

PowerSeries kernel_dbar_slice(const WeightPtr& w, Complex z, int n, int N) {
  if (n < 1) throw std::invalid_argument("dbar order must be >= 1");
  if (std::abs(z) >= 1.0)
    throw std::domain_error("kernel anchor must satisfy |z| < 1");
  std::vector<Complex> c(static_cast<size_t>(N) + 1, Complex{0.0});
  const Complex zb = std::conj(z);
  Complex zbkn{1.0};  // conj(z)^{k-n}
  for (int k = n; k <= N; ++k) {
    double fall = 1.0;
    for (int j = 0; j < n; ++j) fall *= static_cast<double>(k - j);
    c[static_cast<size_t>(k)] = fall * zbkn / w->moment(k);
    zbkn *= zb;
  }
  return PowerSeries(std::move(c));
}

double kernel_a1_norm(const PowerSeries& slice, const WeightPtr& nu,
                      const PolarGrid& grid) {
  if (grid.angles <= slice.degree())
    throw std::invalid_argument(
        "polar grid too coarse for the slice degree (need M > N)");
  double total = 0.0;
  const int J = grid.radial_count();
  for (int j = 0; j < J; ++j) {
    const double r = grid.radial.r[static_cast<size_t>(j)];
    const std::vector<Complex> vals = series_on_circle(slice, r, grid.angles);
    double mean = 0.0;
    for (const Complex& v : vals) mean += std::abs(v);
    mean /= static_cast<double>(grid.angles);
    const double wgt = grid.radial.w[static_cast<size_t>(j)];
    const double nuval = nu->eval(r);
    total += 2.0 * wgt * r * nuval * mean;
  }
  return total;
}

double kernel_a1_norm(const PowerSeries& slice, const WeightPtr& nu, int J,
                      int M) {
  const int Mp = static_cast<int>(next_pow2(static_cast<size_t>(M)));
  return kernel_a1_norm(slice, nu, PolarGrid::build(J, Mp, nu->breakpoints()));
}

int kernel_degree_for(double abs_z, int cap) {
  const double need = 16.0 / std::max(1e-6, 1.0 - abs_z);
  return std::max(256, std::min(cap, static_cast<int>(std::lround(need))));
}

double kernel_plusN_deviation(const WeightPtr& w, const WeightPtr& v,
                              int n_plus, Complex z, int N) {
  WeightPtr wp = w, vp = v;
  for (int i = 0; i < n_plus; ++i) {
    wp = plus_transform(wp);
    vp = plus_transform(vp);
  }
  const KernelSlice lhs_base = kernel_slice(wp, z, N);
  const KernelSlice rhs = kernel_slice(vp, z, N);
  double dev = 0.0;
  for (int k = 0; k <= N; ++k) {
    const double mk = w->moment(k) / v->moment(k);
    const Complex lhs = lhs_base.series.coeff(k) * mk;
    const double scale = std::max(std::abs(rhs.series.coeff(k)), 1e-300);
    dev = std::max(dev, std::abs(lhs - rhs.series.coeff(k)) / scale);
  }
  return dev;
}

}  // namespace bergman
