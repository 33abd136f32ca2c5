#include "grid.hpp"

#include <cmath>
#include <stdexcept>

namespace bergman {

PolarGrid PolarGrid::build(int J, int M, const std::vector<double>& breakpoints) {
  if (M < 4) throw std::invalid_argument("PolarGrid needs at least 4 angles");
  PolarGrid g;
  g.radial = radial_rule(J, breakpoints);
  g.angles = M;
  return g;
}

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_pow2(std::vector<Complex>& a, int sign) {
  const size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft size must be a power of two");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    const Complex wlen{std::cos(ang), std::sin(ang)};
    for (size_t i = 0; i < n; i += len) {
      Complex w{1.0};
      for (size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<Complex> series_on_circle(const PowerSeries& f, double r, int M) {
  const int N = f.degree();
  const size_t Ms = static_cast<size_t>(M);
  if ((Ms & (Ms - 1)) == 0 && Ms > static_cast<size_t>(N)) {
    std::vector<Complex> a(Ms, Complex{0.0});
    double rk = 1.0;
    for (int k = 0; k <= N; ++k) {
      a[static_cast<size_t>(k)] = f.coeff(k) * rk;
      rk *= r;
    }
    fft_pow2(a, +1);  // v_m = Σ_k c_k r^k e^{ik θ_m}
    return a;
  }
  std::vector<Complex> out(Ms);
  for (size_t m = 0; m < Ms; ++m) {
    const double th = 2.0 * M_PI * static_cast<double>(m) / M;
    out[m] = f.eval(Complex{r * std::cos(th), r * std::sin(th)});
  }
  return out;
}

}  // namespace bergman
