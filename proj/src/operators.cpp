#include "operators.hpp"

#include <cmath>
#include <stdexcept>

#include "kernels.hpp"

namespace bergman {

FracDerivative::FracDerivative(WeightPtr source, WeightPtr target, int degree)
    : source_(std::move(source)), target_(std::move(target)) {
  if (degree < 0) throw std::invalid_argument("degree must be >= 0");
  multipliers_.reserve(static_cast<size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) {
    const double m = source_->moment(k) / target_->moment(k);
    if (!(m > 0.0) || !std::isfinite(m))
      throw std::runtime_error("non-positive multiplier in R^{omega,nu}");
    multipliers_.push_back(m);
  }
}

PowerSeries FracDerivative::apply(const PowerSeries& f) const {
  if (f.degree() > degree())
    throw std::invalid_argument("series degree exceeds multiplier table");
  return f.multiplied(multipliers_);
}

Complex apply_integral_form(const WeightPtr& source, const WeightPtr& target,
                            const PowerSeries& f, Complex z) {
  const int N = f.degree();
  const KernelSlice slice = kernel_slice(target, z, N);
  return inner_product_radial(f, slice.series, source->moments_upto(N));
}

std::array<double, 3> identity_residuals(const WeightPtr& w, const WeightPtr& v,
                                         const WeightPtr& eta,
                                         const WeightPtr& sigma, int degree) {
  std::array<double, 3> res{0.0, 0.0, 0.0};
  for (int k = 0; k <= degree; ++k) {
    const double wk = w->moment(k), vk = v->moment(k);
    const double ek = eta->moment(k), sk = sigma->moment(k);
    const double m_wv = wk / vk, m_es = ek / sk;
    const double m_ew = ek / wk, m_ev = ek / vk, m_vw = vk / wk;
    // commutation: both orders give the same diagonal symbol
    res[0] = std::max(res[0],
                      std::abs(m_wv * m_es - m_es * m_wv) / std::abs(m_wv * m_es));
    // composition: m(ω,ν)m(η,ω) = m(η,ν)
    res[1] = std::max(res[1], std::abs(m_wv * m_ew - m_ev) / std::abs(m_ev));
    // inversion: m(ω,ν)m(ν,ω) = 1
    res[2] = std::max(res[2], std::abs(m_wv * m_vw - 1.0));
  }
  return res;
}

}  // namespace bergman
