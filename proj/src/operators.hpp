#ifndef BERGMAN_OPERATORS_HPP
#define BERGMAN_OPERATORS_HPP

#include <array>

#include "series.hpp"
#include "weights.hpp"

namespace bergman {

// The coefficient multiplier R^{ω,ν}: f_k ↦ (ω_k/ν_k) f_k, the unique
// operator sending B_z^ω to B_z^ν.
class FracDerivative {
 public:
  FracDerivative(WeightPtr source, WeightPtr target, int degree);

  const WeightPtr& source() const { return source_; }
  const WeightPtr& target() const { return target_; }
  int degree() const { return static_cast<int>(multipliers_.size()) - 1; }
  double multiplier(int k) const { return multipliers_.at(static_cast<size_t>(k)); }
  const std::vector<double>& multipliers() const { return multipliers_; }

  PowerSeries apply(const PowerSeries& f) const;

 private:
  WeightPtr source_, target_;
  std::vector<double> multipliers_;
};

// R^{ω,ν}f(z) = ⟨f, B_z^ν⟩_ω, the integral route; must agree with the
// multiplier route on truncated series.
Complex apply_integral_form(const WeightPtr& source, const WeightPtr& target,
                            const PowerSeries& f, Complex z);

// Max relative deviations, over k <= degree, of the three multiplier-level
// identities: commutation of R^{ω,ν} with R^{η,σ}, composition
// R^{ω,ν}R^{η,ω} = R^{η,ν}, and inversion R^{ω,ν}R^{ν,ω} = I.
std::array<double, 3> identity_residuals(const WeightPtr& w, const WeightPtr& v,
                                         const WeightPtr& eta,
                                         const WeightPtr& sigma, int degree);

}  // namespace bergman

#endif
