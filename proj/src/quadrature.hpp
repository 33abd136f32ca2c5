#ifndef BERGMAN_QUADRATURE_HPP
#define BERGMAN_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace bergman {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // |last refinement step|, absolute
  bool converged = false;
};

// Integrand on the canonical interval (0,1). The second argument is the
// distance to the right endpoint, computed without cancellation so that
// weights singular at r = 1 can be evaluated accurately.
using Integrand = std::function<double(double x, double dist_to_right)>;

// Adaptive tanh-sinh quadrature of f over (0,1). Nodes never touch the
// endpoints, so integrable endpoint singularities are handled.
QuadResult integrate01(const Integrand& f, double rel_tol = 1e-10,
                       int max_level = 12);

// Same rule mapped to (a,b); dist_to_right = b - x.
QuadResult integrate(const Integrand& f, double a, double b,
                     double rel_tol = 1e-10, int max_level = 12);

// Splits (a,b) at the interior breakpoints and sums the pieces. The
// integrand still receives its distance to the overall right endpoint b.
QuadResult integrate_split(const Integrand& f, double a, double b,
                           const std::vector<double>& breakpoints,
                           double rel_tol = 1e-10);

// Fixed tanh-sinh rule with roughly n points on (0,1); one_minus_r is exact
// near 1. Used as the radial part of disk grids.
struct RadialRule {
  std::vector<double> r;
  std::vector<double> one_minus_r;
  std::vector<double> w;  // weights for  ∫_0^1 F(r) dr ≈ Σ w_i F(r_i)
};

RadialRule radial_rule(int n, const std::vector<double>& breakpoints = {});

}  // namespace bergman

#endif
