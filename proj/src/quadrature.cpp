#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bergman {

namespace {

constexpr double kTMax = 4.0;  // tanh-sinh weight underflows past |t| ~ 4

struct Node {
  double x;        // abscissa in (0,1)
  double dist;     // 1 - x, no cancellation
  double weight;   // dx/dt
};

// x(t) = 1/(1+exp(-pi sinh t)),  1-x(t) = 1/(1+exp(pi sinh t)),
// x'(t) = pi cosh t / (2 + 2 cosh(pi sinh t)).
bool make_node(double t, Node& out) {
  const double s = M_PI * std::sinh(t);
  if (s > 745.0 || s < -745.0) return false;  // exp overflow; weight is 0 anyway
  const double es = std::exp(-s);
  // x can round to exactly 1.0 once es < eps; keep it strictly inside so
  // integrands (weight evaluations in particular) stay in their domain.
  out.x = std::min(1.0 / (1.0 + es), 1.0 - std::numeric_limits<double>::epsilon() / 2.0);
  out.dist = es / (1.0 + es);
  out.weight = M_PI * std::cosh(t) / (2.0 + 2.0 * std::cosh(s));
  return out.weight > 0.0 && std::isfinite(out.weight);
}

double safe_eval(const Integrand& f, const Node& n) {
  const double v = f(n.x, n.dist);
  // Integrable endpoint singularities can overflow at the extreme nodes,
  // where the rule weight is already negligible; drop those samples.
  return std::isfinite(v) ? v : 0.0;
}

}  // namespace

QuadResult integrate01(const Integrand& f, double rel_tol, int max_level) {
  QuadResult res;
  double h = 1.0;
  double sum = 0.0;
  Node nd;
  // level 0: t = -4, -3, ..., 4
  for (int k = -4; k <= 4; ++k) {
    if (make_node(k * h, nd)) sum += nd.weight * safe_eval(f, nd);
  }
  double prev = sum * h;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    const int kmax = static_cast<int>(std::floor(kTMax / h));
    for (int k = 1; k <= kmax; k += 2) {  // odd multiples of the new h
      if (make_node(k * h, nd)) sum += nd.weight * safe_eval(f, nd);
      if (make_node(-k * h, nd)) sum += nd.weight * safe_eval(f, nd);
    }
    const double cur = sum * h;
    const double diff = std::abs(cur - prev);
    res.value = cur;
    res.error = diff;
    const double scale = std::max(std::abs(cur), 1e-300);
    if (level >= 3 && diff <= rel_tol * scale) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  res.converged = false;
  return res;
}

QuadResult integrate(const Integrand& f, double a, double b, double rel_tol,
                     int max_level) {
  if (!(b > a)) return {0.0, 0.0, true};
  const double len = b - a;
  // a + len·u can round up to b; keep samples strictly interior.
  const double hi = b - std::abs(b) * std::numeric_limits<double>::epsilon() / 2.0;
  auto g = [&](double u, double du) {
    return f(std::min(a + len * u, hi), len * du);
  };
  QuadResult r = integrate01(g, rel_tol, max_level);
  r.value *= len;
  r.error *= len;
  return r;
}

QuadResult integrate_split(const Integrand& f, double a, double b,
                           const std::vector<double>& breakpoints,
                           double rel_tol) {
  std::vector<double> pts;
  for (double p : breakpoints)
    if (p > a && p < b) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.push_back(b);
  QuadResult total{0.0, 0.0, true};
  double lo = a;
  for (double hi : pts) {
    // `integrate` reports distances to the piece's right endpoint; callers
    // expect the distance to the overall upper limit b.
    const double shift = b - hi;
    auto fp = [&f, shift](double x, double d) { return f(x, d + shift); };
    QuadResult piece = shift == 0.0 ? integrate(f, lo, hi, rel_tol)
                                    : integrate(fp, lo, hi, rel_tol);
    total.value += piece.value;
    total.error += piece.error;
    total.converged = total.converged && piece.converged;
    lo = hi;
  }
  return total;
}

RadialRule radial_rule(int n, const std::vector<double>& breakpoints) {
  if (n < 8) throw std::invalid_argument("radial_rule: need at least 8 nodes");
  std::vector<double> seg{0.0};
  for (double p : breakpoints)
    if (p > 0.0 && p < 1.0) seg.push_back(p);
  std::sort(seg.begin(), seg.end());
  seg.erase(std::unique(seg.begin(), seg.end()), seg.end());
  seg.push_back(1.0);

  RadialRule rule;
  const int nseg = static_cast<int>(seg.size()) - 1;
  for (int s = 0; s < nseg; ++s) {
    const double a = seg[s], b = seg[s + 1];
    int ns = std::max(16, static_cast<int>(std::lround(n * (b - a))));
    const double h = 2.0 * kTMax / (ns - 1);
    Node nd;
    for (int i = 0; i < ns; ++i) {
      const double t = -kTMax + i * h;
      if (!make_node(t, nd)) continue;
      const double r = std::min(
          a + (b - a) * nd.x, 1.0 - std::numeric_limits<double>::epsilon() / 2.0);
      rule.r.push_back(r);
      // exact distance to 1 when the segment ends there
      rule.one_minus_r.push_back(b == 1.0 ? (b - a) * nd.dist : 1.0 - r);
      rule.w.push_back((b - a) * nd.weight * h);
    }
  }
  return rule;
}

}  // namespace bergman
