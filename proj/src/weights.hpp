#ifndef BERGMAN_WEIGHTS_HPP
#define BERGMAN_WEIGHTS_HPP

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bergman {

struct QuadResult;

class RadialWeight;
using WeightPtr = std::shared_ptr<const RadialWeight>;

// Moments ω_n = 2∫₀¹ r^{2n+1} ω(r) dr for n = 0..N with error estimates.
struct MomentTable {
  std::string weight_spec;
  std::vector<double> values;
  std::vector<double> errors;
  std::vector<std::string> methods;  // "closed_form" or "quadrature" per entry
  int max_index() const { return static_cast<int>(values.size()) - 1; }
};

// A radial weight ω(r) on [0,1). Immutable; evaluation caches are
// write-once-per-key and safe under concurrent readers.
class RadialWeight {
 public:
  virtual ~RadialWeight() = default;

  // ω(r). Throws std::domain_error for r outside [0,1).
  double eval(double r) const;

  // log ω(r); stays finite where ω itself underflows (e.g. exponential
  // weights near the boundary).
  double log_eval(double r) const;

  // ω̂(r) = ∫_r^1 ω(s) ds. Closed form where one is known, otherwise
  // adaptive quadrature (memoized).
  double tail(double r) const;

  // ω_n, memoized. A closed-form oracle is used when present; oracles are
  // validated against quadrature at two tolerances on first use.
  double moment(int n, double* abs_err = nullptr) const;
  MomentTable moments_upto(int N) const;

  // ω(𝔻) = ω_0 under the normalized area measure.
  double total_mass() const { return moment(0); }

  virtual bool strictly_positive() const { return true; }
  // Radii where ω is non-smooth; quadratures split here.
  virtual std::vector<double> breakpoints() const { return {}; }
  // Round-trippable mini-language spec string.
  virtual std::string spec() const = 0;

  bool has_moment_oracle() const;

  // ∫_lo^1 g(s, 1-s)·ω(s) ds. The default integrates g·ω directly with
  // splits at breakpoints(); weights whose mass hugs the boundary too
  // tightly for tanh-sinh (e.g. logarithmic) substitute it away instead.
  using TailIntegrand = std::function<double(double, double)>;
  virtual QuadResult weighted_tail_integral(const TailIntegrand& g, double lo,
                                            double rel_tol) const;

 protected:
  // eval with the distance 1-r passed through (exact near the boundary).
  virtual double eval_impl(double r, double one_minus_r) const = 0;
  virtual double log_eval_impl(double r, double one_minus_r) const {
    return std::log(eval_impl(r, one_minus_r));
  }
  virtual std::optional<double> tail_closed_form(double r) const { return {}; }
  virtual std::optional<double> moment_oracle(int n) const { return {}; }

  friend class PlusWeight;
  friend class StarWeight;
  friend class TildeWeight;
  friend struct EvalAccess;

 private:
  double moment_by_quadrature(int n, double* abs_err) const;
  void validate_oracle() const;

  mutable std::shared_mutex mtx_;
  mutable std::map<int, std::pair<double, double>> moment_cache_;
  mutable std::map<double, double> tail_cache_;
  mutable bool oracle_checked_ = false;
};

// Constructors / transforms.  Standard(α) is the unnormalized (1-r²)^α.
WeightPtr make_standard(double alpha);
WeightPtr make_logarithmic(double beta);
WeightPtr make_exponential(double c);
WeightPtr make_zero_annulus(WeightPtr base, double a, double b);
// Samples at r_i = i/n, i = 0..n-1, linearly interpolated, 0 past the last node.
WeightPtr make_tabulated(std::vector<double> samples);

WeightPtr plus_transform(WeightPtr w);        // ω_+(r) = 2∫_r^1 ω(s) ds/s
WeightPtr star_transform(WeightPtr w);        // ω*(r) = ∫_r^1 ω(s) s log(s/r) ds
WeightPtr alpha_shift(WeightPtr w, double alpha);  // (1-r)^α ω(r)
WeightPtr tilde_weight(WeightPtr w);          // ω̂(r)/(1-r)
WeightPtr r2_multiply(WeightPtr w);           // r² ω(r)

// Internal helper: pointwise profile(r)·ω(r) with quadrature-only moments.
WeightPtr make_profile_product(WeightPtr base,
                               std::function<double(double)> profile,
                               std::string description,
                               bool positive = true);

struct WeightParseError : std::runtime_error {
  size_t position;
  WeightParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg), position(pos) {}
};

// Mini-language: std:alpha=<a> | log:beta=<b> | exp:c=<c> |
// zero:[<a>,<b>]:<base>, with transform suffixes +, *, ~, ^alpha=<a>.
WeightPtr parse_weight(const std::string& text);

}  // namespace bergman

#endif
