#include "weights.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>

#include "quadrature.hpp"

namespace bergman {

namespace {

constexpr double kMomentRelTol = 1e-10;

double beta_fn(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

// r^p for r = 1 - omr without losing precision when omr is tiny.
double pow1m(double omr, double p) {
  if (p == 0.0) return 1.0;
  return std::exp(p * std::log1p(-omr));
}

}  // namespace

struct EvalAccess {
  static double eval(const RadialWeight& w, double r, double omr) {
    return w.eval_impl(r, omr);
  }
};

double RadialWeight::eval(double r) const {
  if (!(r >= 0.0 && r < 1.0))
    throw std::domain_error("weight evaluation requires r in [0,1)");
  return eval_impl(r, 1.0 - r);
}

double RadialWeight::log_eval(double r) const {
  if (!(r >= 0.0 && r < 1.0))
    throw std::domain_error("weight evaluation requires r in [0,1)");
  return log_eval_impl(r, 1.0 - r);
}

double RadialWeight::tail(double r) const {
  if (!(r >= 0.0 && r < 1.0))
    throw std::domain_error("tail requires r in [0,1)");
  if (auto cf = tail_closed_form(r)) return *cf;
  {
    std::shared_lock lk(mtx_);
    auto it = tail_cache_.find(r);
    if (it != tail_cache_.end()) return it->second;
  }
  QuadResult q = weighted_tail_integral(
      [](double, double) { return 1.0; }, r, 1e-12);
  if (!q.converged && q.error > 1e-8 * std::max(std::abs(q.value), 1e-300))
    throw std::runtime_error("tail integral did not converge for " + spec());
  std::unique_lock lk(mtx_);
  tail_cache_.emplace(r, q.value);
  return q.value;
}

bool RadialWeight::has_moment_oracle() const {
  return moment_oracle(0).has_value();
}

QuadResult RadialWeight::weighted_tail_integral(const TailIntegrand& g,
                                                double lo,
                                                double rel_tol) const {
  auto f = [this, &g](double s, double d) { return g(s, d) * eval_impl(s, d); };
  return integrate_split(f, lo, 1.0, breakpoints(), rel_tol);
}

double RadialWeight::moment_by_quadrature(int n, double* abs_err) const {
  auto g = [n](double s, double) { return 2.0 * std::pow(s, 2 * n + 1); };
  QuadResult q = weighted_tail_integral(g, 0.0, kMomentRelTol);
  if (!(q.value > 0.0) || !std::isfinite(q.value)) {
    throw std::runtime_error("moment quadrature failed for " + spec() +
                             " at n=" + std::to_string(n));
  }
  if (!q.converged && q.error > 1e-7 * q.value) {
    throw std::runtime_error(
        "moment quadrature did not reach tolerance for " + spec() + " at n=" +
        std::to_string(n) + " (best " + std::to_string(q.value) + ", err " +
        std::to_string(q.error) + ")");
  }
  if (abs_err) *abs_err = q.error;
  return q.value;
}

void RadialWeight::validate_oracle() const {
  {
    std::shared_lock lk(mtx_);
    if (oracle_checked_) return;
  }
  // Anti-hallucination gate: a closed-form rule must agree with quadrature
  // at two tolerances before it is trusted.
  for (int n : {0, 3}) {
    const double oracle = *moment_oracle(n);
    auto g = [n](double s, double) { return 2.0 * std::pow(s, 2 * n + 1); };
    const double q8 = weighted_tail_integral(g, 0.0, 1e-8).value;
    const double q10 = weighted_tail_integral(g, 0.0, 1e-10).value;
    if (std::abs(oracle - q10) > 1e-6 * std::abs(q10) ||
        std::abs(q8 - q10) > 1e-6 * std::abs(q10)) {
      throw std::logic_error("moment oracle disagrees with quadrature for " +
                             spec());
    }
  }
  std::unique_lock lk(mtx_);
  oracle_checked_ = true;
}

double RadialWeight::moment(int n, double* abs_err) const {
  if (n < 0) throw std::domain_error("moment index must be non-negative");
  {
    std::shared_lock lk(mtx_);
    auto it = moment_cache_.find(n);
    if (it != moment_cache_.end()) {
      if (abs_err) *abs_err = it->second.second;
      return it->second.first;
    }
  }
  double value, err = 0.0;
  if (auto oracle = moment_oracle(n)) {
    validate_oracle();
    value = *oracle;
  } else {
    value = moment_by_quadrature(n, &err);
  }
  std::unique_lock lk(mtx_);
  moment_cache_.emplace(n, std::make_pair(value, err));
  if (abs_err) *abs_err = err;
  return value;
}

MomentTable RadialWeight::moments_upto(int N) const {
  if (N < 0) throw std::domain_error("moments_upto requires N >= 0");
  MomentTable t;
  t.weight_spec = spec();
  const bool oracle = has_moment_oracle();
  for (int n = 0; n <= N; ++n) {
    double err = 0.0;
    t.values.push_back(moment(n, &err));
    t.errors.push_back(err);
    t.methods.push_back(oracle ? "closed_form" : "quadrature");
  }
  return t;
}

// ---------------------------------------------------------------------------

namespace {

class StandardWeight final : public RadialWeight {
 public:
  explicit StandardWeight(double alpha) : alpha_(alpha) {
    if (!(alpha > -1.0))
      throw std::domain_error("Standard weight requires alpha > -1");
  }
  double alpha() const { return alpha_; }
  std::string spec() const override {
    std::ostringstream os;
    os << "std:alpha=" << alpha_;
    return os.str();
  }

 protected:
  double eval_impl(double r, double omr) const override {
    if (alpha_ == 0.0) return 1.0;
    // 1 - r² = omr (1 + r)
    return std::pow(omr * (1.0 + r), alpha_);
  }
  std::optional<double> tail_closed_form(double r) const override {
    if (alpha_ == 0.0) return 1.0 - r;
    if (alpha_ == 1.0) return (1.0 - r) - (1.0 - r * r * r) / 3.0;
    return std::nullopt;
  }
  std::optional<double> moment_oracle(int n) const override {
    return beta_fn(n + 1.0, alpha_ + 1.0);
  }

 private:
  double alpha_;
};

class LogarithmicWeight final : public RadialWeight {
 public:
  explicit LogarithmicWeight(double beta) : beta_(beta) {
    if (!(beta > 1.0))
      throw std::domain_error("Logarithmic weight requires beta > 1");
  }
  std::string spec() const override {
    std::ostringstream os;
    os << "log:beta=" << beta_;
    return os.str();
  }

  // Near r = 1 the weight behaves like 1/((1-r)|log(1-r)|^β); tanh-sinh on
  // [lo,1) then converges only like the truncation level, so substitute the
  // singularity away: with v = 1 - log(1-s) and w = 1/v,
  //   ∫_lo^1 g(s) ω(s) ds = ∫_0^{1/v_lo} g(s(w)) w^{β-2} dw,
  // where s(w) = 1 - e^{1 - 1/w} and v_lo = 1 - log(1-lo).
  QuadResult weighted_tail_integral(const TailIntegrand& g, double lo,
                                    double rel_tol) const override {
    const double vlo = 1.0 - std::log1p(-lo);
    auto f = [this, &g](double w, double) {
      const double oms = std::exp(1.0 - 1.0 / w);
      return g(1.0 - oms, oms) * std::pow(w, beta_ - 2.0);
    };
    return integrate(f, 0.0, 1.0 / vlo, rel_tol);
  }

 protected:
  double eval_impl(double, double omr) const override {
    const double L = 1.0 - std::log(omr);
    return 1.0 / (omr * std::pow(L, beta_));
  }
  std::optional<double> tail_closed_form(double r) const override {
    const double L = 1.0 - std::log1p(-r);
    return std::pow(L, 1.0 - beta_) / (beta_ - 1.0);
  }

 private:
  double beta_;
};

class ExponentialWeight final : public RadialWeight {
 public:
  explicit ExponentialWeight(double c) : c_(c) {
    if (!(c > 0.0)) throw std::domain_error("Exponential weight requires c > 0");
  }
  std::string spec() const override {
    std::ostringstream os;
    os << "exp:c=" << c_;
    return os.str();
  }

 protected:
  double eval_impl(double, double omr) const override {
    return std::exp(-c_ / omr);
  }
  double log_eval_impl(double, double omr) const override { return -c_ / omr; }

 private:
  double c_;
};

class ZeroAnnulusWeight final : public RadialWeight {
 public:
  ZeroAnnulusWeight(WeightPtr base, double a, double b)
      : base_(std::move(base)), a_(a), b_(b) {
    if (!(0.0 < a && a < b && b < 1.0))
      throw std::domain_error("ZeroAnnulus requires 0 < a < b < 1");
  }
  bool strictly_positive() const override { return false; }
  std::vector<double> breakpoints() const override {
    auto bp = base_->breakpoints();
    bp.push_back(a_);
    bp.push_back(b_);
    return bp;
  }
  std::string spec() const override {
    std::ostringstream os;
    os << "zero:[" << a_ << "," << b_ << "]:" << base_->spec();
    return os.str();
  }

  // Delegate the boundary part to the base (it may need a substitution
  // there); the part below the annulus is away from r = 1 and is plain.
  QuadResult weighted_tail_integral(const TailIntegrand& g, double lo,
                                    double rel_tol) const override {
    QuadResult total =
        base_->weighted_tail_integral(g, std::max(lo, b_), rel_tol);
    if (lo < a_) {
      auto f = [this, &g](double s, double) {
        const double oms = 1.0 - s;
        return g(s, oms) * EvalAccess::eval(*base_, s, oms);
      };
      QuadResult left =
          integrate_split(f, lo, a_, base_->breakpoints(), rel_tol);
      total.value += left.value;
      total.error += left.error;
      total.converged = total.converged && left.converged;
    }
    return total;
  }

 protected:
  double eval_impl(double r, double omr) const override {
    if (r >= a_ && r <= b_) return 0.0;
    return EvalAccess::eval(*base_, r, omr);
  }
  std::optional<double> tail_closed_form(double r) const override {
    // The integrand is the base's beyond the annulus.
    if (r > b_) return base_->tail(r);
    if (r >= a_) return base_->tail(b_);
    return base_->tail(r) - (base_->tail(a_) - base_->tail(b_));
  }

 private:
  WeightPtr base_;
  double a_, b_;
};

class TabulatedWeight final : public RadialWeight {
 public:
  explicit TabulatedWeight(std::vector<double> samples)
      : samples_(std::move(samples)) {
    if (samples_.size() < 2)
      throw std::domain_error("Tabulated weight needs at least 2 samples");
    for (double v : samples_)
      if (!(v >= 0.0)) throw std::domain_error("Tabulated samples must be >= 0");
  }
  std::string spec() const override { return "tabulated"; }
  bool strictly_positive() const override { return false; }

 protected:
  double eval_impl(double r, double) const override {
    const double n = static_cast<double>(samples_.size());
    const double x = r * n;  // node i sits at i/n; value 0 at r = 1
    const size_t i = static_cast<size_t>(x);
    const double frac = x - static_cast<double>(i);
    const double lo = samples_[i];
    const double hi = i + 1 < samples_.size() ? samples_[i + 1] : 0.0;
    return lo + frac * (hi - lo);
  }

 private:
  std::vector<double> samples_;
};

// ω_{+d}: iterating the plus transform collapses (by Fubini) to
//   ω_{+d}(r) = 2^d/(d-1)! ∫_r^1 ω(t) log^{d-1}(t/r) dt/t.
class PlusWeight final : public RadialWeight {
 public:
  PlusWeight(WeightPtr root, int depth) : root_(std::move(root)), depth_(depth) {}
  const WeightPtr& root() const { return root_; }
  int depth() const { return depth_; }
  std::vector<double> breakpoints() const override {
    return root_->breakpoints();
  }
  std::string spec() const override {
    return root_->spec() + std::string(static_cast<size_t>(depth_), '+');
  }

 protected:
  double eval_impl(double r, double) const override {
    if (r == 0.0)
      throw std::domain_error("omega_+ may diverge at r = 0; evaluate at r > 0");
    {
      std::shared_lock lk(cache_mtx_);
      auto it = cache_.find(r);
      if (it != cache_.end()) return it->second;
    }
    const double scale =
        std::pow(2.0, depth_) / std::tgamma(static_cast<double>(depth_));
    auto g = [this, r](double t, double) {
      if (depth_ == 1) return 1.0 / t;
      return std::pow(std::log(t / r), depth_ - 1) / t;
    };
    QuadResult q = root_->weighted_tail_integral(g, r, 1e-12);
    const double v = scale * q.value;
    std::unique_lock lk(cache_mtx_);
    cache_.emplace(r, v);
    return v;
  }

 private:
  WeightPtr root_;
  int depth_;
  mutable std::shared_mutex cache_mtx_;
  mutable std::map<double, double> cache_;
};

class StarWeight final : public RadialWeight {
 public:
  explicit StarWeight(WeightPtr base) : base_(std::move(base)) {}
  std::vector<double> breakpoints() const override {
    return base_->breakpoints();
  }
  std::string spec() const override { return base_->spec() + "*"; }

 protected:
  double eval_impl(double r, double) const override {
    if (r == 0.0)
      throw std::domain_error(
          "omega* has a logarithmic singularity at the origin");
    {
      std::shared_lock lk(cache_mtx_);
      auto it = cache_.find(r);
      if (it != cache_.end()) return it->second;
    }
    auto g = [r](double s, double) { return s * std::log(s / r); };
    QuadResult q = base_->weighted_tail_integral(g, r, 1e-12);
    std::unique_lock lk(cache_mtx_);
    cache_.emplace(r, q.value);
    return q.value;
  }

 private:
  WeightPtr base_;
  mutable std::shared_mutex cache_mtx_;
  mutable std::map<double, double> cache_;
};

class AlphaShiftWeight final : public RadialWeight {
 public:
  AlphaShiftWeight(WeightPtr base, double alpha)
      : base_(std::move(base)), alpha_(alpha) {
    if (!(alpha >= 0.0)) throw std::domain_error("alpha_shift requires alpha >= 0");
  }
  bool strictly_positive() const override { return base_->strictly_positive(); }
  std::vector<double> breakpoints() const override {
    return base_->breakpoints();
  }
  std::string spec() const override {
    std::ostringstream os;
    os << base_->spec() << "^alpha=" << alpha_;
    return os.str();
  }

  QuadResult weighted_tail_integral(const TailIntegrand& g, double lo,
                                    double rel_tol) const override {
    auto h = [this, &g](double s, double oms) {
      return std::pow(oms, alpha_) * g(s, oms);
    };
    return base_->weighted_tail_integral(h, lo, rel_tol);
  }

 protected:
  double eval_impl(double r, double omr) const override {
    return std::pow(omr, alpha_) * EvalAccess::eval(*base_, r, omr);
  }
  std::optional<double> tail_closed_form(double r) const override {
    if (base_is_flat()) {
      const double omr = 1.0 - r;
      return std::pow(omr, alpha_ + 1.0) / (alpha_ + 1.0);
    }
    return std::nullopt;
  }
  std::optional<double> moment_oracle(int n) const override {
    // 2∫ r^{2n+1}(1-r)^α dr = 2 B(2n+2, α+1) when the base is constant 1.
    if (base_is_flat()) return 2.0 * beta_fn(2.0 * n + 2.0, alpha_ + 1.0);
    return std::nullopt;
  }

 private:
  bool base_is_flat() const {
    auto* s = dynamic_cast<const StandardWeight*>(base_.get());
    return s && s->alpha() == 0.0;
  }
  WeightPtr base_;
  double alpha_;
};

class TildeWeight final : public RadialWeight {
 public:
  explicit TildeWeight(WeightPtr base) : base_(std::move(base)) {}
  std::string spec() const override { return base_->spec() + "~"; }

 protected:
  double eval_impl(double r, double omr) const override {
    return base_->tail(r) / omr;
  }

 private:
  WeightPtr base_;
};

class R2Weight final : public RadialWeight {
 public:
  explicit R2Weight(WeightPtr base) : base_(std::move(base)) {}
  bool strictly_positive() const override { return base_->strictly_positive(); }
  std::vector<double> breakpoints() const override {
    return base_->breakpoints();
  }
  std::string spec() const override { return base_->spec() + "@r2"; }

  QuadResult weighted_tail_integral(const TailIntegrand& g, double lo,
                                    double rel_tol) const override {
    auto h = [&g](double s, double oms) { return s * s * g(s, oms); };
    return base_->weighted_tail_integral(h, lo, rel_tol);
  }

 protected:
  double eval_impl(double r, double omr) const override {
    return r * r * EvalAccess::eval(*base_, r, omr);
  }
  std::optional<double> moment_oracle(int n) const override {
    // r² r^{2n+1} = r^{2(n+1)+1}, definitionally the base's next moment.
    return base_->moment(n + 1);
  }

 private:
  WeightPtr base_;
};

class ProfileProductWeight final : public RadialWeight {
 public:
  ProfileProductWeight(WeightPtr base, std::function<double(double)> profile,
                       std::string desc, bool positive)
      : base_(std::move(base)),
        profile_(std::move(profile)),
        desc_(std::move(desc)),
        positive_(positive) {}
  bool strictly_positive() const override {
    return positive_ && base_->strictly_positive();
  }
  std::vector<double> breakpoints() const override {
    return base_->breakpoints();
  }
  std::string spec() const override { return desc_; }

 protected:
  double eval_impl(double r, double omr) const override {
    return profile_(r) * EvalAccess::eval(*base_, r, omr);
  }

 private:
  WeightPtr base_;
  std::function<double(double)> profile_;
  std::string desc_;
  bool positive_;
};

}  // namespace

WeightPtr make_standard(double alpha) {
  return std::make_shared<StandardWeight>(alpha);
}
WeightPtr make_logarithmic(double beta) {
  return std::make_shared<LogarithmicWeight>(beta);
}
WeightPtr make_exponential(double c) {
  return std::make_shared<ExponentialWeight>(c);
}
WeightPtr make_zero_annulus(WeightPtr base, double a, double b) {
  return std::make_shared<ZeroAnnulusWeight>(std::move(base), a, b);
}
WeightPtr make_tabulated(std::vector<double> samples) {
  return std::make_shared<TabulatedWeight>(std::move(samples));
}

WeightPtr plus_transform(WeightPtr w) {
  if (auto* p = dynamic_cast<const PlusWeight*>(w.get()))
    return std::make_shared<PlusWeight>(p->root(), p->depth() + 1);
  return std::make_shared<PlusWeight>(std::move(w), 1);
}
WeightPtr star_transform(WeightPtr w) {
  return std::make_shared<StarWeight>(std::move(w));
}
WeightPtr alpha_shift(WeightPtr w, double alpha) {
  return std::make_shared<AlphaShiftWeight>(std::move(w), alpha);
}
WeightPtr tilde_weight(WeightPtr w) {
  return std::make_shared<TildeWeight>(std::move(w));
}
WeightPtr r2_multiply(WeightPtr w) {
  return std::make_shared<R2Weight>(std::move(w));
}
WeightPtr make_profile_product(WeightPtr base,
                               std::function<double(double)> profile,
                               std::string description, bool positive) {
  return std::make_shared<ProfileProductWeight>(
      std::move(base), std::move(profile), std::move(description), positive);
}

// ---------------------------------------------------------------------------
// Mini-language parser.

namespace {

double parse_number(const std::string& s, size_t& pos) {
  const char* begin = s.c_str() + pos;
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) throw WeightParseError("expected a number", pos);
  pos += static_cast<size_t>(end - begin);
  return v;
}

void expect(const std::string& s, size_t& pos, const std::string& token) {
  if (s.compare(pos, token.size(), token) != 0)
    throw WeightParseError("expected '" + token + "'", pos);
  pos += token.size();
}

WeightPtr parse_impl(const std::string& s, size_t& pos) {
  WeightPtr base;
  if (s.compare(pos, 4, "std:") == 0) {
    pos += 4;
    expect(s, pos, "alpha=");
    base = make_standard(parse_number(s, pos));
  } else if (s.compare(pos, 4, "log:") == 0) {
    pos += 4;
    expect(s, pos, "beta=");
    base = make_logarithmic(parse_number(s, pos));
  } else if (s.compare(pos, 4, "exp:") == 0) {
    pos += 4;
    expect(s, pos, "c=");
    base = make_exponential(parse_number(s, pos));
  } else if (s.compare(pos, 6, "zero:[") == 0) {
    pos += 6;
    const double a = parse_number(s, pos);
    expect(s, pos, ",");
    const double b = parse_number(s, pos);
    expect(s, pos, "]:");
    base = make_zero_annulus(parse_impl(s, pos), a, b);
  } else {
    throw WeightParseError("unknown weight kind", pos);
  }
  while (pos < s.size()) {
    const char c = s[pos];
    if (c == '+') {
      base = plus_transform(base);
      ++pos;
    } else if (c == '*') {
      base = star_transform(base);
      ++pos;
    } else if (c == '~') {
      base = tilde_weight(base);
      ++pos;
    } else if (c == '^') {
      ++pos;
      expect(s, pos, "alpha=");
      base = alpha_shift(base, parse_number(s, pos));
    } else {
      break;
    }
  }
  return base;
}

}  // namespace

WeightPtr parse_weight(const std::string& text) {
  size_t pos = 0;
  WeightPtr w = parse_impl(text, pos);
  if (pos != text.size())
    throw WeightParseError("trailing characters in weight spec", pos);
  return w;
}

}  // namespace bergman
