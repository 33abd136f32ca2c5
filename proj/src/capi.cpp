#include "bergman.h"

#include <cstring>
#include <string>

#include "analysis.hpp"
#include "kernels.hpp"
#include "operators.hpp"
#include "projection.hpp"
#include "series.hpp"
#include "weights.hpp"

using namespace bergman;

struct bg_weight {
  WeightPtr w;
};
struct bg_series {
  PowerSeries s;
};
struct bg_fracd {
  FracDerivative d;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
bg_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const WeightParseError& e) {
    g_last_error = std::string(e.what()) + " at position " +
                   std::to_string(e.position);
    return BG_ERR_PARSE;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return BG_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return BG_ERR_INVALID;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BG_ERR_NUMERIC;
  }
}

bg_status require(bool ok, const char* msg) {
  if (ok) return BG_OK;
  g_last_error = msg;
  return BG_ERR_INVALID;
}

bg_status copy_string(const std::string& s, char* buf, size_t buflen) {
  if (buf == nullptr || buflen == 0)
    return require(false, "output buffer is null");
  if (s.size() + 1 > buflen) {
    g_last_error = "buffer too small; need " + std::to_string(s.size() + 1);
    return BG_ERR_INVALID;
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return BG_OK;
}

}  // namespace

extern "C" {

const char* bg_version(void) { return "1.0.0"; }
const char* bg_last_error(void) { return g_last_error.c_str(); }

/* ---- weights ---- */

bg_status bg_weight_parse(const char* spec, bg_weight** out) {
  if (auto st = require(spec && out, "null argument")) return st;
  return guarded([&] {
    *out = new bg_weight{parse_weight(spec)};
    return BG_OK;
  });
}

void bg_weight_free(bg_weight* w) { delete w; }

bg_status bg_weight_spec(const bg_weight* w, char* buf, size_t buflen) {
  if (auto st = require(w != nullptr, "null weight")) return st;
  return copy_string(w->w->spec(), buf, buflen);
}

bg_status bg_weight_eval(const bg_weight* w, double r, double* out) {
  if (auto st = require(w && out, "null argument")) return st;
  return guarded([&] {
    *out = w->w->eval(r);
    return BG_OK;
  });
}

bg_status bg_weight_tail(const bg_weight* w, double r, double* out) {
  if (auto st = require(w && out, "null argument")) return st;
  return guarded([&] {
    *out = w->w->tail(r);
    return BG_OK;
  });
}

bg_status bg_weight_moment(const bg_weight* w, int n, double* value,
                           double* abs_err) {
  if (auto st = require(w && value, "null argument")) return st;
  return guarded([&] {
    *value = w->w->moment(n, abs_err);
    return BG_OK;
  });
}

bg_status bg_weight_moments(const bg_weight* w, int N, double* values,
                            double* errors, char* method_out) {
  if (auto st = require(w && values && errors && N >= 0, "bad arguments"))
    return st;
  return guarded([&] {
    const MomentTable t = w->w->moments_upto(N);
    for (int n = 0; n <= N; ++n) {
      values[n] = t.values[static_cast<size_t>(n)];
      errors[n] = t.errors[static_cast<size_t>(n)];
    }
    if (method_out) *method_out = t.methods[0] == "closed_form" ? 'c' : 'q';
    return BG_OK;
  });
}

bg_status bg_weight_total_mass(const bg_weight* w, double* out) {
  return bg_weight_moment(w, 0, out, nullptr);
}

#define BG_TRANSFORM(name, fn)                                        \
  bg_status name(const bg_weight* w, bg_weight** out) {               \
    if (auto st = require(w && out, "null argument")) return st;      \
    return guarded([&] {                                              \
      *out = new bg_weight{fn(w->w)};                                 \
      return BG_OK;                                                   \
    });                                                               \
  }

BG_TRANSFORM(bg_weight_plus, plus_transform)
BG_TRANSFORM(bg_weight_star, star_transform)
BG_TRANSFORM(bg_weight_tilde, tilde_weight)
#undef BG_TRANSFORM

bg_status bg_weight_alpha_shift(const bg_weight* w, double alpha,
                                bg_weight** out) {
  if (auto st = require(w && out, "null argument")) return st;
  return guarded([&] {
    *out = new bg_weight{alpha_shift(w->w, alpha)};
    return BG_OK;
  });
}

/* ---- series ---- */

bg_status bg_series_parse(const char* literal, bg_series** out) {
  if (auto st = require(literal && out, "null argument")) return st;
  return guarded([&] {
    *out = new bg_series{parse_series(literal)};
    return BG_OK;
  });
}

bg_status bg_series_create(const double* re, const double* im, int count,
                           bg_series** out) {
  if (auto st = require(re && out && count > 0, "bad arguments")) return st;
  std::vector<Complex> c(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k)
    c[static_cast<size_t>(k)] = Complex{re[k], im ? im[k] : 0.0};
  *out = new bg_series{PowerSeries(std::move(c))};
  return BG_OK;
}

void bg_series_free(bg_series* s) { delete s; }

int bg_series_degree(const bg_series* s) { return s ? s->s.degree() : -1; }

bg_status bg_series_coeff(const bg_series* s, int k, double* re, double* im) {
  if (auto st = require(s && re && im, "null argument")) return st;
  const Complex c = s->s.coeff(k);
  *re = c.real();
  *im = c.imag();
  return BG_OK;
}

bg_status bg_series_eval(const bg_series* s, double zre, double zim,
                         double* re, double* im) {
  if (auto st = require(s && re && im, "null argument")) return st;
  return guarded([&] {
    const Complex v = s->s.eval(Complex{zre, zim});
    *re = v.real();
    *im = v.imag();
    return BG_OK;
  });
}

bg_status bg_series_derivative(const bg_series* s, bg_series** out) {
  if (auto st = require(s && out, "null argument")) return st;
  *out = new bg_series{s->s.derivative()};
  return BG_OK;
}

bg_status bg_series_dilate(const bg_series* s, double r, bg_series** out) {
  if (auto st = require(s && out, "null argument")) return st;
  return guarded([&] {
    *out = new bg_series{s->s.dilate(r)};
    return BG_OK;
  });
}

/* ---- fractional derivative ---- */

bg_status bg_fracd_build(const bg_weight* source, const bg_weight* target,
                         int degree, bg_fracd** out) {
  if (auto st = require(source && target && out, "null argument")) return st;
  return guarded([&] {
    *out = new bg_fracd{FracDerivative(source->w, target->w, degree)};
    return BG_OK;
  });
}

void bg_fracd_free(bg_fracd* d) { delete d; }

bg_status bg_fracd_multiplier(const bg_fracd* d, int k, double* out) {
  if (auto st = require(d && out, "null argument")) return st;
  return guarded([&] {
    *out = d->d.multiplier(k);
    return BG_OK;
  });
}

bg_status bg_fracd_apply(const bg_fracd* d, const bg_series* f,
                         bg_series** out) {
  if (auto st = require(d && f && out, "null argument")) return st;
  return guarded([&] {
    *out = new bg_series{d->d.apply(f->s)};
    return BG_OK;
  });
}

bg_status bg_fracd_apply_integral(const bg_weight* source,
                                  const bg_weight* target, const bg_series* f,
                                  double zre, double zim, double* re,
                                  double* im) {
  if (auto st = require(source && target && f && re && im, "null argument"))
    return st;
  return guarded([&] {
    const Complex v =
        apply_integral_form(source->w, target->w, f->s, Complex{zre, zim});
    *re = v.real();
    *im = v.imag();
    return BG_OK;
  });
}

bg_status bg_fracd_identity_residuals(const bg_weight* w, const bg_weight* v,
                                      const bg_weight* eta,
                                      const bg_weight* sigma, int degree,
                                      double out[3]) {
  if (auto st = require(w && v && eta && sigma && out, "null argument"))
    return st;
  return guarded([&] {
    const auto r = identity_residuals(w->w, v->w, eta->w, sigma->w, degree);
    out[0] = r[0];
    out[1] = r[1];
    out[2] = r[2];
    return BG_OK;
  });
}

/* ---- kernels ---- */

bg_status bg_kernel_slice(const bg_weight* w, double zre, double zim, int N,
                          bg_series** out) {
  if (auto st = require(w && out, "null argument")) return st;
  return guarded([&] {
    *out = new bg_series{kernel_slice(w->w, Complex{zre, zim}, N).series};
    return BG_OK;
  });
}

bg_status bg_kernel_dbar_slice(const bg_weight* w, double zre, double zim,
                               int order, int N, bg_series** out) {
  if (auto st = require(w && out, "null argument")) return st;
  return guarded([&] {
    *out = new bg_series{kernel_dbar_slice(w->w, Complex{zre, zim}, order, N)};
    return BG_OK;
  });
}

bg_status bg_kernel_a1_norm(const bg_series* slice, const bg_weight* nu, int J,
                            int M, double* out) {
  if (auto st = require(slice && nu && out, "null argument")) return st;
  return guarded([&] {
    *out = kernel_a1_norm(slice->s, nu->w, J, M);
    return BG_OK;
  });
}

int bg_kernel_degree_for(double abs_z) { return kernel_degree_for(abs_z); }

bg_status bg_kernel_plusn_deviation(const bg_weight* w, const bg_weight* v,
                                    int n_plus, double zre, double zim, int N,
                                    double* out) {
  if (auto st = require(w && v && out, "null argument")) return st;
  return guarded([&] {
    *out = kernel_plusN_deviation(w->w, v->w, n_plus, Complex{zre, zim}, N);
    return BG_OK;
  });
}

/* ---- projection ---- */

bg_status bg_preimage_roundtrip(const bg_weight* w, const bg_series* h,
                                double alpha, const char* method, int use_grid,
                                int J, int M, int force, bg_series** recovered) {
  if (auto st = require(w && h && method && recovered, "null argument"))
    return st;
  return guarded([&]() -> bg_status {
    const std::string meth = method;
    DiskSample sample;
    WeightPtr profile_weight;
    const int N = h->s.degree();
    try {
      if (meth == "bloch") {
        BlochPreimage p = preimage_bloch(w->w, h->s, alpha, force != 0);
        sample = std::move(p.sample);
        profile_weight = std::move(p.omega_alpha);
      } else if (meth == "regular") {
        RegularPreimage p = preimage_regular(w->w, h->s, force != 0);
        sample = std::move(p.sample);
        profile_weight = std::move(p.profile_weight);
      } else {
        g_last_error = "method must be 'bloch' or 'regular'";
        return BG_ERR_INVALID;
      }
    } catch (const std::runtime_error& e) {
      g_last_error = e.what();
      return BG_ERR_UNSUPPORTED;
    }
    PowerSeries rec;
    if (use_grid) {
      const PolarGrid grid = PolarGrid::build(J, M, w->w->breakpoints());
      rec = project(w->w, sample, grid, N);
    } else {
      rec = project_factored(w->w, profile_weight, sample.factored->analytic,
                             sample.factored->constant, N);
    }
    *recovered = new bg_series{std::move(rec)};
    return BG_OK;
  });
}

bg_status bg_little_bloch_curve(const bg_weight* w, const bg_series* h,
                                double alpha, const double* radii, int count,
                                double* out, int force) {
  if (auto st = require(w && h && radii && out && count > 0, "bad arguments"))
    return st;
  return guarded([&] {
    (void)force;
    std::vector<double> rs(radii, radii + count);
    const std::vector<double> curve = little_bloch_decay(w->w, h->s, alpha, rs);
    for (int i = 0; i < count; ++i) out[i] = curve[static_cast<size_t>(i)];
    return BG_OK;
  });
}

/* ---- analysis ---- */

bg_status bg_classify_json(const bg_weight* w, double K, char* buf,
                           size_t buflen) {
  if (auto st = require(w != nullptr, "null weight")) return st;
  return guarded([&] { return copy_string(classify(w->w, K).to_json(), buf, buflen); });
}

bg_status bg_bloch_seminorm(const bg_series* f, double* value, double* delta) {
  if (auto st = require(f && value, "null argument")) return st;
  return guarded([&] {
    const NormReport rep = bloch_seminorm(f->s);
    *value = rep.value;
    if (delta) *delta = rep.refinement_delta;
    return BG_OK;
  });
}

bg_status bg_besov_norm(const bg_series* f, double p, int Nd, double* value,
                        double* delta, int* diverged) {
  if (auto st = require(f && value, "null argument")) return st;
  return guarded([&] {
    const NormReport rep = besov_norm(f->s, p, Nd);
    *value = rep.value;
    if (delta) *delta = rep.refinement_delta;
    if (diverged) *diverged = rep.diverged ? 1 : 0;
    return BG_OK;
  });
}

bg_status bg_lp_lambda_norm(const bg_weight* w, const bg_series* h,
                            double alpha, double p, double* value,
                            double* delta, int* diverged) {
  if (auto st = require(w && h && value, "null argument")) return st;
  return guarded([&] {
    auto profile = [alpha](double r) { return std::pow(1.0 - r, alpha); };
    const NormReport rep =
        lp_lambda_omega_norm(w->w, profile, h->s, Complex{0.0}, p);
    *value = rep.value;
    if (delta) *delta = rep.refinement_delta;
    if (diverged) *diverged = rep.diverged ? 1 : 0;
    return BG_OK;
  });
}

bg_status bg_lp_residual(const bg_series* f, const bg_series* g,
                         const bg_weight* w, double* out) {
  if (auto st = require(f && g && w && out, "null argument")) return st;
  return guarded([&] {
    *out = lp_identity_residual(f->s, g->s, w->w);
    return BG_OK;
  });
}

bg_status bg_frac_lp_residual(const bg_series* f, const bg_series* g,
                              const bg_weight* w, const bg_weight* eta,
                              const bg_weight* nu, int N, int M, double* out) {
  if (auto st = require(f && g && w && eta && nu && out, "null argument"))
    return st;
  return guarded([&] {
    *out = frac_lp_residual(f->s, g->s, w->w, eta->w, nu->w, N, M);
    return BG_OK;
  });
}

}  // extern "C"
