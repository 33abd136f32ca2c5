#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "bergman.h"

TEST_CASE("weight lifecycle and evaluation") {
  bg_weight* w = nullptr;
  REQUIRE(bg_weight_parse("std:alpha=1", &w) == BG_OK);
  char buf[64];
  CHECK(bg_weight_spec(w, buf, sizeof buf) == BG_OK);
  CHECK(std::string(buf) == "std:alpha=1");

  double v = 0.0;
  CHECK(bg_weight_eval(w, 0.5, &v) == BG_OK);
  CHECK(v == doctest::Approx(0.75));
  CHECK(bg_weight_eval(w, 1.5, &v) == BG_ERR_DOMAIN);
  CHECK(std::strlen(bg_last_error()) > 0);

  CHECK(bg_weight_tail(w, 0.0, &v) == BG_OK);
  CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(bg_weight_moment(w, 0, &v, nullptr) == BG_OK);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bg_weight_total_mass(w, &v) == BG_OK);
  CHECK(v == doctest::Approx(0.5));

  double vals[5], errs[5];
  CHECK(bg_weight_moments(w, 4, vals, errs, nullptr) == BG_OK);
  for (int n = 1; n <= 4; ++n) CHECK(vals[n] < vals[n - 1]);
  bg_weight_free(w);
}

TEST_CASE("parse errors") {
  bg_weight* w = nullptr;
  CHECK(bg_weight_parse("nope:x=1", &w) == BG_ERR_PARSE);
  CHECK(std::string(bg_last_error()).find("position") != std::string::npos);
  CHECK(bg_weight_parse(nullptr, &w) == BG_ERR_INVALID);
  CHECK(bg_weight_eval(nullptr, 0.5, nullptr) == BG_ERR_INVALID);
}

TEST_CASE("transforms through the C surface") {
  bg_weight* flat = nullptr;
  REQUIRE(bg_weight_parse("std:alpha=0", &flat) == BG_OK);
  bg_weight* plus = nullptr;
  REQUIRE(bg_weight_plus(flat, &plus) == BG_OK);
  double v = 0.0;
  CHECK(bg_weight_moment(plus, 3, &v, nullptr) == BG_OK);
  CHECK(v == doctest::Approx(1.0 / 16.0).epsilon(1e-8));

  bg_weight* star = nullptr;
  REQUIRE(bg_weight_star(flat, &star) == BG_OK);
  CHECK(bg_weight_eval(star, 0.0, &v) == BG_ERR_DOMAIN);
  CHECK(bg_weight_moment(star, 0, &v, nullptr) == BG_OK);
  CHECK(v == doctest::Approx(0.125).epsilon(1e-8));

  bg_weight* shifted = nullptr;
  REQUIRE(bg_weight_alpha_shift(flat, 1.0, &shifted) == BG_OK);
  CHECK(bg_weight_eval(shifted, 0.5, &v) == BG_OK);
  CHECK(v == doctest::Approx(0.5));

  bg_weight* tilde = nullptr;
  REQUIRE(bg_weight_tilde(flat, &tilde) == BG_OK);
  CHECK(bg_weight_eval(tilde, 0.7, &v) == BG_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-10));

  bg_weight_free(tilde);
  bg_weight_free(shifted);
  bg_weight_free(star);
  bg_weight_free(plus);
  bg_weight_free(flat);
}

TEST_CASE("series") {
  bg_series* s = nullptr;
  REQUIRE(bg_series_parse("poly:[1,0,2]", &s) == BG_OK);
  CHECK(bg_series_degree(s) == 2);
  double re, im;
  CHECK(bg_series_coeff(s, 2, &re, &im) == BG_OK);
  CHECK(re == 2.0);
  CHECK(bg_series_eval(s, 0.5, 0.0, &re, &im) == BG_OK);
  CHECK(re == doctest::Approx(1.5));
  CHECK(bg_series_eval(s, 1.0, 0.0, &re, &im) == BG_ERR_DOMAIN);

  bg_series* d = nullptr;
  REQUIRE(bg_series_derivative(s, &d) == BG_OK);
  CHECK(bg_series_coeff(d, 1, &re, &im) == BG_OK);
  CHECK(re == 4.0);

  bg_series* dil = nullptr;
  REQUIRE(bg_series_dilate(s, 0.5, &dil) == BG_OK);
  CHECK(bg_series_coeff(dil, 2, &re, &im) == BG_OK);
  CHECK(re == doctest::Approx(0.5));

  CHECK(bg_series_parse("junk", &dil) == BG_ERR_INVALID);

  const double cr[] = {1.0, 2.0};
  bg_series* built = nullptr;
  REQUIRE(bg_series_create(cr, nullptr, 2, &built) == BG_OK);
  CHECK(bg_series_degree(built) == 1);

  bg_series_free(built);
  bg_series_free(dil);
  bg_series_free(d);
  bg_series_free(s);
}

TEST_CASE("fractional derivative") {
  bg_weight *w = nullptr, *v = nullptr;
  REQUIRE(bg_weight_parse("std:alpha=0", &w) == BG_OK);
  REQUIRE(bg_weight_parse("std:alpha=1", &v) == BG_OK);
  bg_fracd* d = nullptr;
  REQUIRE(bg_fracd_build(w, v, 16, &d) == BG_OK);
  double m = 0.0;
  CHECK(bg_fracd_multiplier(d, 1, &m) == BG_OK);
  CHECK(m == doctest::Approx(3.0).epsilon(1e-10));

  bg_series* f = nullptr;
  REQUIRE(bg_series_parse("poly:[0,1]", &f) == BG_OK);
  bg_series* out = nullptr;
  REQUIRE(bg_fracd_apply(d, f, &out) == BG_OK);
  double re, im;
  CHECK(bg_series_coeff(out, 1, &re, &im) == BG_OK);
  CHECK(re == doctest::Approx(3.0).epsilon(1e-10));

  double ire, iim;
  CHECK(bg_fracd_apply_integral(w, v, f, 0.5, 0.0, &ire, &iim) == BG_OK);
  CHECK(ire == doctest::Approx(1.5).epsilon(1e-8));

  double resid[3];
  CHECK(bg_fracd_identity_residuals(w, v, w, v, 50, resid) == BG_OK);
  for (double x : resid) CHECK(x <= 1e-12);

  bg_series_free(out);
  bg_series_free(f);
  bg_fracd_free(d);
  bg_weight_free(v);
  bg_weight_free(w);
}

TEST_CASE("kernels") {
  bg_weight* w = nullptr;
  REQUIRE(bg_weight_parse("std:alpha=0", &w) == BG_OK);
  bg_series* slice = nullptr;
  REQUIRE(bg_kernel_slice(w, 0.3, -0.4, 8, &slice) == BG_OK);
  double re, im;
  CHECK(bg_series_coeff(slice, 1, &re, &im) == BG_OK);
  CHECK(re == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(im == doctest::Approx(0.8).epsilon(1e-12));

  double nrm = 0.0;
  CHECK(bg_kernel_a1_norm(slice, w, 80, 64, &nrm) == BG_OK);
  CHECK(nrm > 0.0);

  bg_series* dbar = nullptr;
  REQUIRE(bg_kernel_dbar_slice(w, 0.3, -0.4, 1, 8, &dbar) == BG_OK);
  CHECK(bg_series_coeff(dbar, 0, &re, &im) == BG_OK);
  CHECK(re == 0.0);

  CHECK(bg_kernel_degree_for(0.0) == 256);

  double dev = 0.0;
  bg_weight* v = nullptr;
  REQUIRE(bg_weight_parse("std:alpha=1", &v) == BG_OK);
  CHECK(bg_kernel_plusn_deviation(w, v, 1, 0.5, 0.1, 32, &dev) == BG_OK);
  CHECK(dev <= 1e-8);

  bg_weight_free(v);
  bg_series_free(dbar);
  bg_series_free(slice);
  bg_weight_free(w);
}

TEST_CASE("projection round trips") {
  bg_weight* w = nullptr;
  REQUIRE(bg_weight_parse("std:alpha=0", &w) == BG_OK);
  bg_series* h = nullptr;
  REQUIRE(bg_series_parse("poly:[1,0.5,-2]", &h) == BG_OK);

  bg_series* rec = nullptr;
  REQUIRE(bg_preimage_roundtrip(w, h, 1.0, "bloch", 0, 0, 0, 0, &rec) == BG_OK);
  for (int k = 0; k <= 2; ++k) {
    double re, im, hre, him;
    CHECK(bg_series_coeff(rec, k, &re, &im) == BG_OK);
    CHECK(bg_series_coeff(h, k, &hre, &him) == BG_OK);
    CHECK(re == doctest::Approx(hre).epsilon(1e-10));
  }
  bg_series_free(rec);

  rec = nullptr;
  REQUIRE(bg_preimage_roundtrip(w, h, 1.0, "regular", 1, 200, 8, 0, &rec) ==
          BG_OK);
  double re, im;
  CHECK(bg_series_coeff(rec, 1, &re, &im) == BG_OK);
  CHECK(re == doctest::Approx(0.5).epsilon(1e-6));
  bg_series_free(rec);

  CHECK(bg_preimage_roundtrip(w, h, 1.0, "sideways", 0, 0, 0, 0, &rec) ==
        BG_ERR_INVALID);

  bg_weight* ex = nullptr;
  REQUIRE(bg_weight_parse("exp:c=1", &ex) == BG_OK);
  CHECK(bg_preimage_roundtrip(ex, h, 1.0, "bloch", 0, 0, 0, 0, &rec) ==
        BG_ERR_UNSUPPORTED);

  double radii[3] = {0.5, 0.9, 0.999};
  double curve[3];
  CHECK(bg_little_bloch_curve(w, h, 1.0, radii, 3, curve, 0) == BG_OK);
  CHECK(curve[2] < curve[0]);

  bg_weight_free(ex);
  bg_series_free(h);
  bg_weight_free(w);
}

TEST_CASE("analysis surface") {
  bg_weight* w = nullptr;
  REQUIRE(bg_weight_parse("std:alpha=0", &w) == BG_OK);

  char json[2048];
  REQUIRE(bg_classify_json(w, 2.0, json, sizeof json) == BG_OK);
  CHECK(std::string(json).find("\"doubling\": true") != std::string::npos);
  char tiny[4];
  CHECK(bg_classify_json(w, 2.0, tiny, sizeof tiny) == BG_ERR_INVALID);

  bg_series* f = nullptr;
  REQUIRE(bg_series_parse("poly:[0,1]", &f) == BG_OK);
  double value = 0.0, delta = 0.0;
  CHECK(bg_bloch_seminorm(f, &value, &delta) == BG_OK);
  CHECK(value == doctest::Approx(1.0).epsilon(1e-6));

  int diverged = 0;
  CHECK(bg_besov_norm(f, 2.0, 2, &value, &delta, &diverged) == BG_OK);
  CHECK(value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(diverged == 0);

  CHECK(bg_lp_lambda_norm(w, f, 2.0, 1.0, &value, &delta, &diverged) == BG_OK);
  CHECK(diverged == 0);

  double resid = 0.0;
  CHECK(bg_lp_residual(f, f, w, &resid) == BG_OK);
  CHECK(resid <= 1e-10);

  bg_weight* eta = nullptr;
  REQUIRE(bg_weight_parse("std:alpha=1", &eta) == BG_OK);
  CHECK(bg_frac_lp_residual(f, f, w, eta, eta, 1, 1, &resid) == BG_OK);
  CHECK(resid <= 1e-8);

  CHECK(std::string(bg_version()).size() > 0);

  bg_weight_free(eta);
  bg_series_free(f);
  bg_weight_free(w);
}
