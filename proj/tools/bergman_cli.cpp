// Command-line front end for the weighted-Bergman-space toolkit.
//
// Talks to the library exclusively through the C interface in bergman.h.
// Subcommands: moments, classify, fracd, preimage, verify-lp, kernel-norm,
// experiment.  See README.md for the config-file grammar used by
// `experiment --config <file>`.
//
// Exit codes: 0 all contracts pass, 1 contract failure, 2 unknown
// experiment, 3 configuration/usage error.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bergman.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitContract = 1;
constexpr int kExitUnknownExperiment = 2;
constexpr int kExitConfig = 3;

// ---------------------------------------------------------------------------
// Handle wrappers and error plumbing.

struct WeightDeleter {
  void operator()(bg_weight* w) const { bg_weight_free(w); }
};
struct SeriesDeleter {
  void operator()(bg_series* s) const { bg_series_free(s); }
};
struct FracdDeleter {
  void operator()(bg_fracd* d) const { bg_fracd_free(d); }
};
using Weight = std::unique_ptr<bg_weight, WeightDeleter>;
using Series = std::unique_ptr<bg_series, SeriesDeleter>;
using Fracd = std::unique_ptr<bg_fracd, FracdDeleter>;

struct CliError {
  int code;
  std::string message;
};

void require(bg_status st, const std::string& what, int code = kExitConfig) {
  if (st != BG_OK)
    throw CliError{code, what + ": " + bg_last_error()};
}

Weight parse_weight_arg(const std::string& spec) {
  bg_weight* w = nullptr;
  require(bg_weight_parse(spec.c_str(), &w), "weight '" + spec + "'");
  return Weight(w);
}

Series parse_series_arg(const std::string& literal) {
  bg_series* s = nullptr;
  require(bg_series_parse(literal.c_str(), &s), "series '" + literal + "'");
  return Series(s);
}

// ---------------------------------------------------------------------------
// Formatting: 17 significant digits, deterministic across runs.

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_complex(double re, double im) {
  if (im == 0.0) return fmt(re);
  return fmt(re) + (im < 0 ? "-" : "+") + fmt(std::abs(im)) + "i";
}

// Output sink: stdout by default, else a file. All experiment output goes
// through one sink so reruns with the same config are byte-identical.
struct Sink {
  std::ofstream file;
  std::ostream* out = &std::cout;
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw CliError{kExitConfig, "cannot open output file " + path};
      out = &file;
    }
  }
  template <typename T>
  Sink& operator<<(const T& v) {
    *out << v;
    return *this;
  }
};

// ---------------------------------------------------------------------------
// Shared computations.

double moment_of(const bg_weight* w, int n) {
  double v = 0.0;
  require(bg_weight_moment(w, n, &v, nullptr), "moment", kExitContract);
  return v;
}

// Random polynomial with coefficients in the unit square, seeded.
Series random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> re(degree + 1), im(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    re[k] = u(rng);
    im[k] = u(rng);
  }
  bg_series* s = nullptr;
  require(bg_series_create(re.data(), im.data(), degree + 1, &s), "series");
  return Series(s);
}

std::string classify_json(const bg_weight* w, double K) {
  std::vector<char> buf(1 << 14);
  bg_status st = bg_classify_json(w, K, buf.data(), buf.size());
  if (st == BG_ERR_INVALID) {  // undersized buffer
    buf.resize(1 << 18);
    st = bg_classify_json(w, K, buf.data(), buf.size());
  }
  require(st, "classify", kExitContract);
  return buf.data();
}

// (1-|z|^2) * A^1 norm of the first dbar derivative of the kernel slice at
// |z| = absz, the quantity that climbs toward 8/pi.
struct KernelNormRow {
  double absz;
  int N;
  int M;
  double scaled_norm;
  double gap;
};

KernelNormRow kernel_norm_at(const bg_weight* w, const bg_weight* nu,
                             double absz, int J) {
  const double kEightOverPi = 8.0 / M_PI;
  KernelNormRow row;
  row.absz = absz;
  row.N = bg_kernel_degree_for(absz);
  int M = 1;
  while (M < 4 * row.N) M <<= 1;
  row.M = M;
  bg_series* slice = nullptr;
  require(bg_kernel_dbar_slice(w, absz, 0.0, 1, row.N, &slice), "dbar slice",
          kExitContract);
  Series guard(slice);
  double raw = 0.0;
  require(bg_kernel_a1_norm(slice, nu, J, M, &raw), "a1 norm", kExitContract);
  row.scaled_norm = (1.0 - absz * absz) * raw;
  row.gap = kEightOverPi - row.scaled_norm;
  return row;
}

// ---------------------------------------------------------------------------
// Simple subcommands.

int cmd_moments(const std::string& spec, int N, const std::string& out_path) {
  Weight w = parse_weight_arg(spec);
  std::vector<double> values(N + 1), errors(N + 1);
  std::vector<char> methods(N + 1);
  require(bg_weight_moments(w.get(), N, values.data(), errors.data(),
                            methods.data()),
          "moments", kExitContract);
  Sink sink(out_path);
  sink << "n,value,abs_error,method\n";
  for (int n = 0; n <= N; ++n) {
    sink << n << "," << fmt(values[n]) << "," << fmt(errors[n]) << ","
         << (methods[n] == 'c' ? "closed_form" : "quadrature") << "\n";
  }
  return kExitOk;
}

int cmd_classify(const std::string& spec, double K) {
  Weight w = parse_weight_arg(spec);
  std::cout << classify_json(w.get(), K) << "\n";
  return kExitOk;
}

int cmd_fracd(const std::string& from, const std::string& to,
              const std::string& literal, const std::string& at) {
  Weight w = parse_weight_arg(from);
  Weight v = parse_weight_arg(to);
  Series f = parse_series_arg(literal);

  double zre = 0.0, zim = 0.0;
  {
    std::istringstream is(at);
    char comma = ',';
    if (!(is >> zre) || !(is >> comma) || comma != ',' || !(is >> zim))
      throw CliError{kExitConfig, "--at expects re,im (got '" + at + "')"};
  }

  bg_fracd* d = nullptr;
  require(bg_fracd_build(w.get(), v.get(), bg_series_degree(f.get()), &d),
          "operator build");
  Fracd guard(d);
  bg_series* g = nullptr;
  require(bg_fracd_apply(d, f.get(), &g), "apply", kExitContract);
  Series gg(g);
  double mre = 0.0, mim = 0.0;
  require(bg_series_eval(g, zre, zim, &mre, &mim), "evaluate", kExitContract);
  double ire = 0.0, iim = 0.0;
  require(bg_fracd_apply_integral(w.get(), v.get(), f.get(), zre, zim, &ire,
                                  &iim),
          "integral form", kExitContract);
  const double gap = std::abs(std::complex<double>(mre - ire, mim - iim));
  std::cout << "multiplier_path = " << fmt_complex(mre, mim) << "\n"
            << "integral_path   = " << fmt_complex(ire, iim) << "\n"
            << "gap             = " << fmt(gap) << "\n";
  return kExitOk;
}

int cmd_preimage(const std::string& spec, const std::string& literal,
                 double alpha, const std::string& method, bool grid, int J,
                 int M, bool force, const std::string& out_path) {
  Weight w = parse_weight_arg(spec);
  Series h = parse_series_arg(literal);
  bg_series* rec = nullptr;
  require(bg_preimage_roundtrip(w.get(), h.get(), alpha, method.c_str(),
                                grid ? 1 : 0, J, M, force ? 1 : 0, &rec),
          "preimage round trip", kExitContract);
  Series guard(rec);
  Sink sink(out_path);
  sink << "k,h_k,recovered_k,abs_err\n";
  const int deg = bg_series_degree(h.get());
  for (int k = 0; k <= deg; ++k) {
    double hre, him, rre, rim;
    require(bg_series_coeff(h.get(), k, &hre, &him), "coefficient");
    require(bg_series_coeff(rec, k, &rre, &rim), "coefficient");
    const double err = std::abs(std::complex<double>(hre - rre, him - rim));
    sink << k << "," << fmt_complex(hre, him) << "," << fmt_complex(rre, rim)
         << "," << fmt(err) << "\n";
  }
  return kExitOk;
}

int cmd_verify_lp(const std::string& spec, int deg, int trials,
                  unsigned long long seed, const std::string& out_path) {
  Weight w = parse_weight_arg(spec);
  std::mt19937_64 rng(seed);
  Sink sink(out_path);
  sink << "trial,seed,degree,residual\n";
  double max_res = 0.0, sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    Series f = random_poly(rng, deg);
    Series g = random_poly(rng, deg);
    double res = 0.0;
    require(bg_lp_residual(f.get(), g.get(), w.get(), &res), "residual",
            kExitContract);
    sink << t << "," << seed << "," << deg << "," << fmt(res) << "\n";
    max_res = std::max(max_res, res);
    sum += res;
  }
  sink << "max,," << deg << "," << fmt(max_res) << "\n";
  sink << "mean,," << deg << "," << fmt(sum / std::max(trials, 1)) << "\n";
  return max_res <= 1e-8 ? kExitOk : kExitContract;
}

int cmd_kernel_norm(const std::string& spec, const std::string& nu_spec,
                    int jmax, int J, const std::string& out_path) {
  Weight w = parse_weight_arg(spec);
  Weight nu = parse_weight_arg(nu_spec);
  Sink sink(out_path);
  sink << "abs_z,N,M_angles,a1_norm,eight_over_pi_gap\n";
  for (int j = 1; j <= jmax; ++j) {
    const double absz = 1.0 - std::pow(2.0, -j);
    KernelNormRow row = kernel_norm_at(w.get(), nu.get(), absz, J);
    sink << fmt(row.absz) << "," << row.N << "," << row.M << ","
         << fmt(row.scaled_norm) << "," << fmt(row.gap) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Experiment runner.  Config grammar: one `key = value` per line, `#`
// comments, list values in brackets: weights = [std:alpha=0, log:beta=2].

struct Config {
  std::string experiment;
  std::vector<std::string> weights;
  std::vector<std::string> series;
  std::vector<double> alphas;
  std::vector<double> p;
  int N = 256;
  int J = 200;
  int M = 0;  // 0: derive from N
  int deg = 50;
  int trials = 50;
  double r_max = 0.999;
  double tol = 1e-8;
  unsigned long long seed = 41;
  std::string out;
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> parse_list(const std::string& raw) {
  const std::string v = trim(raw);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw CliError{kExitConfig, "expected [a, b, ...], got '" + raw + "'"};
  std::vector<std::string> items;
  std::string body = v.substr(1, v.size() - 2);
  // Weight specs can contain brackets (zero:[a,b]:...), so split on commas
  // only at bracket depth zero.
  int depth = 0;
  std::string cur;
  for (char c : body) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      if (!trim(cur).empty()) items.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) items.push_back(trim(cur));
  return items;
}

std::vector<double> parse_double_list(const std::string& raw) {
  std::vector<double> out;
  for (const std::string& item : parse_list(raw)) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CliError{kExitConfig, "expected number in list, got '" + item + "'"};
    }
  }
  return out;
}

double parse_double(const std::string& key, const std::string& raw) {
  try {
    size_t used = 0;
    double v = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw CliError{kExitConfig, key + " expects a number, got '" + raw + "'"};
  }
}

int parse_int(const std::string& key, const std::string& raw) {
  const double v = parse_double(key, raw);
  if (v != std::floor(v))
    throw CliError{kExitConfig, key + " expects an integer, got '" + raw + "'"};
  return static_cast<int>(v);
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitConfig, "cannot read config file " + path};
  Config cfg;
  bool saw_experiment = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    // `=` also appears inside weight specs (std:alpha=1); the key is the
    // part before the first '=' only when it is a bare identifier.
    if (eq == std::string::npos)
      throw CliError{kExitConfig, "config line " + std::to_string(lineno) +
                                      ": expected key = value"};
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "experiment") {
      cfg.experiment = value;
      saw_experiment = true;
    } else if (key == "weights") {
      cfg.weights = parse_list(value);
    } else if (key == "series") {
      cfg.series = parse_list(value);
    } else if (key == "alphas") {
      cfg.alphas = parse_double_list(value);
    } else if (key == "p") {
      cfg.p = parse_double_list(value);
    } else if (key == "N") {
      cfg.N = parse_int(key, value);
    } else if (key == "J") {
      cfg.J = parse_int(key, value);
    } else if (key == "M") {
      cfg.M = parse_int(key, value);
    } else if (key == "deg") {
      cfg.deg = parse_int(key, value);
    } else if (key == "trials") {
      cfg.trials = parse_int(key, value);
    } else if (key == "r_max") {
      cfg.r_max = parse_double(key, value);
    } else if (key == "tol") {
      cfg.tol = parse_double(key, value);
      if (!(cfg.tol > 0.0))
        throw CliError{kExitConfig, "tol must be positive"};
    } else if (key == "seed") {
      cfg.seed = static_cast<unsigned long long>(
          parse_double(key, value));
    } else if (key == "out") {
      cfg.out = value;
    } else {
      throw CliError{kExitConfig, "config line " + std::to_string(lineno) +
                                      ": unknown key '" + key + "'"};
    }
  }
  if (!saw_experiment)
    throw CliError{kExitConfig, "config is missing 'experiment'"};
  return cfg;
}

// Weights must parse up front; weight-less configs are a config error for
// experiments that need them.
std::vector<Weight> parsed_weights(const Config& cfg,
                                   const std::vector<std::string>& fallback) {
  std::vector<std::string> specs =
      cfg.weights.empty() ? fallback : cfg.weights;
  if (specs.empty())
    throw CliError{kExitConfig, "experiment needs a non-empty weights list"};
  std::vector<Weight> out;
  for (const std::string& s : specs) out.push_back(parse_weight_arg(s));
  return out;
}

std::string weight_spec(const bg_weight* w) {
  char buf[256];
  require(bg_weight_spec(w, buf, sizeof buf), "spec");
  return buf;
}

void echo_config(Sink& sink, const Config& cfg) {
  sink << "# experiment=" << cfg.experiment << "\n";
  sink << "# seed=" << cfg.seed << "\n";
}

const std::vector<std::string> kMomentWeightSet = {
    "std:alpha=0", "std:alpha=1.5", "log:beta=2",
    "zero:[0.3,0.4]:std:alpha=1"};

int run_moments_identities(const Config& cfg) {
  std::vector<Weight> ws = parsed_weights(cfg, kMomentWeightSet);
  const int N = std::min(cfg.N, 100);
  Sink sink(cfg.out);
  echo_config(sink, cfg);
  sink << "weight,n,omega_n,plus_rel_err,star_rel_err,pass\n";
  bool all_pass = true;
  for (const Weight& w : ws) {
    bg_weight* plus_raw = nullptr;
    require(bg_weight_plus(w.get(), &plus_raw), "plus transform");
    Weight plus(plus_raw);
    bg_weight* star_raw = nullptr;
    require(bg_weight_star(w.get(), &star_raw), "star transform");
    Weight star(star_raw);
    const std::string spec = weight_spec(w.get());
    for (int n = 0; n <= N; ++n) {
      const double wn = moment_of(w.get(), n);
      const double plus_err =
          std::abs(moment_of(plus.get(), n) - wn / (n + 1.0)) / wn;
      const double star_err =
          std::abs(moment_of(star.get(), n) -
                   moment_of(w.get(), n + 1) / (4.0 * (n + 1.0) * (n + 1.0))) /
          wn;
      const bool pass = plus_err <= cfg.tol && star_err <= cfg.tol;
      all_pass = all_pass && pass;
      sink << spec << "," << n << "," << fmt(wn) << "," << fmt(plus_err) << ","
           << fmt(star_err) << "," << (pass ? "pass" : "FAIL") << "\n";
    }
  }
  return all_pass ? kExitOk : kExitContract;
}

int run_operator_identities(const Config& cfg) {
  std::vector<Weight> ws = parsed_weights(cfg, kMomentWeightSet);
  const int degree = std::min(cfg.N, 200);
  Sink sink(cfg.out);
  echo_config(sink, cfg);
  sink << "omega,nu,eta,sigma,commutation,composition,inversion,pass\n";
  bool all_pass = true;
  const size_t n = ws.size();
  for (size_t i = 0; i < n; ++i) {
    const bg_weight* w = ws[i].get();
    const bg_weight* v = ws[(i + 1) % n].get();
    const bg_weight* eta = ws[(i + 2) % n].get();
    const bg_weight* sigma = ws[(i + 3) % n].get();
    double res[3] = {0, 0, 0};
    require(bg_fracd_identity_residuals(w, v, eta, sigma, degree, res),
            "identity residuals", kExitContract);
    const bool pass =
        res[0] <= cfg.tol && res[1] <= cfg.tol && res[2] <= cfg.tol;
    all_pass = all_pass && pass;
    sink << weight_spec(w) << "," << weight_spec(v) << "," << weight_spec(eta)
         << "," << weight_spec(sigma) << "," << fmt(res[0]) << ","
         << fmt(res[1]) << "," << fmt(res[2]) << ","
         << (pass ? "pass" : "FAIL") << "\n";
  }
  return all_pass ? kExitOk : kExitContract;
}

int run_preimage_roundtrip(const Config& cfg) {
  std::vector<Weight> ws = parsed_weights(cfg, {"std:alpha=0", "std:alpha=1"});
  std::vector<std::string> series =
      cfg.series.empty() ? std::vector<std::string>{"poly:[1,0.5,-0.25,2]",
                                                    "logfn@64"}
                         : cfg.series;
  std::vector<double> alphas =
      cfg.alphas.empty() ? std::vector<double>{0.5, 1.0, 2.0} : cfg.alphas;
  Sink sink(cfg.out);
  echo_config(sink, cfg);
  sink << "weight,series,alpha,method,max_abs_err,tolerance,pass\n";
  bool all_pass = true;
  for (const Weight& w : ws) {
    for (const std::string& lit : series) {
      Series h = parse_series_arg(lit);
      const int deg = bg_series_degree(h.get());
      const int M = cfg.M > 0 ? cfg.M : 2 * deg + 2;
      for (double alpha : alphas) {
        for (int grid = 0; grid <= 1; ++grid) {
          const double tol = grid ? 1e-6 : 1e-10;
          bg_series* rec = nullptr;
          require(bg_preimage_roundtrip(w.get(), h.get(), alpha, "bloch",
                                        grid, cfg.J, M, 0, &rec),
                  "roundtrip", kExitContract);
          Series guard(rec);
          double max_err = 0.0;
          for (int k = 0; k <= deg; ++k) {
            double hre, him, rre, rim;
            require(bg_series_coeff(h.get(), k, &hre, &him), "coeff");
            require(bg_series_coeff(rec, k, &rre, &rim), "coeff");
            max_err = std::max(
                max_err,
                std::abs(std::complex<double>(hre - rre, him - rim)));
          }
          const bool pass = max_err <= tol;
          all_pass = all_pass && pass;
          sink << weight_spec(w.get()) << "," << lit << "," << fmt(alpha)
               << "," << (grid ? "grid" : "factored") << "," << fmt(max_err)
               << "," << fmt(tol) << "," << (pass ? "pass" : "FAIL") << "\n";
        }
      }
    }
  }
  return all_pass ? kExitOk : kExitContract;
}

int run_lp_identities(const Config& cfg) {
  std::vector<Weight> ws = parsed_weights(
      cfg, {"std:alpha=0", "std:alpha=1.5", "log:beta=2"});
  const int deg = std::min(cfg.deg, 50);
  // fractional identity orders (N, M) with N + M <= 4
  const std::vector<std::pair<int, int>> orders = {
      {0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 2}};
  Sink sink(cfg.out);
  echo_config(sink, cfg);
  sink << "weight,trial,lp_residual,frac_N,frac_M,frac_residual,pass\n";
  bool all_pass = true;
  for (const Weight& w : ws) {
    std::mt19937_64 rng(cfg.seed);
    for (int t = 0; t < cfg.trials; ++t) {
      Series f = random_poly(rng, deg);
      Series g = random_poly(rng, deg);
      double lp = 0.0;
      require(bg_lp_residual(f.get(), g.get(), w.get(), &lp), "lp residual",
              kExitContract);
      const auto& [No, Mo] = orders[t % orders.size()];
      double frac = 0.0;
      require(bg_frac_lp_residual(f.get(), g.get(), w.get(), w.get(), w.get(),
                                  No, Mo, &frac),
              "fractional residual", kExitContract);
      const bool pass = lp <= cfg.tol && frac <= cfg.tol;
      all_pass = all_pass && pass;
      sink << weight_spec(w.get()) << "," << t << "," << fmt(lp) << "," << No
           << "," << Mo << "," << fmt(frac) << "," << (pass ? "pass" : "FAIL")
           << "\n";
    }
  }
  return all_pass ? kExitOk : kExitContract;
}

int run_kernel_norm_8pi(const Config& cfg) {
  std::vector<Weight> ws = parsed_weights(cfg, {"std:alpha=0"});
  const bg_weight* w = ws.front().get();
  const double kEightOverPi = 8.0 / M_PI;
  Sink sink(cfg.out);
  echo_config(sink, cfg);
  sink << "abs_z,N,M_angles,a1_norm,eight_over_pi_gap,pass\n";
  double prev = 0.0;
  bool monotone = true;
  double last = 0.0;
  std::ostringstream rows;
  std::vector<KernelNormRow> table;
  for (int j = 1; j <= 10; ++j) {
    const double absz = 1.0 - std::pow(2.0, -j);
    table.push_back(kernel_norm_at(w, w, absz, std::max(cfg.J, 400)));
  }
  for (const KernelNormRow& row : table) {
    monotone = monotone && row.scaled_norm > prev;
    prev = row.scaled_norm;
    last = row.scaled_norm;
  }
  const bool close = std::abs(last - kEightOverPi) <= 0.02 * kEightOverPi;
  for (const KernelNormRow& row : table) {
    sink << fmt(row.absz) << "," << row.N << "," << row.M << ","
         << fmt(row.scaled_norm) << "," << fmt(row.gap) << ","
         << (monotone && close ? "pass" : "FAIL") << "\n";
  }
  return monotone && close ? kExitOk : kExitContract;
}

int run_classify_suite(const Config& cfg) {
  std::vector<Weight> ws = parsed_weights(
      cfg, {"std:alpha=0^alpha=0.5", "std:alpha=0^alpha=1",
            "std:alpha=0^alpha=2", "log:beta=2", "exp:c=1"});
  Sink sink(cfg.out);
  echo_config(sink, cfg);
  sink << "weight,report,pass\n";
  bool all_pass = true;
  for (const Weight& w : ws) {
    const std::string spec = weight_spec(w.get());
    std::string json = classify_json(w.get(), 20.0);
    // Flatten for CSV embedding.
    std::string flat;
    for (char c : json)
      if (c != '\n') flat += c == ',' ? ';' : c;
    // Ground-truth contracts where one exists.
    bool pass = true;
    auto has = [&](const std::string& needle) {
      return json.find(needle) != std::string::npos;
    };
    const std::string shift_prefix = "std:alpha=0^alpha=";
    if (spec.rfind(shift_prefix, 0) == 0) {
      const double a = std::stod(spec.substr(shift_prefix.size()));
      const size_t at = json.find("\"C_omega\": ");
      const double c = std::stod(json.substr(at + 11));
      pass = std::abs(c - std::pow(2.0, a + 1.0)) <=
             0.05 * std::pow(2.0, a + 1.0);
    } else if (spec == "log:beta=2") {
      pass = has("\"dhat\": {\n    \"verdict\": true") &&
             has("\"dcheck\": {\n    \"verdict\": false");
    } else if (spec == "exp:c=1") {
      pass = has("\"dhat\": {\n    \"verdict\": false");
    }
    all_pass = all_pass && pass;
    sink << spec << ",\"" << flat << "\"," << (pass ? "pass" : "FAIL") << "\n";
  }
  return all_pass ? kExitOk : kExitContract;
}

int run_besov_surrogate(const Config& cfg) {
  std::vector<Weight> ws = parsed_weights(cfg, {"std:alpha=0"});
  std::vector<std::string> series =
      cfg.series.empty() ? std::vector<std::string>{"logfn@64"} : cfg.series;
  std::vector<double> alphas =
      cfg.alphas.empty() ? std::vector<double>{1.5} : cfg.alphas;
  std::vector<double> ps = cfg.p.empty() ? std::vector<double>{1.0, 2.0}
                                         : cfg.p;
  Sink sink(cfg.out);
  echo_config(sink, cfg);
  sink << "weight,series,alpha,p,lambda_norm,refinement_delta,pass\n";
  bool all_pass = true;
  for (const Weight& w : ws) {
    for (const std::string& lit : series) {
      Series h = parse_series_arg(lit);
      for (double alpha : alphas) {
        for (double p : ps) {
          double value = 0.0, delta = 0.0;
          int diverged = 0;
          require(bg_lp_lambda_norm(w.get(), h.get(), alpha, p, &value,
                                    &delta, &diverged),
                  "lambda norm", kExitContract);
          const bool pass = !diverged && delta <= 0.05 * value;
          all_pass = all_pass && pass;
          sink << weight_spec(w.get()) << "," << lit << "," << fmt(alpha)
               << "," << fmt(p) << "," << fmt(value) << "," << fmt(delta)
               << "," << (pass ? "pass" : "FAIL") << "\n";
        }
      }
    }
  }
  return all_pass ? kExitOk : kExitContract;
}

int run_decay_curve(const Config& cfg) {
  std::vector<Weight> ws = parsed_weights(cfg, {"std:alpha=0"});
  std::vector<std::string> series =
      cfg.series.empty() ? std::vector<std::string>{"poly:[1,0.5,-0.25,2]"}
                         : cfg.series;
  const double alpha = cfg.alphas.empty() ? 1.0 : cfg.alphas.front();
  std::vector<double> radii;
  for (int i = 0; i < 100; ++i) radii.push_back(i / 100.0);
  radii.push_back(cfg.r_max);
  Sink sink(cfg.out);
  echo_config(sink, cfg);
  sink << "weight,series,r,sup_modulus,pass\n";
  bool all_pass = true;
  for (const Weight& w : ws) {
    for (const std::string& lit : series) {
      Series h = parse_series_arg(lit);
      std::vector<double> curve(radii.size());
      require(bg_little_bloch_curve(w.get(), h.get(), alpha, radii.data(),
                                    static_cast<int>(radii.size()),
                                    curve.data(), 0),
              "decay curve", kExitContract);
      const double peak = *std::max_element(curve.begin(), curve.end());
      const bool pass = curve.back() <= 0.01 * peak;
      all_pass = all_pass && pass;
      for (size_t i = 0; i < radii.size(); ++i) {
        sink << weight_spec(w.get()) << "," << lit << "," << fmt(radii[i])
             << "," << fmt(curve[i]) << "," << (pass ? "pass" : "FAIL")
             << "\n";
      }
    }
  }
  return all_pass ? kExitOk : kExitContract;
}

int cmd_experiment(const std::string& config_path) {
  Config cfg = load_config(config_path);
  using Runner = int (*)(const Config&);
  static const std::map<std::string, Runner> runners = {
      {"moments-identities", run_moments_identities},
      {"operator-identities", run_operator_identities},
      {"preimage-roundtrip", run_preimage_roundtrip},
      {"lp-identities", run_lp_identities},
      {"kernel-norm-8pi", run_kernel_norm_8pi},
      {"classify-suite", run_classify_suite},
      {"besov-surrogate", run_besov_surrogate},
      {"decay-curve", run_decay_curve},
  };
  auto it = runners.find(cfg.experiment);
  if (it == runners.end()) {
    std::cerr << "unknown experiment '" << cfg.experiment << "'\n";
    return kExitUnknownExperiment;
  }
  return it->second(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for radial-weight Bergman spaces (v" +
               std::string(bg_version()) + ")"};
  app.require_subcommand(1);

  std::string weight_spec_arg, nu_spec = "std:alpha=0";
  std::string series_lit, from_spec, to_spec, at = "0.5,0";
  std::string method = "bloch", out_path, config_path;
  double alpha = 1.0, K = 20.0;
  int N = 32, deg = 50, trials = 50, J = 200, M = 0, jmax = 10;
  unsigned long long seed = 41;
  bool grid = false, force = false;

  auto* moments = app.add_subcommand("moments", "Moment table of a weight");
  moments->add_option("--weight", weight_spec_arg)->required();
  moments->add_option("--N", N, "highest moment index");
  moments->add_option("--out", out_path, "CSV path (default stdout)");

  auto* classify = app.add_subcommand("classify", "Numerical class report");
  classify->add_option("--weight", weight_spec_arg)->required();
  classify->add_option("--K", K, "doubling threshold");

  auto* fracd = app.add_subcommand(
      "fracd", "Apply a fractional derivative along both routes");
  fracd->add_option("--from", from_spec)->required();
  fracd->add_option("--to", to_spec)->required();
  fracd->add_option("--series", series_lit)->required();
  fracd->add_option("--at", at, "evaluation point re,im");

  auto* preimage =
      app.add_subcommand("preimage", "Pre-image round-trip report");
  preimage->add_option("--weight", weight_spec_arg)->required();
  preimage->add_option("--series", series_lit)->required();
  preimage->add_option("--alpha", alpha);
  preimage->add_option("--method", method, "bloch | regular");
  preimage->add_flag("--grid", grid, "use the polar-grid projection");
  preimage->add_option("--J", J, "radial nodes (grid path)");
  preimage->add_option("--M", M, "angles (grid path, 0 = auto)");
  preimage->add_flag("--force", force, "skip the weight-class gate");
  preimage->add_option("--out", out_path);

  auto* verify = app.add_subcommand(
      "verify-lp", "Littlewood-Paley residuals on random polynomials");
  verify->add_option("--weight", weight_spec_arg)->required();
  verify->add_option("--deg", deg);
  verify->add_option("--trials", trials);
  verify->add_option("--seed", seed);
  verify->add_option("--out", out_path);

  auto* knorm = app.add_subcommand(
      "kernel-norm", "Scaled A1 norms of the dbar kernel derivative");
  knorm->add_option("--weight", weight_spec_arg)->required();
  knorm->add_option("--nu", nu_spec, "norm weight");
  knorm->add_option("--jmax", jmax, "radii 1 - 2^-j, j = 1..jmax");
  knorm->add_option("--J", J, "radial quadrature nodes");
  knorm->add_option("--out", out_path);

  auto* experiment =
      app.add_subcommand("experiment", "Run a named experiment from a config");
  experiment->add_option("--config", config_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (moments->parsed()) return cmd_moments(weight_spec_arg, N, out_path);
    if (classify->parsed()) return cmd_classify(weight_spec_arg, K);
    if (fracd->parsed()) return cmd_fracd(from_spec, to_spec, series_lit, at);
    if (preimage->parsed())
      return cmd_preimage(weight_spec_arg, series_lit, alpha, method, grid, J,
                          M, force, out_path);
    if (verify->parsed())
      return cmd_verify_lp(weight_spec_arg, deg, trials, seed, out_path);
    if (knorm->parsed())
      return cmd_kernel_norm(weight_spec_arg, nu_spec, jmax, J, out_path);
    if (experiment->parsed()) return cmd_experiment(config_path);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContract;
  }
  return kExitConfig;
}
