#include "series.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace bergman {

PowerSeries::PowerSeries(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.assign(1, Complex{0.0});
}

PowerSeries PowerSeries::monomial(int k, Complex c) {
  std::vector<Complex> v(static_cast<size_t>(k) + 1, Complex{0.0});
  v.back() = c;
  return PowerSeries(std::move(v));
}

Complex PowerSeries::eval(Complex z) const {
  if (std::abs(z) >= 1.0)
    throw std::domain_error("series evaluation requires |z| < 1");
  Complex acc{0.0};
  for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

bool PowerSeries::within_budget(Complex z, double budget) const {
  const double rho = std::abs(z);
  if (rho >= 1.0) return false;
  double cmax = 0.0;
  for (const Complex& c : coeffs_) cmax = std::max(cmax, std::abs(c));
  const double bound =
      cmax * std::pow(rho, degree() + 1) / (1.0 - rho);
  return bound <= budget * std::max(1.0, cmax);
}

PowerSeries PowerSeries::derivative() const {
  if (degree() < 1) return PowerSeries(std::vector<Complex>{Complex{0.0}});
  std::vector<Complex> out(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k)
    out[k - 1] = static_cast<double>(k) * coeffs_[k];
  return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::derivative(int order) const {
  PowerSeries f = *this;
  for (int i = 0; i < order; ++i) f = f.derivative();
  return f;
}

PowerSeries PowerSeries::dilate(double r) const {
  if (!(r > 0.0 && r < 1.0))
    throw std::domain_error("dilate requires r in (0,1)");
  std::vector<Complex> out(coeffs_.size());
  double rk = 1.0;
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    out[k] = coeffs_[k] * rk;
    rk *= r;
  }
  return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::multiplied(std::span<const double> m) const {
  if (m.size() < coeffs_.size())
    throw std::invalid_argument("multiplier table shorter than series");
  std::vector<Complex> out(coeffs_.size());
  for (size_t k = 0; k < coeffs_.size(); ++k) out[k] = coeffs_[k] * m[k];
  return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
  std::vector<Complex> out(std::max(coeffs_.size(), o.coeffs_.size()),
                           Complex{0.0});
  for (size_t k = 0; k < out.size(); ++k)
    out[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
  return *this + o * Complex{-1.0};
}

PowerSeries PowerSeries::operator*(Complex c) const {
  std::vector<Complex> out = coeffs_;
  for (Complex& v : out) v *= c;
  return PowerSeries(std::move(out));
}

Complex inner_product_radial(const PowerSeries& f, const PowerSeries& g,
                             const MomentTable& moments) {
  const int deg = std::max(f.degree(), g.degree());
  if (moments.max_index() < deg)
    throw std::invalid_argument("moment table too short for inner product");
  Complex acc{0.0};
  for (int k = 0; k <= deg; ++k)
    acc += f.coeff(k) * std::conj(g.coeff(k)) *
           moments.values[static_cast<size_t>(k)];
  return acc;
}

PowerSeries parse_series(const std::string& text) {
  auto parse_degree = [&](size_t at) {
    const char* b = text.c_str() + at;
    char* e = nullptr;
    const long n = std::strtol(b, &e, 10);
    if (e == b || n < 0 || static_cast<size_t>(e - text.c_str()) != text.size())
      throw std::invalid_argument("bad degree in series literal: " + text);
    return static_cast<int>(n);
  };
  if (text.rfind("logfn@", 0) == 0) {
    const int N = parse_degree(6);
    std::vector<Complex> c(static_cast<size_t>(N) + 1, Complex{0.0});
    for (int k = 1; k <= N; ++k) c[static_cast<size_t>(k)] = 1.0 / k;
    return PowerSeries(std::move(c));  // log(1/(1-z)) truncated
  }
  if (text.rfind("geom@", 0) == 0) {
    const int N = parse_degree(5);
    return PowerSeries(
        std::vector<Complex>(static_cast<size_t>(N) + 1, Complex{1.0}));
  }
  if (text.rfind("poly:[", 0) == 0) {
    if (text.back() != ']')
      throw std::invalid_argument("poly literal must end with ']'");
    std::vector<Complex> c;
    size_t pos = 6;
    while (pos < text.size() - 1) {
      const char* b = text.c_str() + pos;
      char* e = nullptr;
      const double v = std::strtod(b, &e);
      if (e == b) throw std::invalid_argument("bad coefficient in " + text);
      pos += static_cast<size_t>(e - b);
      c.emplace_back(v);
      if (text[pos] == ',') ++pos;
    }
    if (c.empty()) throw std::invalid_argument("empty poly literal");
    return PowerSeries(std::move(c));
  }
  throw std::invalid_argument("unknown series literal: " + text);
}

double rho_max_default() { return 0.999; }

}  // namespace bergman
