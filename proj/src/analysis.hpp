#ifndef BERGMAN_ANALYSIS_HPP
#define BERGMAN_ANALYSIS_HPP

#include <functional>
#include <string>

#include "series.hpp"
#include "weights.hpp"

namespace bergman {

// Doubling-class membership verdicts with estimated constants. Verdicts are
// numerical: "consistent with membership up to r_max".
struct ClassReport {
  std::string weight_spec;
  struct {
    bool verdict = false;
    double C = 0.0;       // sup ω̂(r)/ω̂((1+r)/2) over the grid
    bool stable = false;  // within 5% between r_max = 1-1e-3 and 1-1e-4
  } dhat;
  struct {
    bool verdict = false;
    double K = 2.0;
    double C_prime = 0.0;  // inf ω̂(r)/ω̂(1-(1-r)/K)
  } dcheck;
  struct {
    bool verdict = false;
    double ratio_min = 0.0, ratio_max = 0.0;  // of ω̂(r)/((1-r)ω(r))
  } regular;
  double exponent_a = 0.0, exponent_b = 0.0;  // fitted tail exponent (estimate)
  bool reduced_confidence = false;            // tail underflow before r_max

  bool doubling() const { return dhat.verdict && dcheck.verdict; }
  std::string to_json() const;
};

ClassReport classify(const WeightPtr& w, double K = 2.0);

struct NormReport {
  std::string kind;
  double value = 0.0;
  double refinement_delta = 0.0;  // |last - previous| / last
  bool diverged = false;
};

// sup (1-|z|²)|f'(z)| + |f(0)| over a dense polar grid, with refinement delta.
NormReport bloch_seminorm(const PowerSeries& f, int radial = 400,
                          int angles = 256);

// Besov norm with derivative order Nd (default 2) against dλ = dA/(1-|z|²)².
NormReport besov_norm(const PowerSeries& f, double p, int Nd = 2,
                      int radial = 200, int angles = 128);

// L^p norm of profile(|z|)·h(z) + c against dλ_ω = ω dA/(ω̂(z)(1-|z|)).
NormReport lp_lambda_omega_norm(const WeightPtr& w,
                                const std::function<double(double)>& profile,
                                const PowerSeries& h, Complex constant, double p,
                                int radial = 100, int angles = 128);

// |⟨f,g⟩_ω - 4⟨f',g'⟩_{ω*} - ω(𝔻) f(0) conj(g(0))|, all via radial inner
// products (the classical Littlewood–Paley identity).
double lp_identity_residual(const PowerSeries& f, const PowerSeries& g,
                            const WeightPtr& w);

// Fractional version: ⟨f,g⟩_ω vs ⟨R^{η,η_{+N}}f, R^{ν,ν_{+M}}g⟩_{ω_{+N+M}},
// returned as a relative residual.
double frac_lp_residual(const PowerSeries& f, const PowerSeries& g,
                        const WeightPtr& w, const WeightPtr& eta,
                        const WeightPtr& nu, int N, int M);

enum class RatioProbe { HatHat, Lemma4 };

// Ratio of the two sides of the probed comparison along the given radii:
//   HatHat:  ω̂̂(r) vs ω̂(r)(1-r)
//   Lemma4:  ∫_r^1 ω(s)(1-s)^{α-1}/ω̂(s) ds vs (1-r)^{α-1}
std::vector<double> asymptotic_ratio_probe(RatioProbe kind, const WeightPtr& w,
                                           double alpha,
                                           const std::vector<double>& radii);

}  // namespace bergman

#endif
