#pragma once

#include <optional>

#include "riffle/errors.hpp"

namespace riffle {

// theta_j = theta^j + (1-theta)^j; the geometric quantity every cycle-type
// term is built from. theta_1 = 1.
double theta_power_sum(double theta, int j);

struct SeriesValue {
  double value = 0.0;
  int truncated_at = 0;   // first omitted index j
  double tail_bound = 0.0;  // certified bound on the omitted tail
};

// M(k,n) = sum_{j>=2} n^j theta_j^k. Terms are truncated at the first j
// whose term falls below tol * accumulated sum while decreasing; the tail
// is certified by the geometric ratio n * max(theta,1-theta)^k. Throws
// divergence_error when that ratio reaches 1 (k too small for this n).
// Real-valued k is accepted.
SeriesValue big_M(int n, double theta, double k, double tol = 1e-15);

struct AsymptoticEstimate {
  int n = 0;
  double theta = 0.0;
  double k = 0.0;
  double big_m = 0.0;
  double ell = 0.0;        // approximation of ell(k,n) = n! P^{*k}(id) = linf + 1
  bool valid = false;      // big_m <= sqrt(n) / (10 ln n)
  double validity_threshold = 0.0;
  int truncated_at = 0;
  double tail_bound = 0.0;
};

// ell(k,n) ~= exp( sum_{j>=2} n^j theta_j^k / j ), with relative error
// O((1+M)/sqrt(n)) whenever the validity flag holds.
AsymptoticEstimate ell_approx(int n, double theta, double k, double tol = 1e-15);

// The single place relating ell(k,n) to the l-infinity distance.
inline double ell_from_linf(double linf) { return linf + 1.0; }

// Window position: floor( (2 ln n - ln 2 + c) / -ln(theta^2 + (1-theta)^2) ).
// Smallest at theta = 1/2. Throws for theta outside (0,1).
int cutoff_k(int n, double theta, double c);

enum class Regime { fixed, kappa, extreme };

struct RegimeParams {
  double c = 0.0;
  double kappa = 0.0;  // only read in the kappa regime
};

struct RegimeLimits {
  double ell = 0.0;
  std::optional<double> sep;   // fixed regime only
  std::optional<double> linf;  // fixed regime only
};

// Limiting value of ell(k,n) along the three parameter regimes:
//   fixed:   theta constant, k the cutoff window -> ell = exp(e^-c),
//            with SEP -> 1 - exp(-e^-c) and linf -> exp(e^-c) - 1;
//   kappa:   (1-theta) ln n -> kappa, requires c > ln 2 - kappa;
//   extreme: theta = 1 - 1/n with k = n ln n + c n, requires c > 0.
// Throws validity_error outside the stated regions.
RegimeLimits regime_prediction(Regime regime, const RegimeParams& params);

}  // namespace riffle
