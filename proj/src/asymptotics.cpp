#include "riffle/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace riffle {

double theta_power_sum(double theta, int j) {
  if (j < 1) throw std::invalid_argument("theta_power_sum: needs j >= 1");
  if (theta < 0.0 || theta > 1.0) {
    throw std::invalid_argument("theta_power_sum: theta outside [0,1]");
  }
  return std::pow(theta, j) + std::pow(1.0 - theta, j);
}

namespace {

// Shared evaluator for sum_{j>=2} n^j theta_j^k / j^s with s in {0,1}.
// Terms are log-convex in j, so once the ratio n (theta_{j+1}/theta_j)^k
// reaches 1 the series grows forever; the limiting ratio is
// r = n * max(theta, 1-theta)^k, which certifies the truncated tail.
SeriesValue tail_series(int n, double theta, double k, double tol, bool over_j) {
  if (n < 2) throw std::invalid_argument("series: needs n >= 2");
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("series: theta must lie strictly inside (0,1)");
  }
  const double theta_max = std::max(theta, 1.0 - theta);
  const double limit_ratio = static_cast<double>(n) * std::pow(theta_max, k);
  if (limit_ratio >= 1.0) {
    throw divergence_error(
        "series sum_j n^j theta_j^k diverges: n * max(theta,1-theta)^k = " +
        std::to_string(limit_ratio) + " >= 1 (k too small for n = " + std::to_string(n) +
        ")");
  }
  SeriesValue out;
  double prev_term = 0.0;
  int grew = 0;
  for (int j = 2;; ++j) {
    const double tj = std::pow(theta, j) + std::pow(1.0 - theta, j);
    double term = std::exp(j * std::log(static_cast<double>(n)) + k * std::log(tj));
    if (over_j) term /= j;
    out.value += term;
    if (j > 2) {
      if (term > prev_term) {
        if (++grew >= 3) {
          throw divergence_error("series sum_j n^j theta_j^k: terms grew for 3 consecutive j");
        }
      } else {
        grew = 0;
      }
    }
    if (term < tol * out.value && term <= prev_term) {
      out.truncated_at = j + 1;
      out.tail_bound = term * limit_ratio / (1.0 - limit_ratio);
      break;
    }
    prev_term = term;
    if (j > 10000) {
      throw divergence_error("series sum_j n^j theta_j^k failed to truncate by j = 10000");
    }
  }
  return out;
}

}  // namespace

SeriesValue big_M(int n, double theta, double k, double tol) {
  return tail_series(n, theta, k, tol, /*over_j=*/false);
}

AsymptoticEstimate ell_approx(int n, double theta, double k, double tol) {
  const SeriesValue m = big_M(n, theta, k, tol);
  const SeriesValue s = tail_series(n, theta, k, tol, /*over_j=*/true);
  AsymptoticEstimate est;
  est.n = n;
  est.theta = theta;
  est.k = k;
  est.big_m = m.value;
  est.ell = std::exp(s.value);
  est.validity_threshold = std::sqrt(static_cast<double>(n)) / (10.0 * std::log(n));
  est.valid = m.value <= est.validity_threshold;
  est.truncated_at = s.truncated_at;
  est.tail_bound = s.tail_bound;
  return est;
}

int cutoff_k(int n, double theta, double c) {
  if (n < 2) throw std::invalid_argument("cutoff_k: needs n >= 2");
  if (!(theta > 0.0 && theta < 1.0)) {
    throw validity_error("cutoff_k requires 0 < theta < 1 (theta_2 = 1 makes the window infinite)");
  }
  const double theta2 = theta * theta + (1.0 - theta) * (1.0 - theta);
  return static_cast<int>(
      std::floor((2.0 * std::log(n) - std::log(2.0) + c) / (-std::log(theta2))));
}

RegimeLimits regime_prediction(Regime regime, const RegimeParams& params) {
  const double c = params.c;
  RegimeLimits out;
  switch (regime) {
    case Regime::fixed: {
      out.ell = std::exp(std::exp(-c));
      out.linf = out.ell - 1.0;
      out.sep = 1.0 - std::exp(-std::exp(-c));
      return out;
    }
    case Regime::kappa: {
      const double kappa = params.kappa;
      if (!(c > std::log(2.0) - kappa)) {
        throw validity_error("kappa regime requires c > log 2 - kappa (c = " +
                             std::to_string(c) + ", kappa = " + std::to_string(kappa) + ")");
      }
      // sum_{j>=3} q^j / j with q = exp((-kappa + ln 2 - c)/2) < 1.
      const double q = std::exp(0.5 * (-kappa + std::log(2.0) - c));
      const double series = -std::log1p(-q) - q - q * q / 2.0;
      out.ell = std::exp(std::exp(-c) + series);
      return out;
    }
    case Regime::extreme: {
      if (!(c > 0.0)) {
        throw validity_error("extreme regime requires c > 0 (c = " + std::to_string(c) + ")");
      }
      const double x = std::exp(-c);
      out.ell = std::exp(-x) / (1.0 - x);
      return out;
    }
  }
  throw std::logic_error("regime_prediction: unknown regime");
}

}  // namespace riffle
