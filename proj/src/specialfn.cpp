#include "splitkernel/specialfn.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "splitkernel/errors.hpp"
#include "splitkernel/numerics.hpp"

namespace splitkernel {

StruveOrder::StruveOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > -0.5) || !std::isfinite(alpha)) {
    throw ParamOutOfRange("struve order must satisfy alpha > -1/2, got " + std::to_string(alpha));
  }
}

namespace {

void require_positive(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ParamOutOfRange("struve argument must be positive and finite");
  }
}

constexpr int kMaxSeriesTerms = 200;
constexpr double kSeriesStop = 1e-18;
constexpr double kAsymptoticStop = 1e-17;

}  // namespace

double struve_series(StruveOrder order, double x) {
  require_positive(x);
  if (x > 40.0) throw ParamOutOfRange("struve_series is limited to x <= 40");
  const double alpha = order.alpha();
  const double half = 0.5 * x;
  const double z2 = half * half;
  double term = 1.0 / (std::tgamma(1.5) * std::tgamma(alpha + 1.5));
  CompensatedSum sum;
  sum += term;
  for (int k = 0; k + 1 < kMaxSeriesTerms; ++k) {
    term *= -z2 / ((k + 1.5) * (k + alpha + 1.5));
    sum += term;
    if (std::abs(term) < kSeriesStop * std::abs(sum.value())) break;
  }
  return std::pow(half, alpha + 1.0) * sum.value();
}

double struve_asymptotic(StruveOrder order, double x) {
  require_positive(x);
  const double alpha = order.alpha();
  const double pi = std::numbers::pi;
  const double omega = x - alpha * pi / 2.0 - pi / 4.0;
  const double oscillating = std::sin(omega) / std::sqrt(pi * x / 2.0);
  const double smooth = std::pow(x / 2.0, alpha - 1.0) / (std::tgamma(alpha + 0.5) * std::sqrt(pi));
  return oscillating + smooth;
}

double struve_asymptotic_series(StruveOrder order, double x) {
  require_positive(x);
  const double alpha = order.alpha();
  const double pi = std::numbers::pi;
  const double half = 0.5 * x;

  // H_alpha - Y_alpha ~ (1/pi) sum_k Gamma(k+1/2) (x/2)^(alpha-2k-1) / Gamma(alpha+1/2-k)
  CompensatedSum smooth;
  double term = std::sqrt(pi) / std::tgamma(alpha + 0.5) * std::pow(half, alpha - 1.0);
  smooth += term;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    const double next = term * (k - 0.5) * (alpha + 0.5 - k) / (half * half);
    if (next == 0.0) break;
    if (std::abs(next) > std::abs(term) && k > alpha + 1.0) break;
    smooth += next;
    term = next;
    if (std::abs(term) < kAsymptoticStop * std::abs(smooth.value())) break;
  }

  // Hankel expansion of Y_alpha.
  const double mu = 4.0 * alpha * alpha;
  CompensatedSum pSum;
  CompensatedSum qSum;
  double a = 1.0;
  pSum += 1.0;
  double previous = 1.0;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    a *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
    const double magnitude = std::abs(a);
    if (magnitude == 0.0) break;
    if (magnitude > previous && k > alpha + 1.0) break;
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      pSum += sign * a;
    } else {
      qSum += sign * a;
    }
    previous = magnitude;
    if (magnitude < kAsymptoticStop) break;
  }
  const double omega = x - alpha * pi / 2.0 - pi / 4.0;
  const double y = std::sqrt(2.0 / (pi * x)) *
                   (pSum.value() * std::sin(omega) + qSum.value() * std::cos(omega));
  return y + smooth.value() / pi;
}

double struve(StruveOrder order, double x) {
  require_positive(x);
  if (x <= kStruveCrossover) return struve_series(order, x);
  return struve_asymptotic_series(order, x);
}

}  // namespace splitkernel
