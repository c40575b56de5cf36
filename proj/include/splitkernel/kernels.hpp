#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splitkernel/spaces.hpp"

namespace splitkernel {

/// phi(y) = kappa * y^m, a C^1 bijection of (0, inf).
class PhiMap {
 public:
  PhiMap(double kappa = 1.0, double m = 1.0);

  double kappa() const noexcept { return kappa_; }
  double m() const noexcept { return m_; }
  bool increasing() const noexcept { return m_ > 0.0; }

  double operator()(double y) const;
  double inverse(double t) const;

  /// Composition w(phi(y)) as a weight in y. Exact for pure powers; otherwise
  /// only the exponents at 0 and inf are meaningful (see compose_exponents).
  PowerLogWeight compose(const PowerLogWeight& w) const;

  friend bool operator==(const PhiMap&, const PhiMap&) = default;

 private:
  double kappa_;
  double m_;
};

/// Local exponents (at y -> 0, at y -> inf) of w(phi(y)).
struct ExponentPair {
  double atOrigin = 0.0;
  double atInfinity = 0.0;
};
ExponentPair compose_exponents(const PhiMap& phi, const PowerLogWeight& w);

/// A missing envelope factor is identically zero.
using Envelope = std::optional<PowerLogWeight>;

struct SplittingKernelSpec {
  Envelope s1;
  Envelope s2;
  Envelope w1;
  Envelope w2;
  PhiMap phi;
  double C1 = 1.0;
  double C2 = 1.0;
  bool lower1 = false;
  bool lower2 = false;
  std::optional<double> lowerC1;
  std::optional<double> lowerC2;

  bool region_one_zero() const noexcept { return !s1 || !w1; }
  bool region_two_zero() const noexcept { return !s2 || !w2; }
  /// Throws ParamOutOfRange when a lower flag sits on a zero envelope.
  void validate() const;
};

struct KernelFunction {
  std::string name;
  std::map<std::string, double> params;
  std::function<double(double, double)> eval;
  /// Points in x where K(., y) changes formula or loses smoothness.
  std::function<std::vector<double>(double)> breakpoints;
  /// Sign-changing kernels; the probe restricts itself to region one.
  bool oscillatory = false;
};

struct CatalogEntry {
  SplittingKernelSpec spec;
  KernelFunction kernel;
};

struct KernelArg {
  std::string name;
  std::map<std::string, double> params;
};

/// "name" or "name:key=value,key=value".
KernelArg parse_kernel_arg(std::string_view text);
std::string format_kernel_arg(const KernelArg& arg);

/// Names: hardy, bellman, riemann-liouville (alpha), sine, struve (alpha),
/// stieltjes (lambda), laplace (n). Missing parameters take defaults
/// alpha = 1 (struve), alpha = 0.5 (riemann-liouville), lambda = 1, n = 1.
CatalogEntry catalog(const std::string& name, const std::map<std::string, double>& params = {});
CatalogEntry catalog(const KernelArg& arg);

std::vector<std::string> catalog_names();

/// C1 s1(x) w1(y) when x <= phi(y), otherwise C2 s2(x) w2(y).
double upper_envelope(const SplittingKernelSpec& spec, double x, double y);

/// s_j(x) w_j(y) without the constant; zero when the region is empty.
double region_envelope(const SplittingKernelSpec& spec, int region, double x, double y);

struct EstimateReport {
  int samples = 0;
  int regionOneSamples = 0;
  int regionTwoSamples = 0;
  double maxUpperRatio = 0.0;
  /// min K / upper_envelope over samples with a positive envelope.
  double minTwoSidedRatio = 0.0;
  std::optional<double> minLowerRatio1;
  std::optional<double> minLowerRatio2;
};

/// Samples (x, y) log-uniformly on [1e-3, 1e3]^2 and checks the upper
/// envelope, plus the lower envelope on flagged regions.
/// Throws EstimateViolated with the first offending point.
EstimateReport validate_estimate(const SplittingKernelSpec& spec, const KernelFunction& K,
                                 int samples, std::uint64_t seed = 0x5eedULL);

}  // namespace splitkernel
