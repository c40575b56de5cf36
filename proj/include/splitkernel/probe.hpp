#pragma once

#include <functional>
#include <string>
#include <vector>

#include "splitkernel/hardy.hpp"
#include "splitkernel/kernels.hpp"
#include "splitkernel/spaces.hpp"

namespace splitkernel {

/// A function on (0, inf) supported in [lo, hi] (lo may be 0, hi may be inf).
struct ProbeFunction {
  std::function<double(double)> eval;
  double lo = 0.0;
  double hi = kInf;
  /// Interior points where eval is not smooth.
  std::vector<double> breakpoints;
};

/// c * x^a on (lo, hi), zero elsewhere.
ProbeFunction power_window(double c, double a, double lo, double hi);

enum class Region { One, Two };

struct ExtremalMember {
  ProbeFunction f;
  /// ||f||_{L_p^v}, in closed form.
  double norm = 0.0;
};

/// Member r of the extremal family for the given region:
///   1 < p < inf: s^(p'-1) v^(-p') on (0, r) or (r, inf),
///   p = inf:     1/v on the same set,
///   p = 1:       h/v with h the normalized indicator of a short interval at
///                the L_inf maximizer of s/v.
/// Throws SideConditionViolated when ||s/v||_{L_p'} is infinite on that set.
ExtremalMember extremal_member(const InequalityInstance& inst, Region region, double r);

struct TransformOptions {
  double relTol = 1e-9;
  bool detectDivergence = true;
  std::size_t maxPanels = 40000;
};

/// Tf(y) = int f(x) K(x, y) dx, split at the kernel's breakpoints.
double apply_transform(const KernelFunction& K, const ProbeFunction& f, double y,
                       const TransformOptions& options = {});

struct NormOptions {
  double outerRelTol = 1e-6;
  double innerRelTol = 1e-9;
  /// Panel budget of each inner integral. Far out in y, oscillatory kernels
  /// would otherwise be resolved to full accuracy where they contribute nothing.
  std::size_t innerMaxPanels = 1500;
  /// Off for slowly decaying tails that still converge (sharp-constant probe).
  bool detectDivergence = true;
};

/// ||Tf||_{L_q^u}; anchor is the natural y-scale of the problem.
double transform_norm(const KernelFunction& K, const ProbeFunction& f, const PowerLogWeight& u,
                      const Exponent& q, double anchor, const NormOptions& options = {});

enum class ProbeHint { BoundedConsistent, GrowthDetected, Inconclusive };
std::string to_string(ProbeHint h);

struct ProbeReport {
  std::vector<double> rGrid;
  std::vector<double> ratios;
  double maxRatio = 0.0;
  double leftSlope = 0.0;
  double rightSlope = 0.0;
  /// max(-leftSlope, rightSlope); inf when some ratio is infinite.
  double growthSlope = 0.0;
  ProbeHint verdictHint = ProbeHint::Inconclusive;
};

inline constexpr double kGrowthSlope = 0.05;

/// Operator ratios ||T f_r||_{L_q^u} / ||f_r||_{L_p^v} over rGrid.
/// Oscillatory kernels only admit region one.
ProbeReport extremal_ratio_scan(const InequalityInstance& inst, Region region,
                                const std::vector<double>& rGrid,
                                const NormOptions& options = {});

/// Builds the report fields from already computed ratios.
ProbeReport summarize_ratios(std::vector<double> rGrid, std::vector<double> ratios);

struct SharpProbeResult {
  double bestRatio = 0.0;
  double bestEpsilon = 0.0;
  /// "(0,1)" or "(1,inf)"
  std::string bestWindow;
  std::vector<double> epsilons;
  std::vector<double> ratiosLow;
  std::vector<double> ratiosHigh;
};

/// Best ratio over x^(-1/2+e) on (0,1) and x^(-1/2-e) on (1,inf),
/// e in {0.1, 0.03, 0.01}, for hardy (u = 1/x), stieltjes (lambda = 1) and
/// laplace with p = q = 2.
SharpProbeResult sharp_constant_probe(const std::string& kernelName, const Exponent& p,
                                      const Exponent& q);

struct EnvelopeCheck {
  double transform = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// |Tf(y)| <= C1 w1(y) int_{(0,phi(y))} s1 |f| + C2 w2(y) int_{(phi(y),inf)} s2 |f|.
EnvelopeCheck pointwise_envelope_check(const CatalogEntry& entry, const ProbeFunction& f, double y,
                                       double relSlack = 1e-6);

}  // namespace splitkernel
