#pragma once

#include <optional>
#include <string>
#include <vector>

#include "splitkernel/kernels.hpp"
#include "splitkernel/numerics.hpp"
#include "splitkernel/spaces.hpp"

namespace splitkernel {

enum class Verdict { Finite, Infinite, Inconclusive };

struct ConditionVerdict {
  Verdict verdict = Verdict::Finite;
  double supEstimate = 0.0;
  double argmaxR = 1.0;
  double leftSlope = 0.0;
  double rightSlope = 0.0;
  /// Exact power of r in F(r) when both factors are pure powers.
  std::optional<double> symbolicExponent;
  /// The region's envelope is identically zero.
  bool vacuous = false;
  /// The weight factor ||w_j u|| is infinite for every r.
  bool weightFactorInfinite = false;
  /// The dual factor ||s_j / v||_{L_p'} is infinite for every r.
  bool dualFactorInfinite = false;
  std::vector<double> grid;
  std::vector<double> values;
  std::string reason;
};

struct InequalityInstance {
  SplittingKernelSpec spec;
  std::optional<KernelFunction> K;
  PowerLogWeight u;
  PowerLogWeight v;
  Exponent p = 2.0;
  Exponent q = 2.0;
};

/// Builds an instance from a catalog entry.
InequalityInstance make_instance(const CatalogEntry& entry, const PowerLogWeight& u,
                                 const PowerLogWeight& v, const Exponent& p, const Exponent& q);

struct ScanOptions {
  double gridLo = kDefaultGridLo;
  double gridHi = kDefaultGridHi;
  int perDecade = kDefaultPerDecade;
  double relTol = 1e-8;
};

/// phi^{-1}(iv) for iv = (0, r) or (r, inf).
Interval phi_preimage(const PhiMap& phi, const Interval& iv);

/// sup_r ||w1 u||_{L_q(phi^{-1}(r, inf))} ||s1 / v||_{L_p'(0, r)}
ConditionVerdict condition_one(const InequalityInstance& inst, const ScanOptions& options = {});
/// sup_r ||w2 u||_{L_q(phi^{-1}(0, r))} ||s2 / v||_{L_p'(r, inf)}
ConditionVerdict condition_two(const InequalityInstance& inst, const ScanOptions& options = {});

/// Slope policy shared by the condition scans: outward growth above
/// 2 * kFlatSlope is infinite, between kFlatSlope and 2 * kFlatSlope inconclusive.
Verdict classify_slopes(double leftSlope, double rightSlope);

enum class Boundedness { Bounded, Unbounded, SufficientOnlyUnknown, Inconclusive };

struct BoundednessResult {
  Boundedness verdict = Boundedness::Inconclusive;
  ConditionVerdict one;
  ConditionVerdict two;
  /// ||s1/v||_{L_p'(0,r)} < inf and ||s2/v||_{L_p'(r,inf)} < inf for every r.
  bool sideConditionOne = true;
  bool sideConditionTwo = true;
  /// Both lower flags, p > 1 and both side conditions: the two conditions
  /// are necessary and sufficient.
  bool characterization = false;
  /// Region whose condition decided an unbounded verdict (0 when none).
  int decidingRegion = 0;
  std::string basis;
};

/// Throws ExponentOrderViolation when p > q.
BoundednessResult check_boundedness(const InequalityInstance& inst,
                                    const ScanOptions& options = {});

struct AnyResult {
  BoundednessResult result;
  std::size_t index = 0;
};

/// Combines several envelopes of the same operator (e.g. Laplace with
/// n = 1..10): any bounded wins, then any unbounded, then inconclusive.
AnyResult check_boundedness_any(const std::vector<InequalityInstance>& instances,
                                const ScanOptions& options = {});

std::string to_string(Verdict v);
std::string to_string(Boundedness b);

}  // namespace splitkernel
