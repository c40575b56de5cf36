#include "splitkernel/hardy.hpp"

#include <algorithm>
#include <cmath>

#include "splitkernel/errors.hpp"

namespace splitkernel {

InequalityInstance make_instance(const CatalogEntry& entry, const PowerLogWeight& u,
                                 const PowerLogWeight& v, const Exponent& p, const Exponent& q) {
  InequalityInstance inst;
  inst.spec = entry.spec;
  inst.K = entry.kernel;
  inst.u = u;
  inst.v = v;
  inst.p = p;
  inst.q = q;
  return inst;
}

Interval phi_preimage(const PhiMap& phi, const Interval& iv) {
  if (iv.touches_origin() && !iv.unbounded()) {
    const double rho = phi.inverse(iv.hi());
    return phi.increasing() ? Interval(0.0, rho) : Interval(rho, kInf);
  }
  if (iv.unbounded() && !iv.touches_origin()) {
    const double rho = phi.inverse(iv.lo());
    return phi.increasing() ? Interval(rho, kInf) : Interval(0.0, rho);
  }
  if (iv.touches_origin() && iv.unbounded()) return iv;
  const double a = phi.inverse(iv.lo());
  const double b = phi.inverse(iv.hi());
  return Interval(std::min(a, b), std::max(a, b));
}

Verdict classify_slopes(double leftSlope, double rightSlope) {
  const double growth = std::max(-leftSlope, rightSlope);
  if (growth > 2.0 * kFlatSlope) return Verdict::Infinite;
  if (growth > kFlatSlope) return Verdict::Inconclusive;
  return Verdict::Finite;
}

namespace {

// ||W||_{L_s} on (0, rho) when lower, on (rho, inf) otherwise.
struct Factor {
  PowerLogWeight weight;
  Exponent s;
  bool lower;

  bool infinite_for_all_r() const {
    const Endpoint end = lower ? Endpoint::Origin : Endpoint::Infinity;
    return powerlog_norm_class(weight, s, end).verdict == Finiteness::Infinite;
  }
  double at(double rho, double relTol) const {
    const Interval iv = lower ? Interval(0.0, rho) : Interval(rho, kInf);
    return powerlog_norm(weight, s, iv, relTol);
  }
  double power() const { return weight.a() + s.reciprocal(); }
};

ConditionVerdict evaluate_condition(const InequalityInstance& inst, int region,
                                    const ScanOptions& options) {
  const SplittingKernelSpec& spec = inst.spec;
  ConditionVerdict out;
  const bool zero = region == 1 ? spec.region_one_zero() : spec.region_two_zero();
  if (zero) {
    out.verdict = Verdict::Finite;
    out.vacuous = true;
    out.reason = "envelope identically zero";
    return out;
  }
  const PowerLogWeight& w = region == 1 ? *spec.w1 : *spec.w2;
  const PowerLogWeight& s = region == 1 ? *spec.s1 : *spec.s2;
  const Exponent pPrime = inst.p.conjugate();
  const bool increasing = spec.phi.increasing();

  // Region one: weight factor over phi^{-1}(r, inf), dual factor over (0, r).
  // Region two: weight factor over phi^{-1}(0, r), dual factor over (r, inf).
  const Factor weightFactor{w * inst.u, inst.q, region == 1 ? !increasing : increasing};
  const Factor dualFactor{s * inst.v.inverse(), pPrime, region == 1};

  out.weightFactorInfinite = weightFactor.infinite_for_all_r();
  out.dualFactorInfinite = dualFactor.infinite_for_all_r();
  if (out.weightFactorInfinite || out.dualFactorInfinite) {
    out.verdict = Verdict::Infinite;
    out.supEstimate = kInf;
    out.argmaxR = options.gridLo;
    out.reason = out.weightFactorInfinite ? "weight factor diverges at its fixed endpoint"
                                          : "dual factor diverges at its fixed endpoint";
    return out;
  }

  if (weightFactor.weight.is_pure_power() && dualFactor.weight.is_pure_power()) {
    out.symbolicExponent = weightFactor.power() / spec.phi.m() + dualFactor.power();
  }

  const std::vector<double> grid = log_grid(options.gridLo, options.gridHi, options.perDecade);
  const PhiMap phi = spec.phi;
  const SupScan scan = sup_scan(
      [&](double r) {
        const double a = weightFactor.at(phi.inverse(r), options.relTol);
        const double b = dualFactor.at(r, options.relTol);
        return a * b;
      },
      grid);
  out.grid = scan.grid;
  out.values = scan.values;
  out.leftSlope = scan.leftSlope;
  out.rightSlope = scan.rightSlope;
  out.argmaxR = scan.argmax;
  out.supEstimate = scan.supEstimate;

  if (out.symbolicExponent) {
    if (std::abs(*out.symbolicExponent) <= 1e-12) {
      out.verdict = Verdict::Finite;
      out.reason = "pure powers with r-exponent 0";
    } else {
      out.verdict = Verdict::Infinite;
      out.supEstimate = kInf;
      out.reason = "pure powers with nonzero r-exponent";
    }
    return out;
  }
  if (scan.supEstimate == kInf) {
    out.verdict = Verdict::Infinite;
    out.reason = "infinite value on the grid";
    return out;
  }
  out.verdict = classify_slopes(scan.leftSlope, scan.rightSlope);
  switch (out.verdict) {
    case Verdict::Finite:
      out.reason = "flat at both ends of the grid";
      break;
    case Verdict::Infinite:
      out.supEstimate = kInf;
      out.reason = "outward growth beyond the slope threshold";
      break;
    case Verdict::Inconclusive:
      out.reason = "outward slope inside the inconclusive band";
      break;
  }
  return out;
}

}  // namespace

ConditionVerdict condition_one(const InequalityInstance& inst, const ScanOptions& options) {
  return evaluate_condition(inst, 1, options);
}

ConditionVerdict condition_two(const InequalityInstance& inst, const ScanOptions& options) {
  return evaluate_condition(inst, 2, options);
}

BoundednessResult check_boundedness(const InequalityInstance& inst, const ScanOptions& options) {
  if (inst.p.value() > inst.q.value()) {
    throw ExponentOrderViolation("boundedness criteria need p <= q, got p = " +
                                 format_exponent(inst.p) + ", q = " + format_exponent(inst.q));
  }
  BoundednessResult out;
  out.one = condition_one(inst, options);
  out.two = condition_two(inst, options);

  const SplittingKernelSpec& spec = inst.spec;
  const Exponent pPrime = inst.p.conjugate();
  const PowerLogWeight vInv = inst.v.inverse();
  if (!spec.region_one_zero()) {
    out.sideConditionOne =
        powerlog_norm_class(*spec.s1 * vInv, pPrime, Endpoint::Origin).verdict ==
        Finiteness::Finite;
  }
  if (!spec.region_two_zero()) {
    out.sideConditionTwo =
        powerlog_norm_class(*spec.s2 * vInv, pPrime, Endpoint::Infinity).verdict ==
        Finiteness::Finite;
  }
  out.characterization = spec.lower1 && spec.lower2 && !inst.p.is_infinite() &&
                         inst.p.value() > 1.0 && out.sideConditionOne && out.sideConditionTwo;

  // A certified failure through a lower estimate outranks an inconclusive scan.
  for (int region = 1; region <= 2; ++region) {
    const ConditionVerdict& c = region == 1 ? out.one : out.two;
    const bool lower = region == 1 ? spec.lower1 : spec.lower2;
    const bool side = region == 1 ? out.sideConditionOne : out.sideConditionTwo;
    if (c.verdict == Verdict::Infinite && lower) {
      out.verdict = Boundedness::Unbounded;
      out.decidingRegion = region;
      out.basis = side ? "necessity: condition " + std::to_string(region) +
                             " infinite on a region with a lower estimate"
                       : "dual factor not in L_p' near the fixed endpoint with a lower estimate "
                         "on region " +
                             std::to_string(region) + ": Tf is infinite for some f in L_p^v";
      return out;
    }
  }
  if (out.one.verdict == Verdict::Inconclusive || out.two.verdict == Verdict::Inconclusive) {
    out.verdict = Boundedness::Inconclusive;
    out.basis = "a condition scan fell inside the inconclusive slope band";
    return out;
  }
  if (out.one.verdict == Verdict::Finite && out.two.verdict == Verdict::Finite) {
    out.verdict = Boundedness::Bounded;
    out.basis = "sufficiency: both conditions finite";
    return out;
  }
  out.verdict = Boundedness::SufficientOnlyUnknown;
  out.basis = "a condition is infinite on a region without a lower estimate";
  return out;
}

AnyResult check_boundedness_any(const std::vector<InequalityInstance>& instances,
                                const ScanOptions& options) {
  if (instances.empty()) throw ParamOutOfRange("check_boundedness_any needs an instance");
  std::vector<BoundednessResult> results;
  results.reserve(instances.size());
  for (const auto& inst : instances) {
    results.push_back(check_boundedness(inst, options));
    if (results.back().verdict == Boundedness::Bounded) {
      return {results.back(), results.size() - 1};
    }
  }
  for (Boundedness wanted : {Boundedness::Unbounded, Boundedness::Inconclusive}) {
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (results[i].verdict == wanted) return {results[i], i};
    }
  }
  return {results.front(), 0};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Finite:
      return "finite";
    case Verdict::Infinite:
      return "infinite";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(Boundedness b) {
  switch (b) {
    case Boundedness::Bounded:
      return "bounded";
    case Boundedness::Unbounded:
      return "unbounded";
    case Boundedness::SufficientOnlyUnknown:
      return "sufficient-only-unknown";
    case Boundedness::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace splitkernel
