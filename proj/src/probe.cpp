#include "splitkernel/probe.hpp"

#include <algorithm>
#include <cmath>

#include "splitkernel/errors.hpp"

namespace splitkernel {

namespace {

// Integral of fn over (lo, hi), split at the interior cut points.
double integrate_pieces(const std::function<double(double)>& fn, double lo, double hi,
                        std::vector<double> cuts, const QuadOptions& options) {
  std::vector<double> points{lo};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts) {
    if (c > lo && c < hi && std::isfinite(c) && c > points.back()) points.push_back(c);
  }
  points.push_back(hi);
  CompensatedSum sum;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    QuadOptions piece = options;
    if (points[i] > 0.0) {
      piece.anchor = points[i];
    } else {
      piece.anchor = points[i + 1];
    }
    sum += integrate(fn, Interval(points[i], points[i + 1]), piece).value;
  }
  return sum.value();
}

ProbeFunction weight_window(const PowerLogWeight& w, double lo, double hi) {
  ProbeFunction f;
  f.lo = lo;
  f.hi = hi;
  f.eval = [w, lo, hi](double x) { return (x > lo && x < hi) ? w(x) : 0.0; };
  return f;
}

}  // namespace

ProbeFunction power_window(double c, double a, double lo, double hi) {
  if (!(hi > lo) || lo < 0.0) throw ParamOutOfRange("power_window needs 0 <= lo < hi");
  return weight_window(PowerLogWeight(c, a, 0.0), lo, hi);
}

ExtremalMember extremal_member(const InequalityInstance& inst, Region region, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw ParamOutOfRange("extremal family needs r > 0");
  const SplittingKernelSpec& spec = inst.spec;
  const bool one = region == Region::One;
  if (one ? spec.region_one_zero() : spec.region_two_zero()) {
    throw ParamOutOfRange("the region's envelope is identically zero");
  }
  const PowerLogWeight& s = one ? *spec.s1 : *spec.s2;
  const PowerLogWeight dual = s * inst.v.inverse();
  const Exponent pPrime = inst.p.conjugate();
  const Endpoint end = one ? Endpoint::Origin : Endpoint::Infinity;
  if (powerlog_norm_class(dual, pPrime, end).verdict == Finiteness::Infinite) {
    throw SideConditionViolated(std::string("s") + (one ? "1" : "2") +
                                "/v is not in L_p' near the fixed endpoint");
  }
  const double lo = one ? 0.0 : r;
  const double hi = one ? r : kInf;

  ExtremalMember member;
  if (inst.p.is_infinite()) {
    member.f = weight_window(inst.v.inverse(), lo, hi);
    member.norm = 1.0;
    return member;
  }
  if (inst.p.value() > 1.0) {
    const double pp = pPrime.value();
    const PowerLogWeight w = s.pow(pp - 1.0) * inst.v.pow(-pp);
    member.f = weight_window(w, lo, hi);
    member.norm = std::pow(powerlog_norm(dual, pPrime, Interval(lo, hi)), pp / inst.p.value());
    return member;
  }

  // p = 1: a short window at the maximizer of s/v on the set.
  const double gridLo = one ? r * 1e-8 : r;
  const double gridHi = one ? r : r * 1e8;
  const std::vector<double> grid = log_grid(gridLo, gridHi, 64);
  double best = -1.0;
  double argmax = grid.front();
  for (double x : grid) {
    const double value = dual(x);
    if (value > best) {
      best = value;
      argmax = x;
    }
  }
  constexpr double kWidth = 0.01;
  const double wLo = std::max(lo, argmax * (1.0 - kWidth));
  const double wHi = std::min(hi, argmax * (1.0 + kWidth));
  const double height = 1.0 / (wHi - wLo);
  const PowerLogWeight vInv = inst.v.inverse();
  member.f.lo = wLo;
  member.f.hi = wHi;
  member.f.eval = [vInv, wLo, wHi, height](double x) {
    return (x > wLo && x < wHi) ? height * vInv(x) : 0.0;
  };
  member.norm = 1.0;
  return member;
}

double apply_transform(const KernelFunction& K, const ProbeFunction& f, double y,
                       const TransformOptions& options) {
  std::vector<double> cuts = f.breakpoints;
  if (K.breakpoints) {
    const std::vector<double> kc = K.breakpoints(y);
    cuts.insert(cuts.end(), kc.begin(), kc.end());
  }
  QuadOptions quad;
  quad.relTol = options.relTol;
  quad.detectDivergence = options.detectDivergence;
  quad.throwOnNonConvergence = false;
  quad.maxPanels = options.maxPanels;

  // Both factors are normalized at a reference point so that their product
  // does not overflow for extreme y.
  double x0 = std::sqrt(std::max(f.lo, 1e-300) * std::min(f.hi, 1e300));
  if (K.breakpoints) {
    const std::vector<double> kc = K.breakpoints(y);
    if (!kc.empty() && std::isfinite(kc.front()) && kc.front() > 0.0) x0 = kc.front();
  }
  x0 = std::clamp(x0, f.lo, f.hi);
  if (!(x0 > 0.0) || !std::isfinite(x0)) x0 = 1.0;
  double sf = std::abs(f.eval(x0));
  double sk = std::abs(K.eval(x0, y));
  if (!(sf > 0.0) || !std::isfinite(sf)) sf = 1.0;
  if (!(sk > 0.0) || !std::isfinite(sk)) sk = 1.0;
  const double scaled = integrate_pieces(
      [&](double x) { return (f.eval(x) / sf) * (K.eval(x, y) / sk) / x0; }, f.lo, f.hi, cuts,
      quad);
  if (scaled == 0.0) return 0.0;
  return scaled * std::exp(std::log(sf) + std::log(sk) + std::log(x0));
}

double transform_norm(const KernelFunction& K, const ProbeFunction& f, const PowerLogWeight& u,
                      const Exponent& q, double anchor, const NormOptions& options) {
  TransformOptions inner;
  inner.relTol = options.innerRelTol;
  inner.detectDivergence = options.detectDivergence;
  inner.maxPanels = options.innerMaxPanels;
  auto weighted = [&](double y) {
    double t = 0.0;
    try {
      t = apply_transform(K, f, y, inner);
    } catch (const DivergentIntegral&) {
      return kInf;
    }
    return u(y) * std::abs(t);
  };
  if (q.is_infinite()) return sampled_sup(weighted, Interval(0.0, kInf));

  const double qv = q.value();
  QuadOptions outer;
  outer.relTol = options.outerRelTol;
  outer.detectDivergence = options.detectDivergence;
  outer.throwOnNonConvergence = false;
  try {
    const double total = integrate_pieces(
        [&](double y) {
          const double g = weighted(y);
          return g == 0.0 ? 0.0 : std::pow(g, qv);
        },
        0.0, kInf, {anchor}, outer);
    return std::pow(total, 1.0 / qv);
  } catch (const DivergentIntegral&) {
    return kInf;
  }
}

std::string to_string(ProbeHint h) {
  switch (h) {
    case ProbeHint::BoundedConsistent:
      return "bounded-consistent";
    case ProbeHint::GrowthDetected:
      return "growth-detected";
    case ProbeHint::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

ProbeReport summarize_ratios(std::vector<double> rGrid, std::vector<double> ratios) {
  ProbeReport report;
  const SupScan scan = sup_scan_values(std::move(rGrid), std::move(ratios));
  report.rGrid = scan.grid;
  report.ratios = scan.values;
  report.maxRatio = scan.supEstimate;
  report.leftSlope = scan.leftSlope;
  report.rightSlope = scan.rightSlope;
  if (report.maxRatio == kInf) {
    report.growthSlope = kInf;
  } else {
    report.growthSlope = std::max(-scan.leftSlope, scan.rightSlope);
  }
  if (report.growthSlope > kGrowthSlope) {
    report.verdictHint = ProbeHint::GrowthDetected;
  } else if (report.growthSlope <= kFlatSlope) {
    report.verdictHint = ProbeHint::BoundedConsistent;
  } else {
    report.verdictHint = ProbeHint::Inconclusive;
  }
  return report;
}

ProbeReport extremal_ratio_scan(const InequalityInstance& inst, Region region,
                                const std::vector<double>& rGrid, const NormOptions& options) {
  if (!inst.K) throw ParamOutOfRange("the probe needs a kernel function");
  if (rGrid.empty()) throw ParamOutOfRange("the probe needs a nonempty r grid");
  if (inst.K->oscillatory && region == Region::Two) {
    throw ParamOutOfRange("sign-changing kernels are probed on region one only");
  }
  std::vector<double> ratios;
  ratios.reserve(rGrid.size());
  for (double r : rGrid) {
    const ExtremalMember member = extremal_member(inst, region, r);
    const double anchor = inst.spec.phi.inverse(r);
    const double numerator = transform_norm(*inst.K, member.f, inst.u, inst.q, anchor, options);
    ratios.push_back(member.norm > 0.0 ? numerator / member.norm : kInf);
  }
  return summarize_ratios(rGrid, std::move(ratios));
}

SharpProbeResult sharp_constant_probe(const std::string& kernelName, const Exponent& p,
                                      const Exponent& q) {
  if (!(p == Exponent(2.0)) || !(q == Exponent(2.0))) {
    throw ExponentOutOfScope("the sharp-constant probe is defined for p = q = 2");
  }
  PowerLogWeight u = PowerLogWeight::one();
  CatalogEntry entry;
  if (kernelName == "hardy") {
    entry = catalog("hardy");
    u = PowerLogWeight::power(-1.0);
  } else if (kernelName == "stieltjes") {
    entry = catalog("stieltjes", {{"lambda", 1.0}});
  } else if (kernelName == "laplace") {
    entry = catalog("laplace");
  } else {
    throw UnknownKernel("sharp-constant probe supports hardy, stieltjes and laplace");
  }

  NormOptions options;
  options.outerRelTol = 1e-7;
  options.innerRelTol = 1e-9;
  options.detectDivergence = false;

  SharpProbeResult out;
  out.epsilons = {0.1, 0.03, 0.01};
  for (double eps : out.epsilons) {
    // ||x^(-1/2 +- eps)||_{L_2} on either window is (2 eps)^(-1/2).
    const double fNorm = 1.0 / std::sqrt(2.0 * eps);
    const ProbeFunction low = power_window(1.0, -0.5 + eps, 0.0, 1.0);
    const ProbeFunction high = power_window(1.0, -0.5 - eps, 1.0, kInf);
    const double rLow = transform_norm(entry.kernel, low, u, q, 1.0, options) / fNorm;
    const double rHigh = transform_norm(entry.kernel, high, u, q, 1.0, options) / fNorm;
    out.ratiosLow.push_back(rLow);
    out.ratiosHigh.push_back(rHigh);
    if (rLow > out.bestRatio) {
      out.bestRatio = rLow;
      out.bestEpsilon = eps;
      out.bestWindow = "(0,1)";
    }
    if (rHigh > out.bestRatio) {
      out.bestRatio = rHigh;
      out.bestEpsilon = eps;
      out.bestWindow = "(1,inf)";
    }
  }
  return out;
}

EnvelopeCheck pointwise_envelope_check(const CatalogEntry& entry, const ProbeFunction& f, double y,
                                       double relSlack) {
  const SplittingKernelSpec& spec = entry.spec;
  EnvelopeCheck out;
  TransformOptions options;
  options.relTol = 1e-11;
  out.transform = apply_transform(entry.kernel, f, y, options);

  QuadOptions quad;
  quad.relTol = 1e-11;
  quad.throwOnNonConvergence = false;
  const double split = spec.phi(y);
  double bound = 0.0;
  if (!spec.region_one_zero()) {
    const double hi = std::min(split, f.hi);
    if (hi > f.lo) {
      const PowerLogWeight s1 = *spec.s1;
      const double part = integrate_pieces(
          [&](double x) { return s1(x) * std::abs(f.eval(x)); }, f.lo, hi, f.breakpoints, quad);
      bound += spec.C1 * (*spec.w1)(y)*part;
    }
  }
  if (!spec.region_two_zero()) {
    const double lo = std::max(split, f.lo);
    if (f.hi > lo) {
      const PowerLogWeight s2 = *spec.s2;
      const double part = integrate_pieces(
          [&](double x) { return s2(x) * std::abs(f.eval(x)); }, lo, f.hi, f.breakpoints, quad);
      bound += spec.C2 * (*spec.w2)(y)*part;
    }
  }
  out.bound = bound;
  out.holds = std::abs(out.transform) <= bound * (1.0 + relSlack);
  return out;
}

}  // namespace splitkernel
