#include "splitkernel/gluing.hpp"

#include <algorithm>
#include <cmath>

#include "splitkernel/errors.hpp"
#include "splitkernel/specialfn.hpp"

namespace splitkernel {

namespace {

constexpr double kExactTol = 1e-12;

bool same(double a, double b) { return std::abs(a - b) <= kExactTol; }

bool matches(const ExponentPair& lhs, const PowerLogWeight& rhs) {
  return same(lhs.atOrigin, rhs.origin_exponent()) &&
         same(lhs.atInfinity, rhs.infinity_exponent());
}

// ||W||_{L_s} on (0, rho) or (rho, inf).
double piece(const PowerLogWeight& W, const Exponent& s, bool lower, double rho) {
  const Interval iv = lower ? Interval(0.0, rho) : Interval(rho, kInf);
  return powerlog_norm(W, s, iv, 1e-10);
}

bool piece_infinite(const PowerLogWeight& W, const Exponent& s, bool lower) {
  return powerlog_norm_class(W, s, lower ? Endpoint::Origin : Endpoint::Infinity).verdict ==
         Finiteness::Infinite;
}

// (a^s + b^s)^(1/s) without overflow for moderate arguments.
double lp_sum(double a, double b, double s) {
  if (a == kInf || b == kInf) return kInf;
  const double big = std::max(a, b);
  if (big == 0.0) return 0.0;
  return big * std::pow(std::pow(a / big, s) + std::pow(b / big, s), 1.0 / s);
}

struct SplitShape {
  // f-side factor: weight, lower piece?; g-side factor: weight, lower piece?
  PowerLogWeight fWeight;
  bool fLower;
  PowerLogWeight gWeight;
  bool gLower;
};

SplitShape split_shape(const GluingInstance& inst, int which) {
  const bool increasing = inst.direction() == Direction::Increasing;
  if (which == 1) {
    return {inst.w1 * inst.f, !increasing, inst.s1 * inst.g, true};
  }
  return {inst.w2 * inst.f, increasing, inst.s2 * inst.g, false};
}

double split_value(const GluingInstance& inst, int which, double t) {
  const SplitShape shape = split_shape(inst, which);
  const double a = piece(shape.fWeight, inst.q, shape.fLower, inst.psi(t));
  const double b = piece(shape.gWeight, inst.p, shape.gLower, t);
  return a * b;
}

FunctionalScan scan_functional(const std::function<double(double)>& F,
                               const std::vector<double>& grid, bool symbolicInfinite,
                               std::optional<double> symbolicExponent) {
  FunctionalScan out;
  if (symbolicInfinite) {
    out.verdict = Verdict::Infinite;
    out.supEstimate = kInf;
    out.argmax = grid.front();
    out.values.assign(grid.size(), kInf);
    return out;
  }
  const SupScan scan = sup_scan(F, grid);
  out.values = scan.values;
  out.leftSlope = scan.leftSlope;
  out.rightSlope = scan.rightSlope;
  out.argmax = scan.argmax;
  out.supEstimate = scan.supEstimate;
  if (symbolicExponent) {
    out.verdict = std::abs(*symbolicExponent) <= kExactTol ? Verdict::Finite : Verdict::Infinite;
  } else if (scan.supEstimate == kInf) {
    out.verdict = Verdict::Infinite;
  } else {
    out.verdict = classify_slopes(scan.leftSlope, scan.rightSlope);
  }
  if (out.verdict == Verdict::Infinite) out.supEstimate = kInf;
  return out;
}

}  // namespace

std::string HypothesisReport::failure() const {
  if (!finiteExponents) return "gluing needs finite exponents p and q";
  if (!ratioNonincreasing) return "s2/s1 is not nonincreasing";
  if (!firstMatch) return "first weight-matching hypothesis fails";
  if (!secondMatch) return "second weight-matching hypothesis fails";
  return "";
}

HypothesisReport check_hypotheses(const GluingInstance& inst) {
  HypothesisReport report;
  report.finiteExponents = !inst.p.is_infinite() && !inst.q.is_infinite();
  // x^a (1+x)^b is nonincreasing iff a <= 0 and a + b <= 0.
  const PowerLogWeight ratio = inst.s2 * inst.s1.inverse();
  report.ratioNonincreasing =
      ratio.origin_exponent() <= kExactTol && ratio.infinity_exponent() <= kExactTol;
  const ExponentPair w1psi = compose_exponents(inst.psi, inst.w1);
  const ExponentPair w2psi = compose_exponents(inst.psi, inst.w2);
  if (inst.direction() == Direction::Increasing) {
    report.firstMatch = matches(w1psi, inst.s2);
    report.secondMatch = matches(w2psi, inst.s1);
  } else {
    report.firstMatch = matches(w1psi, inst.s1.inverse());
    report.secondMatch = matches(w2psi, inst.s2.inverse());
  }
  return report;
}

double split_one(const GluingInstance& inst, double t) { return split_value(inst, 1, t); }
double split_two(const GluingInstance& inst, double t) { return split_value(inst, 2, t); }

JointFunctional glue(const GluingInstance& inst) {
  const HypothesisReport hyp = check_hypotheses(inst);
  if (!hyp.finiteExponents) throw ExponentOutOfScope(hyp.failure());
  if (!hyp.all()) throw HypothesisViolated(hyp.failure());

  const double p = inst.p.value();
  const double q = inst.q.value();
  JointFunctional out;
  if (inst.direction() == Direction::Increasing) {
    out.description = "increasing psi: cross-weighted joint form";
    out.eval = [inst, p, q](double t) {
      const double x = inst.psi(t);
      const double low = piece(inst.w2 * inst.f, inst.q, true, x);
      const double high = piece(inst.w1 * inst.f, inst.q, false, x);
      const double fPart = lp_sum(inst.w1(x) * low, inst.w2(x) * high, q);
      const double gLow = piece(inst.s1 * inst.g, inst.p, true, t);
      const double gHigh = piece(inst.s2 * inst.g, inst.p, false, t);
      const double gPart = lp_sum(gLow / inst.s1(t), gHigh / inst.s2(t), p);
      return fPart * gPart;
    };
  } else {
    out.description = "decreasing psi: self-weighted joint form";
    out.eval = [inst, p, q](double t) {
      const double x = inst.psi(t);
      const double low = piece(inst.w1 * inst.f, inst.q, true, x);
      const double high = piece(inst.w2 * inst.f, inst.q, false, x);
      const double fPart = lp_sum(low / inst.w1(x), high / inst.w2(x), q);
      const double gLow = piece(inst.s1 * inst.g, inst.p, true, t);
      const double gHigh = piece(inst.s2 * inst.g, inst.p, false, t);
      const double gPart = lp_sum(gLow / inst.s1(t), gHigh / inst.s2(t), p);
      return fPart * gPart;
    };
  }
  return out;
}

EquivalenceReport verify_equivalence(const GluingInstance& inst,
                                     const std::vector<double>& grid) {
  if (grid.empty()) throw ParamOutOfRange("verify_equivalence needs a nonempty grid");
  const JointFunctional joint = glue(inst);
  EquivalenceReport report;
  report.grid = grid;

  bool anyInfinite = false;
  for (int which = 1; which <= 2; ++which) {
    const SplitShape shape = split_shape(inst, which);
    const bool infinite =
        piece_infinite(shape.fWeight, inst.q, shape.fLower) ||
        piece_infinite(shape.gWeight, inst.p, shape.gLower);
    anyInfinite = anyInfinite || infinite;
    std::optional<double> exponent;
    if (shape.fWeight.is_pure_power() && shape.gWeight.is_pure_power()) {
      exponent = inst.psi.m() * (shape.fWeight.a() + inst.q.reciprocal()) + shape.gWeight.a() +
                 inst.p.reciprocal();
    }
    FunctionalScan scan = scan_functional([&](double t) { return split_value(inst, which, t); },
                                          grid, infinite, exponent);
    (which == 1 ? report.split1 : report.split2) = std::move(scan);
  }
  report.joint = scan_functional(joint.eval, grid, anyInfinite, std::nullopt);

  const auto decided = [](const FunctionalScan& s) { return s.verdict != Verdict::Inconclusive; };
  if (decided(report.split1) && decided(report.split2) && decided(report.joint)) {
    const bool splitFinite =
        report.split1.verdict == Verdict::Finite && report.split2.verdict == Verdict::Finite;
    const bool jointFinite = report.joint.verdict == Verdict::Finite;
    if (splitFinite != jointFinite) {
      const double witness = jointFinite ? (report.split1.verdict == Verdict::Infinite
                                                ? report.split1.argmax
                                                : report.split2.argmax)
                                         : report.joint.argmax;
      throw EquivalenceViolated(
          std::string("gluing equivalence fails: split conditions ") +
              (splitFinite ? "finite" : "infinite") + ", joint " +
              (jointFinite ? "finite" : "infinite"),
          witness);
    }
  }

  if (report.split1.verdict == Verdict::Finite && report.split2.verdict == Verdict::Finite &&
      report.joint.verdict == Verdict::Finite) {
    report.maxRatio = report.joint.supEstimate /
                      std::max(report.split1.supEstimate, report.split2.supEstimate);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double splitMax = std::max(report.split1.values[i], report.split2.values[i]);
    const double j = report.joint.values[i];
    if (std::isfinite(splitMax) && splitMax > 0.0 && std::isfinite(j)) {
      report.minPointwiseRatio = std::min(report.minPointwiseRatio, j / splitMax);
    }
  }
  return report;
}

GluingInstance gluing_from_kernel(const SplittingKernelSpec& spec, const PowerLogWeight& u,
                                  const PowerLogWeight& v, const Exponent& p,
                                  const Exponent& q) {
  if (spec.region_one_zero() || spec.region_two_zero()) {
    throw HypothesisViolated("gluing needs nonzero envelopes on both regions");
  }
  GluingInstance inst;
  inst.f = u;
  inst.g = v.inverse();
  inst.s1 = *spec.s1;
  inst.s2 = *spec.s2;
  inst.w1 = *spec.w1;
  inst.w2 = *spec.w2;
  const double m = spec.phi.m();
  inst.psi = PhiMap(std::pow(spec.phi.kappa(), -1.0 / m), 1.0 / m);
  inst.p = p.conjugate();
  inst.q = q;
  return inst;
}

namespace {

double fused_integral(const std::function<double(double)>& h, double split) {
  QuadOptions options;
  options.relTol = 1e-9;
  options.anchor = split;
  try {
    const double low = integrate(h, Interval(0.0, split), options).value;
    const double high = integrate(h, Interval(split, kInf), options).value;
    return low + high;
  } catch (const DivergentIntegral&) {
    return kInf;
  }
}

void require_fused_scope(const Exponent& p, const Exponent& q) {
  if (p.is_infinite() || q.is_infinite() || p.value() <= 1.0) {
    throw ExponentOutOfScope("the fused functional needs 1 < p <= q < inf");
  }
  if (p.value() > q.value()) throw ExponentOrderViolation("the fused functional needs p <= q");
}

}  // namespace

double struve_fused_functional(double alpha, const PowerLogWeight& u, const PowerLogWeight& v,
                               const Exponent& p, const Exponent& q, double t) {
  require_fused_scope(p, q);
  const double qv = q.value();
  const double pp = p.conjugate().value();
  const double e = alpha + 1.5;
  const double t2 = t * t;
  const double first = fused_integral(
      [&](double x) { return std::pow(std::pow(x, e) / (1.0 / t2 + x * x) * u(x), qv); },
      1.0 / t);
  const double second = fused_integral(
      [&](double x) { return std::pow(std::pow(x, e) / (t2 + x * x) / v(x), pp); }, t);
  return std::pow(first, 1.0 / qv) * std::pow(second, 1.0 / pp);
}

ConditionVerdict struve_fused_condition(double alpha, const PowerLogWeight& u,
                                        const PowerLogWeight& v, const Exponent& p,
                                        const Exponent& q, const ScanOptions& options) {
  require_fused_scope(p, q);
  (void)StruveOrder(alpha);
  const Exponent pPrime = p.conjugate();
  ConditionVerdict out;

  // Near 0 the integrands behave like x^(alpha+3/2) times the weight, near
  // infinity like x^(alpha-1/2) times the weight, for every t.
  const PowerLogWeight nearZeroU = PowerLogWeight::power(alpha + 1.5) * u;
  const PowerLogWeight nearInfU = PowerLogWeight::power(alpha - 0.5) * u;
  const PowerLogWeight nearZeroV = PowerLogWeight::power(alpha + 1.5) * v.inverse();
  const PowerLogWeight nearInfV = PowerLogWeight::power(alpha - 0.5) * v.inverse();
  const bool weightInfinite =
      powerlog_norm_class(nearZeroU, q, Endpoint::Origin).verdict == Finiteness::Infinite ||
      powerlog_norm_class(nearInfU, q, Endpoint::Infinity).verdict == Finiteness::Infinite;
  const bool dualInfinite =
      powerlog_norm_class(nearZeroV, pPrime, Endpoint::Origin).verdict == Finiteness::Infinite ||
      powerlog_norm_class(nearInfV, pPrime, Endpoint::Infinity).verdict == Finiteness::Infinite;
  out.weightFactorInfinite = weightInfinite;
  out.dualFactorInfinite = dualInfinite;
  if (weightInfinite || dualInfinite) {
    out.verdict = Verdict::Infinite;
    out.supEstimate = kInf;
    out.argmaxR = options.gridLo;
    out.reason = "an integrand is not integrable at an endpoint";
    return out;
  }
  if (u.is_pure_power() && v.is_pure_power()) {
    out.symbolicExponent = -u.a() - v.a() - q.reciprocal() + pPrime.reciprocal();
  }
  const std::vector<double> grid = log_grid(options.gridLo, options.gridHi, options.perDecade);
  const SupScan scan = sup_scan(
      [&](double t) { return struve_fused_functional(alpha, u, v, p, q, t); }, grid);
  out.grid = scan.grid;
  out.values = scan.values;
  out.leftSlope = scan.leftSlope;
  out.rightSlope = scan.rightSlope;
  out.argmaxR = scan.argmax;
  out.supEstimate = scan.supEstimate;
  if (out.symbolicExponent) {
    const bool flat = std::abs(*out.symbolicExponent) <= kExactTol;
    out.verdict = flat ? Verdict::Finite : Verdict::Infinite;
    out.reason = flat ? "pure powers with t-exponent 0" : "pure powers with nonzero t-exponent";
  } else if (scan.supEstimate == kInf) {
    out.verdict = Verdict::Infinite;
    out.reason = "infinite value on the grid";
  } else {
    out.verdict = classify_slopes(scan.leftSlope, scan.rightSlope);
    out.reason = "slope policy";
  }
  if (out.verdict == Verdict::Infinite) out.supEstimate = kInf;
  return out;
}

}  // namespace splitkernel
