#include "splitkernel/analyzer.hpp"

#include <algorithm>
#include <cmath>

#include "splitkernel/errors.hpp"

namespace splitkernel {

namespace {

constexpr double kLinkTol = 1e-12;

// ||x^a||_{L_s(0, r)} finite.
bool finite_near_zero(double a, const Exponent& s) {
  return s.is_infinite() ? a >= 0.0 : a * s.value() > -1.0;
}

// ||x^a||_{L_s(r, inf)} finite.
bool finite_near_infinity(double a, const Exponent& s) {
  return s.is_infinite() ? a <= 0.0 : a * s.value() < -1.0;
}

}  // namespace

void PowerInstance::validate() const {
  if (p.value() > q.value()) {
    throw ExponentOrderViolation("power instance needs p <= q");
  }
}

double linked_gamma(const Exponent& p, const Exponent& q, double beta) {
  return beta - q.reciprocal() + p.conjugate().reciprocal();
}

bool linked(const PowerInstance& inst) {
  const double target = inst.gamma + inst.q.reciprocal() - inst.p.conjugate().reciprocal();
  return std::abs(inst.beta - target) <= kLinkTol;
}

std::string to_string(PowerVerdict v) {
  switch (v) {
    case PowerVerdict::Bounded:
      return "bounded";
    case PowerVerdict::Unbounded:
      return "unbounded";
    case PowerVerdict::SufficientOnly:
      return "sufficient-only";
    case PowerVerdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

PowerVerdict laplace_power_verdict(const PowerInstance& inst) {
  inst.validate();
  const bool oneInf = inst.p.value() == 1.0 && inst.q.is_infinite();
  if (oneInf) {
    const bool ok = std::abs(inst.beta - inst.gamma) <= kLinkTol && inst.beta <= 0.0;
    return ok ? PowerVerdict::Bounded : PowerVerdict::Unbounded;
  }
  const bool ok = inst.beta < inst.q.reciprocal() && linked(inst);
  return ok ? PowerVerdict::Bounded : PowerVerdict::Unbounded;
}

PowerVerdict struve_power_verdict(const PowerInstance& inst) {
  inst.validate();
  const double alpha = inst.param;
  if (!(alpha > -0.5)) throw ParamOutOfRange("struve order must satisfy alpha > -1/2");
  const double iq = inst.q.reciprocal();
  const bool link = linked(inst);
  if (alpha > 0.5) {
    const bool ok = link && iq + alpha - 0.5 < inst.beta && inst.beta < iq + alpha + 1.5;
    return ok ? PowerVerdict::Bounded : PowerVerdict::Unbounded;
  }
  const bool sufficient = link && iq < inst.beta && inst.beta < iq + alpha + 1.5;
  return sufficient ? PowerVerdict::SufficientOnly : PowerVerdict::Unknown;
}

SineVerdict sine_power_verdict(const PowerInstance& inst) {
  inst.validate();
  const double iq = inst.q.reciprocal();
  const double ipp = inst.p.conjugate().reciprocal();
  const bool link = linked(inst);
  SineVerdict out;
  const bool sharp = link && std::max(0.0, iq - ipp) <= inst.beta && inst.beta < 1.0 + iq;
  out.sharpVerdict = sharp ? PowerVerdict::Bounded : PowerVerdict::Unbounded;
  out.envelopeSufficient = link && iq < inst.beta && inst.beta < 1.0 + iq;
  return out;
}

PowerVerdict stieltjes_power_verdict(const PowerInstance& inst) {
  inst.validate();
  if (inst.p.value() == 1.0 || inst.q.is_infinite()) {
    throw ExponentOutOfScope("the Stieltjes power-weight closed form needs 1 < p <= q < inf");
  }
  const double lambda = inst.param;
  if (!(lambda > 0.0)) throw ParamOutOfRange("stieltjes needs lambda > 0");
  const double iq = inst.q.reciprocal();
  const double ipp = inst.p.conjugate().reciprocal();
  const bool ok = inst.beta < iq && inst.gamma < ipp && inst.beta + lambda > iq &&
                  inst.gamma + lambda > ipp &&
                  std::abs(inst.beta + inst.gamma - (iq + ipp - lambda)) <= kLinkTol;
  return ok ? PowerVerdict::Bounded : PowerVerdict::Unbounded;
}

bool laplace_first_condition(const PowerInstance& inst) {
  const Exponent pp = inst.p.conjugate();
  return finite_near_zero(-inst.beta, inst.q) && finite_near_zero(-inst.gamma, pp) &&
         std::abs(-inst.beta + inst.q.reciprocal() + inst.gamma - pp.reciprocal()) <= kLinkTol;
}

bool laplace_second_condition(const PowerInstance& inst, int n) {
  const Exponent pp = inst.p.conjugate();
  return finite_near_infinity(-n - inst.beta, inst.q) &&
         finite_near_infinity(-n - inst.gamma, pp) &&
         std::abs(-inst.beta + inst.q.reciprocal() + inst.gamma - pp.reciprocal()) <= kLinkTol;
}

ImplicationResult laplace_condition_implication(const PowerInstance& inst) {
  inst.validate();
  ImplicationResult out;
  out.antecedent = laplace_first_condition(inst);
  if (!out.antecedent) return out;
  for (int n = 1; n <= 10; ++n) {
    if (laplace_second_condition(inst, n)) {
      out.n = n;
      return out;
    }
  }
  out.holds = false;
  return out;
}

}  // namespace splitkernel
