#pragma once

#include <optional>
#include <string>

#include "splitkernel/spaces.hpp"

namespace splitkernel {

/// u(x) = x^-beta, v(x) = x^gamma; param is alpha (Struve) or lambda (Stieltjes).
struct PowerInstance {
  Exponent p = 2.0;
  Exponent q = 2.0;
  double beta = 0.0;
  double gamma = 0.0;
  double param = 0.0;

  PowerLogWeight u() const { return PowerLogWeight::power(-beta); }
  PowerLogWeight v() const { return PowerLogWeight::power(gamma); }
  /// Throws ExponentOrderViolation when p > q.
  void validate() const;
};

/// beta = gamma + 1/q - 1/p', to absolute tolerance 1e-12.
bool linked(const PowerInstance& inst);
/// gamma making the instance linked for the given beta.
double linked_gamma(const Exponent& p, const Exponent& q, double beta);

enum class PowerVerdict { Bounded, Unbounded, SufficientOnly, Unknown };
std::string to_string(PowerVerdict v);

PowerVerdict laplace_power_verdict(const PowerInstance& inst);

/// param = alpha > -1/2.
PowerVerdict struve_power_verdict(const PowerInstance& inst);

struct SineVerdict {
  PowerVerdict sharpVerdict = PowerVerdict::Unbounded;
  bool envelopeSufficient = false;
};
SineVerdict sine_power_verdict(const PowerInstance& inst);

/// param = lambda > 0. Throws ExponentOutOfScope for p = 1 or q = inf.
PowerVerdict stieltjes_power_verdict(const PowerInstance& inst);

/// Closed forms of the two Laplace conditions for pure powers:
/// sup_t ||u||_{L_q(0,t)} ||1/v||_{L_p'(0,1/t)} and
/// sup_t ||x^-n u||_{L_q(t,inf)} ||x^-n / v||_{L_p'(1/t,inf)}.
bool laplace_first_condition(const PowerInstance& inst);
bool laplace_second_condition(const PowerInstance& inst, int n);

struct ImplicationResult {
  bool holds = true;
  bool antecedent = false;
  std::optional<int> n;
};

/// Whenever the first Laplace condition holds, searches n in 1..10 for which
/// the second holds too.
ImplicationResult laplace_condition_implication(const PowerInstance& inst);

}  // namespace splitkernel
