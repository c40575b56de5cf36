#pragma once

#include <functional>
#include <string>
#include <vector>

#include "splitkernel/hardy.hpp"
#include "splitkernel/kernels.hpp"
#include "splitkernel/spaces.hpp"

namespace splitkernel {

enum class Direction { Increasing, Decreasing };

/// Data of a gluing problem. p is the exponent on the g-side, q on the f-side.
struct GluingInstance {
  PowerLogWeight f;
  PowerLogWeight g;
  PowerLogWeight s1;
  PowerLogWeight s2;
  PowerLogWeight w1;
  PowerLogWeight w2;
  PhiMap psi;
  Exponent p = 2.0;
  Exponent q = 2.0;

  Direction direction() const {
    return psi.increasing() ? Direction::Increasing : Direction::Decreasing;
  }
};

struct HypothesisReport {
  bool ratioNonincreasing = false;
  /// Increasing psi: w1(psi) ~ s2. Decreasing psi: w1(psi) ~ 1/s1.
  bool firstMatch = false;
  /// Increasing psi: w2(psi) ~ s1. Decreasing psi: w2(psi) ~ 1/s2.
  bool secondMatch = false;
  bool finiteExponents = false;
  bool all() const { return ratioNonincreasing && firstMatch && secondMatch && finiteExponents; }
  std::string failure() const;
};

HypothesisReport check_hypotheses(const GluingInstance& inst);

struct JointFunctional {
  std::function<double(double)> eval;
  std::string description;
};

/// Joint functional of the gluing lemma matching psi's direction.
/// Throws HypothesisViolated naming the failed hypothesis.
JointFunctional glue(const GluingInstance& inst);

/// The two split products at t (first and second condition of the lemma).
double split_one(const GluingInstance& inst, double t);
double split_two(const GluingInstance& inst, double t);

struct FunctionalScan {
  Verdict verdict = Verdict::Finite;
  double supEstimate = 0.0;
  double argmax = 1.0;
  double leftSlope = 0.0;
  double rightSlope = 0.0;
  std::vector<double> values;
};

struct EquivalenceReport {
  FunctionalScan split1;
  FunctionalScan split2;
  FunctionalScan joint;
  std::vector<double> grid;
  /// sup joint / max(sup split1, sup split2); infinite unless all three are finite.
  double maxRatio = kInf;
  /// min over the grid of joint / max(split1, split2).
  double minPointwiseRatio = kInf;
};

/// Scans the split and joint functionals over grid and checks that the joint
/// supremum is finite exactly when both split suprema are.
/// Throws EquivalenceViolated at the witnessing t.
EquivalenceReport verify_equivalence(const GluingInstance& inst, const std::vector<double>& grid);

/// Gluing data for the two Hardy-type conditions of a kernel: f = u,
/// g = 1/v, g-side exponent p', psi = phi^{-1}.
GluingInstance gluing_from_kernel(const SplittingKernelSpec& spec, const PowerLogWeight& u,
                                  const PowerLogWeight& v, const Exponent& p, const Exponent& q);

/// (int (x^(a+3/2)/(t^-2+x^2))^q u^q)^(1/q) (int (x^(a+3/2)/(t^2+x^2))^p' v^-p')^(1/p')
double struve_fused_functional(double alpha, const PowerLogWeight& u, const PowerLogWeight& v,
                               const Exponent& p, const Exponent& q, double t);

/// Supremum scan of the fused functional; needs 1 < p <= q < inf.
ConditionVerdict struve_fused_condition(double alpha, const PowerLogWeight& u,
                                        const PowerLogWeight& v, const Exponent& p,
                                        const Exponent& q, const ScanOptions& options = {});

}  // namespace splitkernel
