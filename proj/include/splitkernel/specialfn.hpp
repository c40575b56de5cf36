#pragma once

namespace splitkernel {

/// Order of the Struve function, alpha > -1/2.
class StruveOrder {
 public:
  StruveOrder(double alpha);  // NOLINT(google-explicit-constructor)
  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// Power series with compensated summation. Valid for 0 < x <= 40.
double struve_series(StruveOrder alpha, double x);

/// Two-term large-x formula: oscillating Bessel-type part plus the
/// non-oscillating (x/2)^(alpha-1) term. Intended for x >= 8.
double struve_asymptotic(StruveOrder alpha, double x);

/// Large-x expansion carried to the smallest term: the Struve-minus-Neumann
/// series plus Hankel's expansion of Y_alpha. Intended for x >= 12.
double struve_asymptotic_series(StruveOrder alpha, double x);

/// Series below the crossover, refined asymptotic expansion above it.
double struve(StruveOrder alpha, double x);

inline constexpr double kStruveCrossover = 12.0;

}  // namespace splitkernel
