#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace splitkernel {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open subinterval (lo, hi) of the half line; lo may be 0 and hi may be +inf.
class Interval {
 public:
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  bool touches_origin() const noexcept { return lo_ == 0.0; }
  bool unbounded() const noexcept { return hi_ == kInf; }

 private:
  double lo_;
  double hi_;
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double value) noexcept;
  CompensatedSum& operator+=(double value) noexcept {
    add(value);
    return *this;
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct QuadResult {
  double value = 0.0;
  double errorEstimate = 0.0;
  bool converged = false;
};

struct QuadOptions {
  double relTol = 1e-10;
  double absTol = 0.0;
  /// Maximum number of Gauss-Kronrod panels (after window expansion).
  std::size_t maxPanels = 40000;
  /// Centre of the initial window for (0, inf); the integrand's natural scale.
  double anchor = 1.0;
  /// Apply the truncation-doubling divergence rule on infinite ends.
  bool detectDivergence = true;
  /// Throw NonConvergent instead of returning converged = false.
  bool throwOnNonConvergence = true;
};

/// Integrates f over iv after the substitution x = e^t.
///
/// Finite windows in t are refined adaptively with 15-point Gauss-Kronrod
/// panels. An end at 0 or inf is handled by doubling the truncation window
/// until the added piece is below the tolerance. Four successive doublings
/// that each grow the partial integral by a factor >= 1.5 raise
/// DivergentIntegral, as does a non-finite partial sum.
QuadResult integrate(const std::function<double(double)>& f, const Interval& iv,
                     double relTol);
QuadResult integrate(const std::function<double(double)>& f, const Interval& iv,
                     const QuadOptions& options);

/// Geometric grid from lo to hi with exactly perDecade points per factor of 10.
/// Both endpoints are included; the last step is shortened if log10(hi/lo)
/// is not a multiple of 1/perDecade.
std::vector<double> log_grid(double lo, double hi, int perDecade);

struct SupScan {
  std::vector<double> grid;
  std::vector<double> values;
  double supEstimate = 0.0;
  double argmax = 0.0;
  double leftSlope = 0.0;
  double rightSlope = 0.0;
};

/// Least-squares slope of log(values) against log(grid) over the points that
/// satisfy the selection; non-finite and non-positive values are skipped.
double loglog_slope(std::span<const double> grid, std::span<const double> values,
                    double from, double to);

/// Evaluates F on the grid and records the maximum together with log-log
/// slopes over the outermost decade at each end. Any infinite value makes
/// supEstimate infinite.
SupScan sup_scan(const std::function<double(double)>& F, std::span<const double> grid);

/// Same as sup_scan on already evaluated values.
SupScan sup_scan_values(std::vector<double> grid, std::vector<double> values);

/// Default supremum grid: [1e-6, 1e6], 16 points per decade.
inline constexpr double kDefaultGridLo = 1e-6;
inline constexpr double kDefaultGridHi = 1e6;
inline constexpr int kDefaultPerDecade = 16;

/// |slope| at or below this counts as flat.
inline constexpr double kFlatSlope = 0.02;

}  // namespace splitkernel
