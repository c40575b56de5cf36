#include "splitkernel/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "splitkernel/errors.hpp"

namespace splitkernel {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo >= 0.0) || !(hi > lo) || std::isinf(lo)) {
    throw ParamOutOfRange("interval requires 0 <= lo < hi, got (" + std::to_string(lo) +
                          ", " + std::to_string(hi) + ")");
  }
}

void CompensatedSum::add(double value) noexcept {
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value)) {
    compensation_ += (sum_ - t) + value;
  } else {
    compensation_ += (value - t) + sum_;
  }
  sum_ = t;
}

namespace {

// exp(t) stays a normal double on [kTMin, kTMax].
constexpr double kTMin = -708.0;
constexpr double kTMax = 709.0;
constexpr double kInitialHalfWindow = 8.0;
constexpr double kPanelWidth = 2.0;
constexpr int kMaxInitialPanels = 64;
constexpr int kDivergenceStreak = 4;
constexpr double kDivergenceFactor = 1.5;

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double l1;
};

bool worse(const Panel& lhs, const Panel& rhs) { return lhs.error < rhs.error; }

class AdaptiveSum {
 public:
  explicit AdaptiveSum(const std::function<double(double)>& g) : g_(g) {}

  // Returns the unrefined integral over the new range.
  double add_range(double a, double b) {
    if (!(b > a)) return 0.0;
    const auto pieces = static_cast<int>(
        std::min(std::ceil((b - a) / kPanelWidth), double(kMaxInitialPanels)));
    const double width = (b - a) / pieces;
    CompensatedSum added;
    for (int i = 0; i < pieces; ++i) {
      const double lo = a + i * width;
      const double hi = (i + 1 == pieces) ? b : a + (i + 1) * width;
      const Panel panel = evaluate(lo, hi);
      added += panel.value;
      push(panel);
    }
    return added.value();
  }

  // Bisects the worst panels until the error is below target(total).
  template <typename Target>
  bool refine(const Target& target, std::size_t maxPanels) {
    recompute();
    while (error_ > target(total_)) {
      if (heap_.empty() || heap_.front().error == 0.0) break;
      if (heap_.size() + frozen_.size() >= maxPanels) {
        recompute();
        return error_ <= target(total_);
      }
      std::pop_heap(heap_.begin(), heap_.end(), worse);
      Panel worst = heap_.back();
      heap_.pop_back();
      const double mid = 0.5 * (worst.a + worst.b);
      if (!(mid > worst.a && mid < worst.b) ||
          (worst.b - worst.a) < 1e-12 * std::max(1.0, std::abs(worst.a))) {
        frozen_.push_back(worst);
        continue;
      }
      Panel left = evaluate(worst.a, mid);
      Panel right = evaluate(mid, worst.b);
      total_ += left.value + right.value - worst.value;
      error_ += left.error + right.error - worst.error;
      push(left);
      push(right);
      if (!std::isfinite(total_)) return false;
    }
    recompute();
    return error_ <= target(total_);
  }

  double total() const noexcept { return total_; }
  double error() const noexcept { return error_; }
  double l1() const noexcept { return l1_; }

 private:
  Panel evaluate(double a, double b) const {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto eval = [&](double t) {
      const double v = g_(t);
      return std::isnan(v) ? 0.0 : v;
    };
    const double fc = eval(centre);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
      const double dx = half * kXgk[j];
      f1[j] = eval(centre - dx);
      f2[j] = eval(centre + dx);
      resk += kWgk[j] * (f1[j] + f2[j]);
      resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
      if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
      resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    double err = std::abs((resk - resg) * half);
    resasc *= half;
    resabs *= half;
    if (resasc != 0.0 && err != 0.0) {
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
      err = std::max(50.0 * eps * resabs, err);
    }
    if (!std::isfinite(resk)) err = kInf;
    return Panel{a, b, resk * half, err, resabs};
  }

  void push(const Panel& p) {
    heap_.push_back(p);
    std::push_heap(heap_.begin(), heap_.end(), worse);
  }

  void recompute() {
    CompensatedSum total;
    CompensatedSum error;
    CompensatedSum l1;
    for (const auto* group : {&heap_, &frozen_}) {
      for (const Panel& p : *group) {
        total += p.value;
        error += p.error;
        l1 += p.l1;
      }
    }
    total_ = total.value();
    error_ = error.value();
    l1_ = l1.value();
  }

  const std::function<double(double)>& g_;
  std::vector<Panel> heap_;
  std::vector<Panel> frozen_;
  double total_ = 0.0;
  double error_ = 0.0;
  double l1_ = 0.0;
};

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, const Interval& iv,
                     double relTol) {
  QuadOptions options;
  options.relTol = relTol;
  return integrate(f, iv, options);
}

QuadResult integrate(const std::function<double(double)>& f, const Interval& iv,
                     const QuadOptions& options) {
  if (!(options.relTol > 0.0)) throw ParamOutOfRange("integrate: relTol must be positive");

  const std::function<double(double)> g = [&f](double t) {
    const double x = std::exp(t);
    return f(x) * x;
  };

  const bool leftOpen = iv.touches_origin();
  const bool rightOpen = iv.unbounded();
  const double share = (leftOpen || rightOpen) ? 0.5 : 1.0;

  double centre = 0.0;
  double tLeft = 0.0;
  double tRight = 0.0;
  if (!leftOpen && !rightOpen) {
    tLeft = std::log(iv.lo());
    tRight = std::log(iv.hi());
  } else if (leftOpen && !rightOpen) {
    centre = std::clamp(std::log(iv.hi()), kTMin, kTMax);
    tRight = centre;
    tLeft = std::max(centre - kInitialHalfWindow, kTMin);
  } else if (!leftOpen && rightOpen) {
    centre = std::clamp(std::log(iv.lo()), kTMin, kTMax);
    tLeft = centre;
    tRight = std::min(centre + kInitialHalfWindow, kTMax);
  } else {
    centre = std::clamp(std::log(options.anchor > 0.0 ? options.anchor : 1.0), kTMin + 1.0,
                        kTMax - 1.0);
    tLeft = std::max(centre - kInitialHalfWindow, kTMin);
    tRight = std::min(centre + kInitialHalfWindow, kTMax);
  }

  auto target = [&options](double total, double l1) {
    const double scale = std::max(std::abs(total), 1e-10 * l1);
    return std::max(options.absTol, options.relTol * scale);
  };

  AdaptiveSum sum(g);
  sum.add_range(tLeft, tRight);
  auto refine = [&]() {
    return sum.refine([&](double total) { return share * target(total, sum.l1()); },
                      options.maxPanels);
  };
  bool panelsOk = refine();
  if (!std::isfinite(sum.total())) {
    throw DivergentIntegral("integrate: non-finite partial integral");
  }

  double tailEstimate = 0.0;
  bool tailOk = true;
  if (leftOpen || rightOpen) {
    tailOk = false;
    double previous = sum.total();
    int streak = 0;
    // An end stops expanding once its last doubling adds a negligible amount.
    bool leftActive = leftOpen;
    bool rightActive = rightOpen;
    while (true) {
      const bool canLeft = leftActive && tLeft > kTMin;
      const bool canRight = rightActive && tRight < kTMax;
      if (!canLeft && !canRight) break;
      double addedLeft = 0.0;
      double addedRight = 0.0;
      if (canLeft) {
        const double next = std::max(centre - 2.0 * (centre - tLeft), kTMin);
        addedLeft = sum.add_range(next, tLeft);
        tLeft = next;
      }
      if (canRight) {
        const double next = std::min(centre + 2.0 * (tRight - centre), kTMax);
        addedRight = sum.add_range(tRight, next);
        tRight = next;
      }
      panelsOk = refine();
      const double total = sum.total();
      if (!std::isfinite(total)) {
        throw DivergentIntegral("integrate: non-finite partial integral");
      }
      const double increment = std::abs(total - previous);
      tailEstimate = increment;
      const double tol = share * target(total, sum.l1());
      if (increment <= tol) {
        tailOk = true;
        break;
      }
      if (canLeft && std::abs(addedLeft) <= 0.5 * tol) leftActive = false;
      if (canRight && std::abs(addedRight) <= 0.5 * tol) rightActive = false;
      if (options.detectDivergence) {
        if (previous != 0.0 && std::abs(total) >= kDivergenceFactor * std::abs(previous)) {
          if (++streak >= kDivergenceStreak) {
            throw DivergentIntegral(
                "integrate: partial integrals keep growing under truncation doubling");
          }
        } else {
          streak = 0;
        }
      }
      previous = total;
    }
  }

  QuadResult result{sum.total(), sum.error() + tailEstimate, panelsOk && tailOk};
  if (!result.converged && options.throwOnNonConvergence) {
    throw NonConvergent("integrate: tolerance not met (value " + std::to_string(result.value) +
                        ", error " + std::to_string(result.errorEstimate) + ")");
  }
  return result;
}

std::vector<double> log_grid(double lo, double hi, int perDecade) {
  if (!(lo > 0.0) || !(hi > lo) || std::isinf(hi) || perDecade < 1) {
    throw ParamOutOfRange("log_grid requires 0 < lo < hi < inf and perDecade >= 1");
  }
  const double steps = perDecade * std::log10(hi / lo);
  const auto count = static_cast<long>(std::ceil(steps - 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count) + 1);
  for (long k = 0; k < count; ++k) {
    grid.push_back(lo * std::pow(10.0, static_cast<double>(k) / perDecade));
  }
  grid.push_back(hi);
  return grid;
}

double loglog_slope(std::span<const double> grid, std::span<const double> values, double from,
                    double to) {
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < grid.size() && i < values.size(); ++i) {
    if (grid[i] < from || grid[i] > to) continue;
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) continue;
    const double lx = std::log(grid[i]);
    const double ly = std::log(values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

SupScan sup_scan_values(std::vector<double> grid, std::vector<double> values) {
  if (grid.empty() || grid.size() != values.size()) {
    throw ParamOutOfRange("sup_scan requires a nonempty grid with one value per point");
  }
  SupScan scan;
  scan.grid = std::move(grid);
  scan.values = std::move(values);
  scan.supEstimate = -kInf;
  scan.argmax = scan.grid.front();
  for (std::size_t i = 0; i < scan.grid.size(); ++i) {
    const double v = scan.values[i];
    if (v > scan.supEstimate) {
      scan.supEstimate = v;
      scan.argmax = scan.grid[i];
      if (v == kInf) break;
    }
  }
  const double first = scan.grid.front();
  const double last = scan.grid.back();
  scan.leftSlope = loglog_slope(scan.grid, scan.values, first, first * 10.0 * (1.0 + 1e-9));
  scan.rightSlope = loglog_slope(scan.grid, scan.values, last / 10.0 * (1.0 - 1e-9), last);
  return scan;
}

SupScan sup_scan(const std::function<double(double)>& F, std::span<const double> grid) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double r : grid) values.push_back(F(r));
  return sup_scan_values(std::vector<double>(grid.begin(), grid.end()), std::move(values));
}

}  // namespace splitkernel
