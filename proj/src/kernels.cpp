#include "splitkernel/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <random>

#include "splitkernel/errors.hpp"
#include "splitkernel/specialfn.hpp"

namespace splitkernel {

PhiMap::PhiMap(double kappa, double m) : kappa_(kappa), m_(m) {
  if (!(kappa > 0.0) || !std::isfinite(kappa) || m == 0.0 || !std::isfinite(m)) {
    throw ParamOutOfRange("phi(y) = kappa*y^m needs kappa > 0 and m != 0");
  }
}

double PhiMap::operator()(double y) const {
  if (m_ == 1.0) return kappa_ * y;
  if (m_ == -1.0) return kappa_ / y;
  return kappa_ * std::pow(y, m_);
}

double PhiMap::inverse(double t) const {
  if (m_ == 1.0) return t / kappa_;
  if (m_ == -1.0) return kappa_ / t;
  return std::pow(t / kappa_, 1.0 / m_);
}

PowerLogWeight PhiMap::compose(const PowerLogWeight& w) const {
  if (!w.is_pure_power()) {
    throw ParamOutOfRange("composition with phi is only closed for pure powers");
  }
  return {w.c() * std::pow(kappa_, w.a()), w.a() * m_, 0.0};
}

ExponentPair compose_exponents(const PhiMap& phi, const PowerLogWeight& w) {
  const double m = phi.m();
  if (phi.increasing()) return {w.origin_exponent() * m, w.infinity_exponent() * m};
  return {w.infinity_exponent() * m, w.origin_exponent() * m};
}

void SplittingKernelSpec::validate() const {
  if (lower1 && region_one_zero()) {
    throw ParamOutOfRange("lower estimate on region one requires nonzero s1 and w1");
  }
  if (lower2 && region_two_zero()) {
    throw ParamOutOfRange("lower estimate on region two requires nonzero s2 and w2");
  }
  if (!(C1 > 0.0) || !(C2 > 0.0)) throw ParamOutOfRange("upper constants must be positive");
}

namespace {

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

std::string canonical_name(const std::string& name) {
  if (name == "rl" || name == "riemann_liouville" || name == "riemannliouville") {
    return "riemann-liouville";
  }
  return name;
}

double param(const std::map<std::string, double>& params, const std::string& key,
             double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void allow_only(const std::string& name, const std::map<std::string, double>& params,
                std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : params) {
    (void)value;
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      throw ParamOutOfRange("kernel '" + name + "' has no parameter '" + key + "'");
    }
  }
}

struct StruveConstants {
  double C1;
  double C2;
  double lowerC1;
  double lowerC2;
};

// Extremes of ratio(z) on [lo, hi] from a log grid with golden-section polish.
std::pair<double, double> ratio_extremes(const std::function<double(double)>& ratio, double lo,
                                         double hi) {
  const std::vector<double> grid = log_grid(lo, hi, 48);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = ratio(grid[i]);

  auto polish = [&](std::size_t i, double sign) {
    double a = std::log(grid[i > 0 ? i - 1 : i]);
    double b = std::log(grid[std::min(i + 1, grid.size() - 1)]);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    auto h = [&](double t) { return sign * ratio(std::exp(t)); };
    double x1 = b - g * (b - a);
    double x2 = a + g * (b - a);
    double f1 = h(x1);
    double f2 = h(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = h(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = h(x1);
      }
    }
    return sign * std::max({sign * values[i], f1, f2});
  };

  const auto maxIt = std::max_element(values.begin(), values.end());
  const auto minIt = std::min_element(values.begin(), values.end());
  const double top = polish(static_cast<std::size_t>(maxIt - values.begin()), 1.0);
  const double bottom = polish(static_cast<std::size_t>(minIt - values.begin()), -1.0);
  return {top, bottom};
}

StruveConstants struve_constants(double alpha) {
  static std::mutex mutex;
  static std::map<double, StruveConstants> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
  }
  const StruveOrder order(alpha);
  const double e2 = alpha >= 0.5 ? alpha - 0.5 : 0.0;
  auto ratio1 = [&](double z) { return struve(order, z) / std::pow(z, alpha + 1.0); };
  auto ratio2 = [&](double z) { return std::sqrt(z) * struve(order, z) / std::pow(z, e2); };
  auto abs1 = [&](double z) { return std::abs(ratio1(z)); };
  auto abs2 = [&](double z) { return std::abs(ratio2(z)); };

  constexpr double kSlack = 1.0 + 1e-7;
  StruveConstants out{};
  out.C1 = ratio_extremes(abs1, 1e-7, 1.0).first * kSlack;
  out.C2 = ratio_extremes(abs2, 1.0, 1e8).first * kSlack;
  out.lowerC1 = ratio_extremes(ratio1, 1e-7, 1.0).second / kSlack;
  out.lowerC2 = ratio_extremes(ratio2, 1.0, 1e8).second / kSlack;

  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(alpha, out);
  return out;
}

std::vector<double> at_phi(const PhiMap& phi, double y) { return {phi(y)}; }

}  // namespace

KernelArg parse_kernel_arg(std::string_view text) {
  const std::string source = trim(text);
  KernelArg arg;
  const std::size_t colon = source.find(':');
  arg.name = canonical_name(trim(std::string_view(source).substr(0, colon)));
  if (arg.name.empty()) throw ConfigError("empty kernel name");
  if (colon == std::string::npos) return arg;
  std::string rest = source.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    std::size_t comma = rest.find(',', start);
    if (comma == std::string::npos) comma = rest.size();
    const std::string item = trim(std::string_view(rest).substr(start, comma - start));
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("kernel parameter '" + item + "' lacks '='");
    const std::string key = trim(std::string_view(item).substr(0, eq));
    const std::string value = trim(std::string_view(item).substr(eq + 1));
    char* end = nullptr;
    const double parsed = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(parsed)) {
      throw ConfigError("kernel parameter '" + key + "' has non-numeric value '" + value + "'");
    }
    arg.params[key == "λ" ? "lambda" : key] = parsed;
    start = comma + 1;
  }
  return arg;
}

std::string format_kernel_arg(const KernelArg& arg) {
  std::string out = arg.name;
  char sep = ':';
  for (const auto& [key, value] : arg.params) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    out += sep;
    out += key + "=" + buffer;
    sep = ',';
  }
  return out;
}

std::vector<std::string> catalog_names() {
  return {"hardy", "bellman", "riemann-liouville", "sine", "struve", "stieltjes", "laplace"};
}

CatalogEntry catalog(const KernelArg& arg) { return catalog(arg.name, arg.params); }

CatalogEntry catalog(const std::string& rawName, const std::map<std::string, double>& params) {
  const std::string name = canonical_name(rawName);
  CatalogEntry entry;
  SplittingKernelSpec& spec = entry.spec;
  KernelFunction& K = entry.kernel;
  K.name = name;
  const PowerLogWeight one = PowerLogWeight::one();

  if (name == "hardy") {
    allow_only(name, params, {});
    spec.phi = PhiMap(1.0, 1.0);
    spec.s1 = one;
    spec.w1 = one;
    spec.lower1 = true;
    spec.lowerC1 = 1.0;
    K.eval = [](double x, double y) { return x <= y ? 1.0 : 0.0; };
  } else if (name == "bellman") {
    allow_only(name, params, {});
    spec.phi = PhiMap(1.0, 1.0);
    spec.s2 = PowerLogWeight::power(-1.0);
    spec.w2 = one;
    spec.lower2 = true;
    spec.lowerC2 = 1.0;
    K.eval = [](double x, double y) { return x > y ? 1.0 / x : 0.0; };
  } else if (name == "riemann-liouville") {
    allow_only(name, params, {"alpha"});
    const double alpha = param(params, "alpha", 0.5);
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw ParamOutOfRange("riemann-liouville needs alpha in (0, 1)");
    }
    K.params["alpha"] = alpha;
    spec.phi = PhiMap(1.0, 1.0);
    spec.s1 = one;
    spec.w1 = PowerLogWeight::power(alpha - 1.0);
    spec.lower1 = false;
    K.eval = [alpha](double x, double y) {
      if (x >= y) return x == y ? kInf : 0.0;
      return std::pow(y - x, alpha - 1.0);
    };
  } else if (name == "sine") {
    allow_only(name, params, {});
    spec.phi = PhiMap(1.0, -1.0);
    spec.s1 = PowerLogWeight::power(1.0);
    spec.w1 = PowerLogWeight::power(1.0);
    spec.s2 = one;
    spec.w2 = one;
    spec.lower1 = true;
    spec.lowerC1 = std::sin(1.0);
    spec.lower2 = false;
    K.eval = [](double x, double y) { return std::sin(x * y); };
    K.oscillatory = true;
  } else if (name == "struve") {
    allow_only(name, params, {"alpha"});
    const double alpha = param(params, "alpha", 1.0);
    const StruveOrder order(alpha);
    K.params["alpha"] = alpha;
    const StruveConstants constants = struve_constants(alpha);
    spec.phi = PhiMap(1.0, -1.0);
    spec.s1 = PowerLogWeight::power(alpha + 1.5);
    spec.w1 = PowerLogWeight::power(alpha + 1.5);
    const double e2 = alpha >= 0.5 ? alpha - 0.5 : 0.0;
    spec.s2 = PowerLogWeight::power(e2);
    spec.w2 = PowerLogWeight::power(e2);
    spec.C1 = constants.C1;
    spec.C2 = constants.C2;
    spec.lower1 = true;
    spec.lowerC1 = constants.lowerC1;
    spec.lower2 = alpha > 0.5;
    if (spec.lower2) spec.lowerC2 = constants.lowerC2;
    K.eval = [order](double x, double y) {
      const double z = x * y;
      return std::sqrt(z) * struve(order, z);
    };
    K.oscillatory = alpha <= 0.5;
  } else if (name == "stieltjes") {
    allow_only(name, params, {"lambda"});
    const double lambda = param(params, "lambda", 1.0);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw ParamOutOfRange("stieltjes needs lambda > 0");
    }
    K.params["lambda"] = lambda;
    spec.phi = PhiMap(1.0, 1.0);
    spec.s1 = one;
    spec.w1 = PowerLogWeight::power(-lambda);
    spec.s2 = PowerLogWeight::power(-lambda);
    spec.w2 = one;
    spec.lower1 = true;
    spec.lower2 = true;
    spec.lowerC1 = std::pow(2.0, -lambda);
    spec.lowerC2 = std::pow(2.0, -lambda);
    K.eval = [lambda](double x, double y) {
      return lambda == 1.0 ? 1.0 / (x + y) : std::pow(x + y, -lambda);
    };
  } else if (name == "laplace") {
    allow_only(name, params, {"n"});
    const double nValue = param(params, "n", 1.0);
    if (!(nValue >= 1.0) || nValue != std::floor(nValue) || nValue > 170.0) {
      throw ParamOutOfRange("laplace needs an integer n in [1, 170]");
    }
    K.params["n"] = nValue;
    spec.phi = PhiMap(1.0, -1.0);
    spec.s1 = one;
    spec.w1 = one;
    spec.s2 = PowerLogWeight::power(-nValue);
    spec.w2 = PowerLogWeight::power(-nValue);
    spec.C2 = std::tgamma(nValue + 1.0);
    spec.lower1 = true;
    spec.lowerC1 = std::exp(-1.0);
    spec.lower2 = false;
    K.eval = [](double x, double y) { return std::exp(-x * y); };
  } else {
    throw UnknownKernel("unknown kernel '" + rawName + "'");
  }
  const PhiMap phi = spec.phi;
  K.breakpoints = [phi](double y) { return at_phi(phi, y); };
  spec.validate();
  return entry;
}

double region_envelope(const SplittingKernelSpec& spec, int region, double x, double y) {
  if (region == 1) {
    if (spec.region_one_zero()) return 0.0;
    return (*spec.s1)(x) * (*spec.w1)(y);
  }
  if (spec.region_two_zero()) return 0.0;
  return (*spec.s2)(x) * (*spec.w2)(y);
}

double upper_envelope(const SplittingKernelSpec& spec, double x, double y) {
  if (x <= spec.phi(y)) return spec.C1 * region_envelope(spec, 1, x, y);
  return spec.C2 * region_envelope(spec, 2, x, y);
}

EstimateReport validate_estimate(const SplittingKernelSpec& spec, const KernelFunction& K,
                                 int samples, std::uint64_t seed) {
  if (samples < 100) throw ParamOutOfRange("validate_estimate needs at least 100 samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> exponent(-3.0, 3.0);
  EstimateReport report;
  report.samples = samples;
  report.minTwoSidedRatio = kInf;
  constexpr double kSlack = 1e-9;

  for (int i = 0; i < samples; ++i) {
    const double x = std::pow(10.0, exponent(rng));
    const double y = std::pow(10.0, exponent(rng));
    const double k = K.eval(x, y);
    const double envelope = upper_envelope(spec, x, y);
    const int region = x <= spec.phi(y) ? 1 : 2;
    (region == 1 ? report.regionOneSamples : report.regionTwoSamples)++;

    if (!(std::abs(k) <= envelope * (1.0 + kSlack))) {
      throw EstimateViolated(K.name + ": |K| exceeds the upper envelope (K = " +
                                 std::to_string(k) + ", envelope = " + std::to_string(envelope) +
                                 ")",
                             x, y);
    }
    if (envelope > 0.0) {
      report.maxUpperRatio = std::max(report.maxUpperRatio, std::abs(k) / envelope);
      report.minTwoSidedRatio = std::min(report.minTwoSidedRatio, k / envelope);
    }

    const bool flagged = region == 1 ? spec.lower1 : spec.lower2;
    if (!flagged) continue;
    const double part = region_envelope(spec, region, x, y);
    if (!(part > 0.0)) continue;
    const double ratio = k / part;
    const std::optional<double>& lowerC = region == 1 ? spec.lowerC1 : spec.lowerC2;
    if (lowerC && !(ratio >= *lowerC * (1.0 - kSlack))) {
      throw EstimateViolated(K.name + ": K falls below the lower envelope on region " +
                                 std::to_string(region),
                             x, y);
    }
    std::optional<double>& slot = region == 1 ? report.minLowerRatio1 : report.minLowerRatio2;
    slot = slot ? std::min(*slot, ratio) : ratio;
  }
  if (report.minTwoSidedRatio == kInf) report.minTwoSidedRatio = 0.0;
  return report;
}

}  // namespace splitkernel
