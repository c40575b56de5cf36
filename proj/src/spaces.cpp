#include "splitkernel/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "splitkernel/errors.hpp"

namespace splitkernel {

Exponent::Exponent(double value) : value_(value) {
  if (!(value >= 1.0)) {
    throw ParamOutOfRange("exponent must lie in [1, inf], got " + std::to_string(value));
  }
}

Exponent Exponent::conjugate() const {
  if (is_infinite()) return Exponent(1.0);
  if (value_ == 1.0) return infinity();
  if (value_ == 2.0) return Exponent(2.0);
  return Exponent(value_ / (value_ - 1.0));
}

Exponent conjugate(const Exponent& p) { return p.conjugate(); }

namespace {

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size();
}

std::string fmt(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  // Prefer the shortest representation that round-trips.
  for (int digits = 1; digits < 17; ++digits) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", digits, x);
    if (std::strtod(shorter, nullptr) == x) return shorter;
  }
  return buffer;
}

}  // namespace

Exponent parse_exponent(std::string_view text) {
  const std::string s = trim(text);
  if (s == "inf" || s == "infinity" || s == "Inf" || s == "INF") return Exponent::infinity();
  double value = 0.0;
  if (!parse_double(s, value) || !std::isfinite(value)) {
    throw ConfigError("cannot parse exponent '" + s + "'");
  }
  if (value < 1.0) throw ConfigError("exponent must be >= 1, got '" + s + "'");
  return Exponent(value);
}

std::string format_exponent(const Exponent& p) {
  return p.is_infinite() ? "inf" : fmt(p.value());
}

PowerLogWeight::PowerLogWeight(double c, double a, double b) : c_(c), a_(a), b_(b) {
  if (!(c > 0.0) || !std::isfinite(c) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ParamOutOfRange("power-log weight needs finite c > 0 and finite exponents");
  }
}

double PowerLogWeight::operator()(double x) const {
  double value = c_;
  if (a_ != 0.0) value *= std::pow(x, a_);
  if (b_ != 0.0) value *= std::pow(1.0 + x, b_);
  return value;
}

PowerLogWeight PowerLogWeight::operator*(const PowerLogWeight& other) const {
  return {c_ * other.c_, a_ + other.a_, b_ + other.b_};
}

PowerLogWeight PowerLogWeight::inverse() const { return {1.0 / c_, -a_, -b_}; }

PowerLogWeight PowerLogWeight::pow(double s) const {
  return {std::pow(c_, s), a_ * s, b_ * s};
}

PowerLogWeight parse_weight(std::string_view text) {
  const std::string source = trim(text);
  if (source.empty()) throw ConfigError("empty weight expression");
  double c = 1.0;
  double a = 0.0;
  double b = 0.0;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t star = source.find('*', start);
    if (star == std::string::npos) star = source.size();
    std::string factor = trim(std::string_view(source).substr(start, star - start));
    factor.erase(std::remove_if(factor.begin(), factor.end(),
                                [](unsigned char ch) { return std::isspace(ch); }),
                 factor.end());
    if (factor.empty()) throw ConfigError("empty factor in weight '" + source + "'");

    double value = 0.0;
    auto exponent_of = [&](const std::string& base) -> double {
      if (factor == base) return 1.0;
      const std::string prefix = base + "^";
      if (factor.rfind(prefix, 0) == 0) {
        std::string e = factor.substr(prefix.size());
        if (e.size() > 2 && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
        double parsed = 0.0;
        if (parse_double(e, parsed) && std::isfinite(parsed)) return parsed;
      }
      throw ConfigError("cannot parse weight factor '" + factor + "' in '" + source + "'");
    };

    if (factor.rfind("(1+x)", 0) == 0 || factor.rfind("(x+1)", 0) == 0) {
      const std::string base = factor.substr(0, 5);
      b += exponent_of(base);
    } else if (factor.front() == 'x') {
      a += exponent_of("x");
    } else if (parse_double(factor, value)) {
      if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError("weight constant must be positive in '" + source + "'");
      }
      c *= value;
    } else {
      throw ConfigError("cannot parse weight factor '" + factor + "' in '" + source + "'");
    }
    start = star + 1;
  }
  return {c, a, b};
}

std::string format_weight(const PowerLogWeight& w) {
  std::vector<std::string> parts;
  if (w.c() != 1.0) parts.push_back(fmt(w.c()));
  if (w.a() != 0.0 || (w.b() == 0.0 && w.c() == 1.0)) parts.push_back("x^" + fmt(w.a()));
  if (w.b() != 0.0) parts.push_back("(1+x)^" + fmt(w.b()));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '*';
    out += parts[i];
  }
  return out;
}

EndpointClass powerlog_norm_class(const PowerLogWeight& w, const Exponent& s,
                                  Endpoint endpoint) {
  EndpointClass out;
  out.endpoint = endpoint;
  const double exponent =
      endpoint == Endpoint::Origin ? w.origin_exponent() : w.infinity_exponent();
  if (s.is_infinite()) {
    out.localExponent = exponent;
    const bool finite = endpoint == Endpoint::Origin ? exponent >= 0.0 : exponent <= 0.0;
    out.verdict = finite ? Finiteness::Finite : Finiteness::Infinite;
    return out;
  }
  out.localExponent = exponent * s.value();
  const bool finite =
      endpoint == Endpoint::Origin ? out.localExponent > -1.0 : out.localExponent < -1.0;
  out.verdict = finite ? Finiteness::Finite : Finiteness::Infinite;
  return out;
}

double powerlog_sup(const PowerLogWeight& w, const Interval& iv) {
  const double a = w.a();
  const double b = w.b();
  double best = 0.0;

  // Limits at the ends of the interval.
  if (iv.touches_origin()) {
    if (a < 0.0) return kInf;
    best = std::max(best, a > 0.0 ? 0.0 : w.c());
  } else {
    best = std::max(best, w(iv.lo()));
  }
  if (iv.unbounded()) {
    const double e = a + b;
    if (e > 0.0) return kInf;
    if (e == 0.0) best = std::max(best, w.c());
  } else {
    best = std::max(best, w(iv.hi()));
  }
  // Interior critical point of a log x + b log(1+x).
  if (a + b != 0.0) {
    const double x = -a / (a + b);
    if (x > iv.lo() && x < iv.hi()) best = std::max(best, w(x));
  }
  return best;
}

double powerlog_norm(const PowerLogWeight& w, const Exponent& s, const Interval& iv,
                     double relTol) {
  if (s.is_infinite()) return powerlog_sup(w, iv);
  if (iv.touches_origin() &&
      powerlog_norm_class(w, s, Endpoint::Origin).verdict == Finiteness::Infinite) {
    return kInf;
  }
  if (iv.unbounded() &&
      powerlog_norm_class(w, s, Endpoint::Infinity).verdict == Finiteness::Infinite) {
    return kInf;
  }
  const double sv = s.value();
  if (w.is_pure_power()) {
    const double e = w.a() * sv + 1.0;
    double integral = 0.0;
    if (iv.touches_origin()) {
      integral = std::pow(iv.hi(), e) / e;
    } else if (iv.unbounded()) {
      integral = -std::pow(iv.lo(), e) / e;
    } else {
      const double span = std::log(iv.hi() / iv.lo());
      integral = (e == 0.0) ? span : std::pow(iv.lo(), e) * std::expm1(e * span) / e;
    }
    return w.c() * std::pow(integral, 1.0 / sv);
  }
  const PowerLogWeight ws = w.pow(sv);
  QuadOptions options;
  options.relTol = relTol;
  options.anchor = 1.0;
  try {
    const QuadResult r = integrate([&ws](double x) { return ws(x); }, iv, options);
    return std::pow(r.value, 1.0 / sv);
  } catch (const DivergentIntegral&) {
    return kInf;
  }
}

double sampled_sup(const std::function<double(double)>& g, const Interval& iv) {
  const double tLo = iv.touches_origin() ? std::min(std::log(iv.hi()), 0.0) - 40.0
                                         : std::log(iv.lo());
  const double tHi = iv.unbounded() ? std::max(std::log(iv.lo() > 0.0 ? iv.lo() : 1.0), 0.0) + 40.0
                                    : std::log(iv.hi());
  const int samples = 4000;
  const double step = (tHi - tLo) / samples;
  double best = 0.0;
  double bestT = tLo;
  auto value = [&](double t) {
    const double v = std::abs(g(std::exp(t)));
    return std::isnan(v) ? 0.0 : v;
  };
  for (int i = 0; i <= samples; ++i) {
    // Nudge the ends inward so open intervals are respected.
    double t = tLo + i * step;
    if (i == 0) t += 1e-12 * std::max(1.0, std::abs(tLo));
    if (i == samples) t -= 1e-12 * std::max(1.0, std::abs(tHi));
    const double v = value(t);
    if (v > best) {
      best = v;
      bestT = t;
    }
    if (best == kInf) return kInf;
  }
  // Golden-section refinement inside the neighbouring cells.
  double lo = std::max(tLo, bestT - step);
  double hi = std::min(tHi, bestT + step);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = value(x1);
  double f2 = value(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = value(x1);
    }
  }
  return std::max({best, f1, f2});
}

double weighted_norm(const std::function<double(double)>& f, const PowerLogWeight& v,
                     const Exponent& p, const Interval& iv, double relTol) {
  if (p.is_infinite()) {
    return sampled_sup([&](double x) { return v(x) * f(x); }, iv);
  }
  const double pv = p.value();
  QuadOptions options;
  options.relTol = relTol;
  try {
    const QuadResult r = integrate(
        [&](double x) {
          const double g = std::abs(v(x) * f(x));
          return g == 0.0 ? 0.0 : std::pow(g, pv);
        },
        iv, options);
    return std::pow(r.value, 1.0 / pv);
  } catch (const DivergentIntegral&) {
    return kInf;
  }
}

}  // namespace splitkernel
