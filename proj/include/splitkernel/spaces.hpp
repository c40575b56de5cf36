#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "splitkernel/numerics.hpp"

namespace splitkernel {

/// Lebesgue index p in [1, inf].
class Exponent {
 public:
  Exponent(double value);  // NOLINT(google-explicit-constructor)
  static Exponent infinity() { return Exponent(kInf); }

  double value() const noexcept { return value_; }
  bool is_infinite() const noexcept { return value_ == kInf; }
  /// 1/p, with 1/inf = 0.
  double reciprocal() const noexcept { return is_infinite() ? 0.0 : 1.0 / value_; }
  Exponent conjugate() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double value_;
};

Exponent conjugate(const Exponent& p);

/// Accepts a number >= 1 or "inf".
Exponent parse_exponent(std::string_view text);
std::string format_exponent(const Exponent& p);

/// c * x^a * (1+x)^b with c > 0.
class PowerLogWeight {
 public:
  PowerLogWeight() = default;
  PowerLogWeight(double c, double a, double b = 0.0);

  static PowerLogWeight one() { return {}; }
  static PowerLogWeight power(double a) { return {1.0, a, 0.0}; }

  double c() const noexcept { return c_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  /// Exponent governing behaviour near 0 and near infinity.
  double origin_exponent() const noexcept { return a_; }
  double infinity_exponent() const noexcept { return a_ + b_; }
  bool is_pure_power() const noexcept { return b_ == 0.0; }

  double operator()(double x) const;

  PowerLogWeight operator*(const PowerLogWeight& other) const;
  PowerLogWeight inverse() const;
  PowerLogWeight pow(double s) const;

  friend bool operator==(const PowerLogWeight&, const PowerLogWeight&) = default;

 private:
  double c_ = 1.0;
  double a_ = 0.0;
  double b_ = 0.0;
};

/// Parses "c*x^a*(1+x)^b"; any factor may be omitted ("x^-0.5", "2", "(1+x)^-1").
PowerLogWeight parse_weight(std::string_view text);
std::string format_weight(const PowerLogWeight& w);

enum class Endpoint { Origin, Infinity };
enum class Finiteness { Finite, Infinite };

struct EndpointClass {
  Endpoint endpoint = Endpoint::Origin;
  Finiteness verdict = Finiteness::Finite;
  double localExponent = 0.0;
};

/// Exact integrability of w^s near the endpoint. The borderline exponent -1
/// counts as infinite.
EndpointClass powerlog_norm_class(const PowerLogWeight& w, const Exponent& s,
                                  Endpoint endpoint);

/// ||w||_{L_s(iv)}: closed form for pure powers, quadrature otherwise,
/// analytic supremum for s = inf. Returns inf when an endpoint class is infinite.
double powerlog_norm(const PowerLogWeight& w, const Exponent& s, const Interval& iv,
                     double relTol = 1e-10);

/// Supremum of w over iv, using the interior critical point and endpoint limits.
double powerlog_sup(const PowerLogWeight& w, const Interval& iv);

/// ||f||_{L_p^v(iv)} = ||v f||_{L_p(iv)}. Divergent integrals return inf.
double weighted_norm(const std::function<double(double)>& f, const PowerLogWeight& v,
                     const Exponent& p, const Interval& iv, double relTol = 1e-10);

/// Essential supremum of |g| on iv by log-grid sampling with golden-section
/// refinement around the best sample.
double sampled_sup(const std::function<double(double)>& g, const Interval& iv);

}  // namespace splitkernel
