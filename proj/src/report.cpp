#include "splitkernel/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "splitkernel/errors.hpp"

namespace splitkernel::report {

namespace {

std::string format_double(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string quote(const std::string& s) { return Json(s).dump(); }

void write(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out << inner << quote(it.key()) << ": ";
      write(out, it.value(), indent + 1);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << pad << "}";
  } else if (j.is_array()) {
    bool flat = true;
    for (const auto& e : j) flat = flat && !e.is_structured();
    if (flat) {
      out << "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ", ";
        write(out, j[i], indent + 1);
      }
      out << "]";
      return;
    }
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << inner;
      write(out, j[i], indent + 1);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << pad << "]";
  } else if (j.is_number_float()) {
    out << format_double(j.get<double>());
  } else {
    out << j.dump();
  }
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", j.get<double>());
    return buf;
  }
  return j.dump();
}

void flatten(std::ostringstream& out, const Json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(out, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    }
    return;
  }
  if (j.is_array()) {
    bool flat = true;
    for (const auto& e : j) flat = flat && !e.is_structured();
    if (!flat) {
      for (std::size_t i = 0; i < j.size(); ++i) {
        flatten(out, j[i], prefix + "[" + std::to_string(i) + "]");
      }
      return;
    }
    out << prefix << ": ";
    if (j.size() <= 8) {
      out << "[";
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << scalar_text(j[i]);
      out << "]\n";
    } else {
      out << "[" << j.size() << " values: " << scalar_text(j.front()) << " ... "
          << scalar_text(j.back()) << "]\n";
    }
    return;
  }
  out << prefix << ": " << scalar_text(j) << "\n";
}

}  // namespace

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json numbers(const std::vector<double>& xs) {
  Json arr = Json::array();
  for (double x : xs) arr.push_back(number(x));
  return arr;
}

double to_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw ConfigError("expected a number in report, got " + j.dump());
}

std::vector<double> to_doubles(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected an array in report");
  std::vector<double> xs;
  for (const auto& e : j) xs.push_back(to_double(e));
  return xs;
}

Json to_json(const ConditionVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.verdict);
  j["supEstimate"] = number(v.supEstimate);
  j["argmaxR"] = number(v.argmaxR);
  j["leftSlope"] = number(v.leftSlope);
  j["rightSlope"] = number(v.rightSlope);
  j["symbolicExponent"] = v.symbolicExponent ? number(*v.symbolicExponent) : Json(nullptr);
  j["vacuous"] = v.vacuous;
  j["weightFactorInfinite"] = v.weightFactorInfinite;
  j["dualFactorInfinite"] = v.dualFactorInfinite;
  j["reason"] = v.reason;
  j["grid"] = numbers(v.grid);
  j["values"] = numbers(v.values);
  return j;
}

Json to_json(const BoundednessResult& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["basis"] = r.basis;
  j["decidingRegion"] = r.decidingRegion;
  j["characterization"] = r.characterization;
  j["sideConditionOne"] = r.sideConditionOne;
  j["sideConditionTwo"] = r.sideConditionTwo;
  j["conditionOne"] = to_json(r.one);
  j["conditionTwo"] = to_json(r.two);
  return j;
}

Json to_json(const ProbeReport& r) {
  Json j;
  j["verdictHint"] = to_string(r.verdictHint);
  j["maxRatio"] = number(r.maxRatio);
  j["growthSlope"] = number(r.growthSlope);
  j["leftSlope"] = number(r.leftSlope);
  j["rightSlope"] = number(r.rightSlope);
  j["rGrid"] = numbers(r.rGrid);
  j["ratios"] = numbers(r.ratios);
  return j;
}

Json to_json(const FunctionalScan& s) {
  Json j;
  j["verdict"] = to_string(s.verdict);
  j["supEstimate"] = number(s.supEstimate);
  j["argmax"] = number(s.argmax);
  j["leftSlope"] = number(s.leftSlope);
  j["rightSlope"] = number(s.rightSlope);
  j["values"] = numbers(s.values);
  return j;
}

Json to_json(const EquivalenceReport& r) {
  Json j;
  j["maxRatio"] = number(r.maxRatio);
  j["minPointwiseRatio"] = number(r.minPointwiseRatio);
  j["split1"] = to_json(r.split1);
  j["split2"] = to_json(r.split2);
  j["joint"] = to_json(r.joint);
  j["grid"] = numbers(r.grid);
  return j;
}

Json to_json(const SharpProbeResult& r) {
  Json j;
  j["bestRatio"] = number(r.bestRatio);
  j["bestEpsilon"] = number(r.bestEpsilon);
  j["bestWindow"] = r.bestWindow;
  j["epsilons"] = numbers(r.epsilons);
  j["ratiosLow"] = numbers(r.ratiosLow);
  j["ratiosHigh"] = numbers(r.ratiosHigh);
  return j;
}

std::string dump_structured(const Json& doc) {
  std::ostringstream out;
  write(out, doc, 0);
  out << "\n";
  return out.str();
}

std::string dump_text(const Json& doc) {
  std::ostringstream out;
  flatten(out, doc, "");
  return out.str();
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace splitkernel::report
