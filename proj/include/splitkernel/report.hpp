#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "splitkernel/gluing.hpp"
#include "splitkernel/hardy.hpp"
#include "splitkernel/probe.hpp"

namespace splitkernel::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "splitkernel-report/1";

/// Non-finite values become the strings "inf", "-inf", "nan".
Json number(double x);
Json numbers(const std::vector<double>& xs);
/// Accepts a number or one of the strings above.
double to_double(const Json& j);
std::vector<double> to_doubles(const Json& j);

Json to_json(const ConditionVerdict& v);
Json to_json(const BoundednessResult& r);
Json to_json(const ProbeReport& r);
Json to_json(const FunctionalScan& s);
Json to_json(const EquivalenceReport& r);
Json to_json(const SharpProbeResult& r);

/// Indented document, numbers with 17 significant digits.
std::string dump_structured(const Json& doc);
/// Flat "key: value" lines; long arrays are summarized.
std::string dump_text(const Json& doc);

/// Throws ConfigError on malformed input.
Json parse(const std::string& text);

}  // namespace splitkernel::report
