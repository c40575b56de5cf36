#pragma once

#include <iosfwd>
#include <string>

#include "splitkernel/report.hpp"

namespace splitkernel::cli {

struct RunConfig {
  std::string command;  // check, probe, glue, struve-eval, table
  std::string kernel;   // "name:key=value,..."
  std::string p = "2";
  std::string q = "2";
  std::string u = "x^0";
  std::string v = "x^0";
  /// "lo,hi,perDecade"; empty selects the command's default grid.
  std::string grid;
  double relTol = 1e-8;
  // probe
  std::string region = "both";
  bool sharp = false;
  // struve-eval
  double alpha = 1.0;
  std::string x = "1";
  // table: "lo,hi,step"
  std::string beta = "-1,1,0.25";
};

report::Json to_json(const RunConfig& cfg);
/// Throws ConfigError on missing or mistyped fields.
RunConfig config_from_json(const report::Json& j);

struct Outcome {
  report::Json doc;
  /// 0 decided, 2 config error, 3 inconclusive.
  int exitCode = 0;
};

/// Runs one command. Library errors propagate.
Outcome execute(const RunConfig& cfg);

/// Parses the command line, runs, writes the report. Returns the exit code.
int run(int argc, char** argv);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace splitkernel::cli
