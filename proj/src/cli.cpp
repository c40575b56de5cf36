#include "splitkernel/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "splitkernel/analyzer.hpp"
#include "splitkernel/errors.hpp"
#include "splitkernel/gluing.hpp"
#include "splitkernel/hardy.hpp"
#include "splitkernel/kernels.hpp"
#include "splitkernel/probe.hpp"
#include "splitkernel/specialfn.hpp"

namespace splitkernel::cli {

using report::Json;

namespace {

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(item == "inf" ? kInf : std::stod(item, &used));
      if (item != "inf" && used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(what + ": cannot parse '" + item + "'");
    }
  }
  return out;
}

ScanOptions scan_options(const RunConfig& cfg) {
  ScanOptions options;
  options.relTol = cfg.relTol;
  if (!(cfg.relTol > 0.0)) throw ConfigError("--rel-tol must be positive");
  if (cfg.grid.empty()) return options;
  const std::vector<double> g = parse_list(cfg.grid, "--grid");
  if (g.size() != 3 || !(g[0] > 0.0) || !(g[1] > g[0]) || !std::isfinite(g[1]) ||
      !(g[2] >= 1.0) || g[2] != std::floor(g[2])) {
    throw ConfigError("--grid expects lo,hi,perDecade with 0 < lo < hi and perDecade >= 1");
  }
  options.gridLo = g[0];
  options.gridHi = g[1];
  options.perDecade = static_cast<int>(g[2]);
  return options;
}

std::vector<double> grid_or(const RunConfig& cfg, double lo, double hi, int perDecade) {
  if (cfg.grid.empty()) return log_grid(lo, hi, perDecade);
  const ScanOptions s = scan_options(cfg);
  return log_grid(s.gridLo, s.gridHi, s.perDecade);
}

struct Problem {
  KernelArg arg;
  CatalogEntry entry;
  PowerLogWeight u;
  PowerLogWeight v;
  Exponent p = 2.0;
  Exponent q = 2.0;
};

Problem load_problem(const RunConfig& cfg) {
  if (cfg.kernel.empty()) throw ConfigError("--kernel is required");
  Problem pr;
  pr.arg = parse_kernel_arg(cfg.kernel);
  pr.entry = catalog(pr.arg);
  pr.u = parse_weight(cfg.u);
  pr.v = parse_weight(cfg.v);
  pr.p = parse_exponent(cfg.p);
  pr.q = parse_exponent(cfg.q);
  return pr;
}

const std::string& kernel_name(const Problem& pr) { return pr.entry.kernel.name; }

double kernel_param(const Problem& pr, const std::string& key, double fallback) {
  const auto it = pr.entry.kernel.params.find(key);
  return it == pr.entry.kernel.params.end() ? fallback : it->second;
}

// Laplace without an explicit n is decided over n = 1..10.
AnyResult decide(const Problem& pr, const ScanOptions& options) {
  if (kernel_name(pr) == "laplace" && pr.arg.params.count("n") == 0) {
    std::vector<InequalityInstance> instances;
    for (int n = 1; n <= 10; ++n) {
      instances.push_back(make_instance(catalog("laplace", {{"n", double(n)}}), pr.u, pr.v,
                                        pr.p, pr.q));
    }
    return check_boundedness_any(instances, options);
  }
  AnyResult any;
  any.result = check_boundedness(make_instance(pr.entry, pr.u, pr.v, pr.p, pr.q), options);
  return any;
}

struct ClosedForm {
  bool available = false;
  std::string note;
  PowerVerdict verdict = PowerVerdict::Unknown;
  std::optional<SineVerdict> sine;
};

ClosedForm closed_form(const std::string& name, double param, const Exponent& p,
                       const Exponent& q, double beta, double gamma) {
  ClosedForm cf;
  PowerInstance pi;
  pi.p = p;
  pi.q = q;
  pi.beta = beta;
  pi.gamma = gamma;
  pi.param = param;
  try {
    if (name == "laplace") {
      cf.verdict = laplace_power_verdict(pi);
    } else if (name == "struve") {
      cf.verdict = struve_power_verdict(pi);
    } else if (name == "stieltjes") {
      cf.verdict = stieltjes_power_verdict(pi);
    } else if (name == "sine") {
      cf.sine = sine_power_verdict(pi);
      cf.verdict = cf.sine->sharpVerdict;
    } else {
      cf.note = "no closed form for this kernel";
      return cf;
    }
  } catch (const ExponentOutOfScope& e) {
    cf.note = e.what();
    return cf;
  }
  cf.available = true;
  return cf;
}

ClosedForm closed_form(const Problem& pr) {
  if (!pr.u.is_pure_power() || !pr.v.is_pure_power()) {
    ClosedForm cf;
    cf.note = "closed forms need pure power weights";
    return cf;
  }
  const std::string& name = kernel_name(pr);
  const double param = name == "stieltjes" ? kernel_param(pr, "lambda", 1.0)
                                           : kernel_param(pr, "alpha", 1.0);
  return closed_form(name, param, pr.p, pr.q, -pr.u.a(), pr.v.a());
}

bool agrees(Boundedness numeric, const ClosedForm& cf) {
  if (cf.sine) {
    if ((numeric == Boundedness::Bounded) != cf.sine->envelopeSufficient) return false;
    if (numeric == Boundedness::Unbounded) return cf.sine->sharpVerdict == PowerVerdict::Unbounded;
    return numeric != Boundedness::Inconclusive;
  }
  switch (numeric) {
    case Boundedness::Bounded:
      return cf.verdict == PowerVerdict::Bounded || cf.verdict == PowerVerdict::SufficientOnly;
    case Boundedness::Unbounded:
      return cf.verdict == PowerVerdict::Unbounded;
    case Boundedness::SufficientOnlyUnknown:
      return cf.verdict == PowerVerdict::Unknown;
    case Boundedness::Inconclusive:
      return false;
  }
  return false;
}

Json closed_form_json(const ClosedForm& cf) {
  Json j;
  j["available"] = cf.available;
  if (!cf.available) {
    j["note"] = cf.note;
    return j;
  }
  if (cf.sine) {
    j["sharpVerdict"] = to_string(cf.sine->sharpVerdict);
    j["envelopeSufficient"] = cf.sine->envelopeSufficient;
  } else {
    j["verdict"] = to_string(cf.verdict);
  }
  return j;
}

int exit_for(Boundedness b) {
  return (b == Boundedness::Bounded || b == Boundedness::Unbounded) ? 0 : 3;
}

Outcome run_check(const RunConfig& cfg) {
  const Problem pr = load_problem(cfg);
  const AnyResult any = decide(pr, scan_options(cfg));
  Outcome out;
  Json& doc = out.doc;
  doc["verdict"] = to_string(any.result.verdict);
  doc["result"] = report::to_json(any.result);
  if (kernel_name(pr) == "laplace" && pr.arg.params.count("n") == 0) {
    doc["laplaceN"] = static_cast<int>(any.index) + 1;
  }
  const ClosedForm cf = closed_form(pr);
  Json cfj = closed_form_json(cf);
  if (cf.available) cfj["agrees"] = agrees(any.result.verdict, cf);
  doc["closedForm"] = cfj;
  out.exitCode = exit_for(any.result.verdict);
  return out;
}

Outcome run_probe(const RunConfig& cfg) {
  const Problem pr = load_problem(cfg);
  Outcome out;
  if (cfg.sharp) {
    const SharpProbeResult r = sharp_constant_probe(kernel_name(pr), pr.p, pr.q);
    out.doc["verdict"] = "evaluated";
    out.doc["sharp"] = report::to_json(r);
    return out;
  }
  const InequalityInstance inst = make_instance(pr.entry, pr.u, pr.v, pr.p, pr.q);
  const std::vector<double> rGrid = grid_or(cfg, 1e-2, 1e2, 2);
  std::vector<Region> regions;
  if (cfg.region == "one") {
    regions = {Region::One};
  } else if (cfg.region == "two") {
    regions = {Region::Two};
  } else if (cfg.region == "both") {
    if (!inst.spec.region_one_zero()) regions.push_back(Region::One);
    if (!inst.spec.region_two_zero() && !pr.entry.kernel.oscillatory) {
      regions.push_back(Region::Two);
    }
  } else {
    throw ConfigError("--region must be one, two or both");
  }
  const bool explicitRegion = cfg.region != "both";

  Json regionsJson = Json::object();
  bool growth = false;
  bool allConsistent = true;
  for (Region region : regions) {
    const std::string key = region == Region::One ? "one" : "two";
    try {
      const ProbeReport r = extremal_ratio_scan(inst, region, rGrid);
      regionsJson[key] = report::to_json(r);
      growth = growth || r.verdictHint == ProbeHint::GrowthDetected;
      allConsistent = allConsistent && r.verdictHint == ProbeHint::BoundedConsistent;
    } catch (const SideConditionViolated& e) {
      if (explicitRegion) throw;
      regionsJson[key] = Json{{"skipped", e.what()}};
      allConsistent = false;
    }
  }
  ProbeHint hint = ProbeHint::Inconclusive;
  if (growth) {
    hint = ProbeHint::GrowthDetected;
  } else if (allConsistent && !regions.empty()) {
    hint = ProbeHint::BoundedConsistent;
  }
  out.doc["verdict"] = to_string(hint);
  out.doc["regions"] = regionsJson;
  out.exitCode = hint == ProbeHint::Inconclusive ? 3 : 0;
  return out;
}

Json hypotheses_json(const HypothesisReport& h) {
  return Json{{"ratioNonincreasing", h.ratioNonincreasing},
              {"firstMatch", h.firstMatch},
              {"secondMatch", h.secondMatch},
              {"finiteExponents", h.finiteExponents}};
}

Outcome run_glue(const RunConfig& cfg) {
  const Problem pr = load_problem(cfg);
  const GluingInstance g = gluing_from_kernel(pr.entry.spec, pr.u, pr.v, pr.p, pr.q);
  const HypothesisReport h = check_hypotheses(g);
  if (!h.all()) throw HypothesisViolated(h.failure());
  const JointFunctional joint = glue(g);
  const ScanOptions options = scan_options(cfg);
  const EquivalenceReport eq =
      verify_equivalence(g, log_grid(options.gridLo, options.gridHi, options.perDecade));
  Outcome out;
  out.doc["verdict"] = to_string(eq.joint.verdict);
  out.doc["direction"] = g.direction() == Direction::Increasing ? "increasing" : "decreasing";
  out.doc["joint"] = joint.description;
  out.doc["hypotheses"] = hypotheses_json(h);
  out.doc["equivalence"] = report::to_json(eq);
  if (kernel_name(pr) == "struve" && !pr.p.is_infinite() && pr.p.value() > 1.0 &&
      !pr.q.is_infinite()) {
    const ConditionVerdict fused = struve_fused_condition(kernel_param(pr, "alpha", 1.0), pr.u,
                                                          pr.v, pr.p, pr.q, options);
    out.doc["fused"] = report::to_json(fused);
  }
  out.exitCode = eq.joint.verdict == Verdict::Inconclusive ? 3 : 0;
  return out;
}

Outcome run_struve_eval(const RunConfig& cfg) {
  const StruveOrder alpha(cfg.alpha);
  const std::vector<double> xs = parse_list(cfg.x, "--x");
  Json rows = Json::array();
  for (double x : xs) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("--x values must be positive");
    Json row;
    row["x"] = report::number(x);
    row["struve"] = report::number(struve(alpha, x));
    row["series"] = x <= 40.0 ? report::number(struve_series(alpha, x)) : Json(nullptr);
    row["asymptotic"] = report::number(struve_asymptotic(alpha, x));
    row["asymptoticSeries"] = report::number(struve_asymptotic_series(alpha, x));
    rows.push_back(row);
  }
  Outcome out;
  out.doc["verdict"] = "evaluated";
  out.doc["alpha"] = report::number(cfg.alpha);
  out.doc["values"] = rows;
  return out;
}

std::string closed_key(const ClosedForm& cf) {
  if (!cf.available) return "n/a";
  if (cf.sine) {
    return to_string(cf.sine->sharpVerdict) + (cf.sine->envelopeSufficient ? "/sufficient" : "");
  }
  return to_string(cf.verdict);
}

// Dilation-invariant gamma for the given beta. Kernels of xy use the analyzer's
// link; the Stieltjes kernel is homogeneous of degree -lambda.
double table_gamma(const std::string& name, double param, const Exponent& p, const Exponent& q,
                   double beta) {
  if (name == "stieltjes") return q.reciprocal() + p.conjugate().reciprocal() - param - beta;
  return linked_gamma(p, q, beta);
}

Outcome run_table(const RunConfig& cfg) {
  const Problem pr = load_problem(cfg);
  const std::string& name = kernel_name(pr);
  if (name != "sine" && name != "stieltjes" && name != "struve" && name != "laplace") {
    throw ConfigError("table supports sine, stieltjes, struve and laplace");
  }
  const std::vector<double> b = parse_list(cfg.beta, "--beta");
  if (b.size() != 3 || !(b[2] > 0.0) || !(b[1] >= b[0]) || !std::isfinite(b[1])) {
    throw ConfigError("--beta expects lo,hi,step with lo <= hi and step > 0");
  }
  const double param =
      name == "stieltjes" ? kernel_param(pr, "lambda", 1.0) : kernel_param(pr, "alpha", 1.0);
  const ScanOptions options = scan_options(cfg);
  if (pr.p.value() > pr.q.value()) throw ExponentOrderViolation("table needs p <= q");

  Json rows = Json::array();
  int mismatches = 0;
  int offBoundary = 0;
  const int steps = static_cast<int>(std::floor((b[1] - b[0]) / b[2] + 1e-9));
  for (int i = 0; i <= steps; ++i) {
    const double beta = b[0] + i * b[2];
    const double gamma = table_gamma(name, param, pr.p, pr.q, beta);
    Problem row = pr;
    row.u = PowerLogWeight::power(-beta);
    row.v = PowerLogWeight::power(gamma);
    const Boundedness numeric = decide(row, options).result.verdict;
    const ClosedForm cf = closed_form(name, param, pr.p, pr.q, beta, gamma);
    constexpr double kMargin = 0.099;
    const std::string key = closed_key(cf);
    const bool off = cf.available &&
                     closed_key(closed_form(name, param, pr.p, pr.q, beta - kMargin,
                                            table_gamma(name, param, pr.p, pr.q, beta - kMargin))) ==
                         key &&
                     closed_key(closed_form(name, param, pr.p, pr.q, beta + kMargin,
                                            table_gamma(name, param, pr.p, pr.q, beta + kMargin))) ==
                         key;
    const bool agree = cf.available && agrees(numeric, cf);
    if (off) {
      ++offBoundary;
      if (!agree) ++mismatches;
    }
    Json r;
    r["beta"] = report::number(beta);
    r["gamma"] = report::number(gamma);
    r["numeric"] = to_string(numeric);
    r["closedForm"] = closed_form_json(cf);
    r["agrees"] = agree;
    r["offBoundary"] = off;
    rows.push_back(r);
  }
  Outcome out;
  out.doc["verdict"] = mismatches == 0 ? "consistent" : "mismatch";
  out.doc["mismatches"] = mismatches;
  out.doc["offBoundaryRows"] = offBoundary;
  out.doc["rows"] = rows;
  out.exitCode = mismatches == 0 ? 0 : 3;
  return out;
}

std::string render_table_text(const Json& doc) {
  std::ostringstream out;
  out << "beta        gamma       numeric                  closed-form                    agree\n";
  for (const auto& r : doc["rows"]) {
    char line[160];
    const Json& cf = r["closedForm"];
    std::string closed = "n/a";
    if (cf.contains("verdict")) closed = cf["verdict"].get<std::string>();
    if (cf.contains("sharpVerdict")) {
      closed = "sharp=" + cf["sharpVerdict"].get<std::string>() +
               " env=" + (cf["envelopeSufficient"].get<bool>() ? "yes" : "no");
    }
    std::snprintf(line, sizeof line, "%-11.4g %-11.4g %-24s %-30s %s%s\n",
                  report::to_double(r["beta"]), report::to_double(r["gamma"]),
                  r["numeric"].get<std::string>().c_str(), closed.c_str(),
                  r["agrees"].get<bool>() ? "yes" : "no",
                  r["offBoundary"].get<bool>() ? "" : " (boundary)");
    out << line;
  }
  out << "mismatches (off boundary): " << doc["mismatches"].get<int>() << " of "
      << doc["offBoundaryRows"].get<int>() << "\n";
  return out.str();
}

}  // namespace

Json to_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["kernel"] = cfg.kernel;
  j["p"] = cfg.p;
  j["q"] = cfg.q;
  j["u"] = cfg.u;
  j["v"] = cfg.v;
  j["grid"] = cfg.grid;
  j["relTol"] = report::number(cfg.relTol);
  j["region"] = cfg.region;
  j["sharp"] = cfg.sharp;
  j["alpha"] = report::number(cfg.alpha);
  j["x"] = cfg.x;
  j["beta"] = cfg.beta;
  return j;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("report config must be an object");
  RunConfig cfg;
  try {
    cfg.command = j.at("command").get<std::string>();
    cfg.kernel = j.value("kernel", cfg.kernel);
    cfg.p = j.value("p", cfg.p);
    cfg.q = j.value("q", cfg.q);
    cfg.u = j.value("u", cfg.u);
    cfg.v = j.value("v", cfg.v);
    cfg.grid = j.value("grid", cfg.grid);
    if (j.contains("relTol")) cfg.relTol = report::to_double(j["relTol"]);
    cfg.region = j.value("region", cfg.region);
    cfg.sharp = j.value("sharp", cfg.sharp);
    if (j.contains("alpha")) cfg.alpha = report::to_double(j["alpha"]);
    cfg.x = j.value("x", cfg.x);
    cfg.beta = j.value("beta", cfg.beta);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad report config: ") + e.what());
  }
  return cfg;
}

Outcome execute(const RunConfig& cfg) {
  Outcome out;
  if (cfg.command == "check") {
    out = run_check(cfg);
  } else if (cfg.command == "probe") {
    out = run_probe(cfg);
  } else if (cfg.command == "glue") {
    out = run_glue(cfg);
  } else if (cfg.command == "struve-eval") {
    out = run_struve_eval(cfg);
  } else if (cfg.command == "table") {
    out = run_table(cfg);
  } else {
    throw ConfigError("unknown command '" + cfg.command + "'");
  }
  Json doc;
  doc["schema"] = report::kSchema;
  doc["command"] = cfg.command;
  doc["config"] = to_json(cfg);
  for (auto it = out.doc.begin(); it != out.doc.end(); ++it) doc[it.key()] = it.value();
  out.doc = std::move(doc);
  return out;
}

int run(int argc, char** argv) { return run(argc, argv, std::cout, std::cerr); }

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted norm inequalities for splitting kernels"};
  app.require_subcommand(0, 1);
  RunConfig cfg;
  std::string outPath;
  std::string format;
  std::string fromReport;
  app.add_option("--from-report", fromReport,
                 "Re-run the configuration embedded in a structured report");
  app.add_option("--out", outPath, "Write the report to this path");
  app.add_option("--format", format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));

  auto common = [&](CLI::App* sub, bool withKernel) {
    if (withKernel) {
      sub->add_option("--kernel", cfg.kernel, "Kernel as name:key=value,...");
      sub->add_option("--p", cfg.p, "Exponent on the f side (number >= 1 or inf)");
      sub->add_option("--q", cfg.q, "Exponent on the Tf side (number >= 1 or inf)");
      sub->add_option("--u", cfg.u, "Weight u as c*x^a*(1+x)^b");
      sub->add_option("--v", cfg.v, "Weight v as c*x^a*(1+x)^b");
      sub->add_option("--grid", cfg.grid, "lo,hi,perDecade");
      sub->add_option("--rel-tol", cfg.relTol, "Relative quadrature tolerance");
    }
    sub->add_option("--out", outPath, "Write the report to this path");
    sub->add_option("--format", format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
  };
  auto* check = app.add_subcommand("check", "Decide boundedness from the two conditions");
  common(check, true);
  auto* probe = app.add_subcommand("probe", "Operator ratios over the extremal families");
  common(probe, true);
  probe->add_option("--region", cfg.region, "one, two or both");
  probe->add_flag("--sharp", cfg.sharp, "Run the sharp-constant probe (p = q = 2)");
  auto* glueCmd = app.add_subcommand("glue", "Verify the joint functional of the gluing lemmas");
  common(glueCmd, true);
  auto* eval = app.add_subcommand("struve-eval", "Evaluate the Struve function");
  common(eval, false);
  eval->add_option("--alpha", cfg.alpha, "Order alpha > -1/2");
  eval->add_option("--x", cfg.x, "Comma-separated arguments");
  auto* table = app.add_subcommand("table", "Numeric vs closed-form verdicts over a beta sweep");
  common(table, true);
  table->add_option("--beta", cfg.beta, "lo,hi,step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    std::optional<Json> original;
    if (!fromReport.empty()) {
      std::ifstream in(fromReport);
      if (!in) throw ConfigError("cannot read report '" + fromReport + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      original = report::parse(buf.str());
      if (!original->contains("config")) throw ConfigError("report has no embedded config");
      cfg = config_from_json((*original)["config"]);
    } else if (app.get_subcommands().empty()) {
      err << app.help();
      return 2;
    } else {
      cfg.command = app.get_subcommands().front()->get_name();
    }

    Outcome result = execute(cfg);
    if (original) {
      result.doc["reproduced"] = original->value("verdict", Json()) == result.doc["verdict"];
    }
    if (format.empty()) format = outPath.empty() ? "text" : "structured";
    std::string rendered;
    if (format == "structured") {
      rendered = report::dump_structured(result.doc);
    } else if (cfg.command == "table") {
      rendered = render_table_text(result.doc);
    } else {
      rendered = report::dump_text(result.doc);
    }
    if (outPath.empty()) {
      out << rendered;
    } else {
      std::ofstream file(outPath);
      if (!file) throw ConfigError("cannot write '" + outPath + "'");
      file << rendered;
      out << "verdict: " << result.doc["verdict"].get<std::string>() << "\n";
    }
    return result.exitCode;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownKernel& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParamOutOfRange& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ExponentOrderViolation& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ExponentOutOfScope& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisViolated& e) {
    err << "error: hypothesis violated: " << e.what() << "\n";
    return 2;
  } catch (const SideConditionViolated& e) {
    err << "error: side condition violated: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace splitkernel::cli
