#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json_writer.hpp"
#include "schmidt_lens/analysis.hpp"
#include "schmidt_lens/error.hpp"
#include "schmidt_lens/verification.hpp"

namespace schmidt_lens::cli {

namespace {

constexpr double kThresholdAcceptance = 1e-8;

std::string fmt(double x) { return JsonWriter::format_double(x); }

// Reference column of the 3-dimensional two-local report.
double snac_reference_formula(double p) { return (2.0 - 8.0 * p * p) / 9.0; }

QuantumChannel load_custom(const RunConfig& config) {
  try {
    return load_channel_file(*config.channel_file);
  } catch (const Error& e) {
    throw UsageError("cannot use channel file '" + *config.channel_file + "': " + e.what());
  }
}

std::string family_label(const RunConfig& config) {
  return config.channel_file ? std::string("custom") : *config.family;
}

void write_sweep_json(JsonWriter& j, const RunConfig& config, const std::vector<SweepRecord>& records) {
  j.begin_object();
  j.field("command", "sweep").field("family", family_label(config)).field("d", config.d).field("r", config.r);
  j.field("grid", config.grid).field("seed", static_cast<std::size_t>(config.seed));
  j.key("records").begin_array();
  for (const auto& rec : records) {
    j.begin_object().field("parameter", rec.parameter).field("value", rec.value);
    j.field("verdict", to_token(rec.verdict)).end_object();
  }
  j.end_array();
  j.key("sign_changes").begin_array();
  for (const auto& change : sign_changes(records)) j.begin_array().value(change.lo).value(change.hi).end_array();
  j.end_array();
  j.end_object();
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.d < 2) throw UsageError("--d must be >= 2");
  if (!(c.tol > 0.0) || !std::isfinite(c.tol)) throw UsageError("--tol must be positive");
  const bool needs_r = c.command == Command::Sweep || c.command == Command::Threshold ||
                       (c.command == Command::Verify && c.suite == "relations");
  if (needs_r && (c.r < 1 || c.r >= c.d)) throw UsageError("--r must satisfy 1 <= r < d");
  if (c.family && c.channel_file) throw UsageError("--family and --channel-file are mutually exclusive");
  if (c.family && *c.family != "depolarizing" && *c.family != "dephasing") {
    throw UsageError("unknown family '" + *c.family + "'");
  }
  switch (c.command) {
    case Command::Sweep:
      if (!c.family && !c.channel_file) throw UsageError("sweep needs --family or --channel-file");
      if (c.grid < 2) throw UsageError("--grid must be >= 2");
      break;
    case Command::Threshold:
      if (!c.family) throw UsageError("threshold needs --family depolarizing|dephasing");
      if (c.criterion != "witness" && c.criterion != "ppt") throw UsageError("--criterion must be witness or ppt");
      if (c.criterion == "ppt" && *c.family != "depolarizing") {
        throw UsageError("the PPT threshold is defined for the depolarizing family");
      }
      break;
    case Command::Snac:
      if (c.family && *c.family != "depolarizing") throw UsageError("snac supports the depolarizing family");
      if (c.p_grid < 2 || c.q_grid < 2) throw UsageError("--p-grid and --q-grid must be >= 2");
      if (!(c.k > 0.0 && c.k <= 1.0)) throw UsageError("--k must lie in (0, 1]");
      break;
    case Command::Verify: {
      if (c.suite != "all") {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), c.suite) == names.end()) {
          throw UsageError("unknown suite '" + c.suite + "'");
        }
      }
      if (!(c.k > 0.0 && c.k <= 1.0)) throw UsageError("--k must lie in (0, 1]");
      break;
    }
  }
}

std::string sweep_report(const RunConfig& config) {
  std::vector<SweepRecord> records;
  if (config.channel_file) {
    const QuantumChannel ch = load_custom(config);
    if (!ch.is_square() || ch.d_in() != config.d) {
      throw UsageError("channel file dimension " + std::to_string(ch.d_in()) + " does not match --d");
    }
    records = snbc_witness_sweep(ch, config.r, config.grid, config.threads);
  } else {
    records = snbc_witness_sweep(parse_family(*config.family), config.d, config.r, config.grid, config.threads);
  }
  if (config.format == OutputFormat::Json) {
    JsonWriter j;
    write_sweep_json(j, config, records);
    return j.str() + "\n";
  }
  std::string csv = "parameter,value,verdict\n";
  for (const auto& rec : records) {
    csv += fmt(rec.parameter) + "," + fmt(rec.value) + "," + std::string(to_token(rec.verdict)) + "\n";
  }
  return csv;
}

std::string threshold_report(const RunConfig& config, bool* within_tolerance) {
  const Family family = parse_family(*config.family);
  double threshold = 0.0, analytic = 0.0;
  if (config.criterion == "ppt") {
    threshold = eb_ppt_threshold(config.d, config.tol);
    analytic = 1.0 / (static_cast<double>(config.d) + 1.0);
  } else {
    threshold = witness_crossing(family, config.d, config.r, config.tol);
    analytic = family == Family::Depolarizing ? isotropic_sn_threshold(config.d, config.r)
                                              : dephasing_sn_threshold(config.d, config.r);
  }
  // The PPT crossing of the isotropic family is the r = 1 boundary.
  const std::size_t r = config.criterion == "ppt" ? 1 : config.r;
  const double abs_error = std::abs(threshold - analytic);
  if (within_tolerance) *within_tolerance = abs_error <= kThresholdAcceptance;

  if (config.format == OutputFormat::Csv) {
    return "family,d,r,threshold,analytic,abs_error\n" + *config.family + "," + std::to_string(config.d) + "," +
           std::to_string(r) + "," + fmt(threshold) + "," + fmt(analytic) + "," + fmt(abs_error) + "\n";
  }
  JsonWriter j;
  j.begin_object();
  j.field("family", *config.family).field("d", config.d).field("r", r);
  j.field("threshold", threshold).field("analytic", analytic).field("abs_error", abs_error);
  j.end_object();
  return j.str() + "\n";
}

std::string snac_report(const RunConfig& config) {
  std::vector<SnacRecord> records;
  const bool custom = config.channel_file.has_value();
  if (custom) {
    const QuantumChannel ch = load_custom(config);
    if (!ch.is_square() || ch.d_in() != config.d) {
      throw UsageError("channel file dimension " + std::to_string(ch.d_in()) + " does not match --d");
    }
    records = snac_sweep([&](double) { return ch; }, config.d, config.k, config.p_grid, config.q_grid,
                         config.threads);
  } else {
    records = snac_sweep(config.d, config.k, config.p_grid, config.q_grid, config.threads);
  }
  // The reference column only exists for the 3-dimensional depolarizing study.
  const bool has_formula = !custom && config.d == 3;

  if (config.format == OutputFormat::Json) {
    JsonWriter j;
    j.begin_object();
    j.field("command", "snac").field("family", custom ? "custom" : "depolarizing").field("d", config.d);
    j.field("k", config.k).field("p_grid", config.p_grid).field("q_grid", config.q_grid);
    j.field("seed", static_cast<std::size_t>(config.seed));
    j.key("records").begin_array();
    for (const auto& rec : records) {
      j.begin_object().field("p", rec.parameter).field("min_eig", rec.value);
      j.key("formula");
      if (has_formula) {
        j.value(snac_reference_formula(rec.parameter));
      } else {
        j.null();
      }
      j.key("q_star").begin_array();
      for (double x : rec.q_star) j.value(x);
      j.end_array();
      j.field("verdict", to_token(rec.verdict)).end_object();
    }
    j.end_array().end_object();
    return j.str() + "\n";
  }
  std::string csv = "p,min_eig,formula,q_star\n";
  for (const auto& rec : records) {
    std::string q;
    for (std::size_t i = 0; i < rec.q_star.size(); ++i) q += (i ? ";" : "") + fmt(rec.q_star[i]);
    csv += fmt(rec.parameter) + "," + fmt(rec.value) + "," +
           (has_formula ? fmt(snac_reference_formula(rec.parameter)) : std::string()) + "," + q + "\n";
  }
  return csv;
}

std::string verify_report(const RunConfig& config, std::string& summary, bool* all_passed) {
  SuiteOptions options;
  options.seed = config.seed;
  options.threads = config.threads;
  options.d = config.d;
  options.r = config.r;
  options.k = config.k;
  std::vector<SuiteResult> results;
  if (config.suite == "all") {
    results = run_all_suites(options);
  } else {
    results.push_back(run_suite(config.suite, options));
  }
  bool passed = true;
  std::ostringstream text;
  for (const auto& s : results) {
    passed = passed && s.passed;
    text << (s.passed ? "PASS " : "FAIL ") << s.name << ": " << s.summary << "\n";
  }
  text << (passed ? "all suites passed" : "some suites failed") << " (seed " << config.seed << ")\n";
  summary = text.str();
  if (all_passed) *all_passed = passed;

  if (config.format == OutputFormat::Csv) {
    std::string csv = "suite,passed\n";
    for (const auto& s : results) csv += s.name + "," + (s.passed ? "true" : "false") + "\n";
    return csv;
  }
  JsonWriter j;
  j.begin_object();
  j.field("command", "verify").field("seed", static_cast<std::size_t>(config.seed)).field("passed", passed);
  j.key("suites").begin_array();
  for (const auto& s : results) {
    j.begin_object().field("name", s.name).field("passed", s.passed).field("summary", s.summary);
    j.key("metrics").begin_object();
    for (const auto& [name, value] : s.metrics) j.field(name, value);
    j.end_object().end_object();
  }
  j.end_array().end_object();
  return j.str() + "\n";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    std::string body;
    int code = kExitOk;
    switch (config.command) {
      case Command::Sweep: body = sweep_report(config); break;
      case Command::Threshold: {
        bool ok = false;
        body = threshold_report(config, &ok);
        if (!ok) {
          err << "threshold deviates from the analytic value by more than 1e-8\n";
          code = kExitFailure;
        }
        break;
      }
      case Command::Snac: body = snac_report(config); break;
      case Command::Verify: {
        std::string summary;
        bool ok = false;
        body = verify_report(config, summary, &ok);
        if (!ok) code = kExitFailure;
        if (config.output_path || config.format == OutputFormat::Csv) {
          out << summary;
          if (!config.output_path) return code;
        } else {
          err << summary;
        }
        break;
      }
    }
    if (config.output_path) {
      std::ofstream file(*config.output_path, std::ios::binary);
      if (!file) throw UsageError("cannot write " + *config.output_path);
      file << body;
    } else {
      out << body;
    }
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitFailure;
  }
}

int main_with_args(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schmidt-number analysis of quantum channels"};
  app.require_subcommand(1);

  RunConfig config;
  std::string family, channel_file, output, format;

  auto common = [&](CLI::App* sub, bool with_r) {
    sub->add_option("--d", config.d, "local dimension")->capture_default_str();
    if (with_r) sub->add_option("--r", config.r, "Schmidt number bound")->capture_default_str();
    sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
    sub->add_option("--tol", config.tol, "bisection tolerance")->capture_default_str();
    sub->add_option("--format", format, "csv or json (threshold defaults to json)")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "write the report here instead of stdout");
  };

  auto* sweep = app.add_subcommand("sweep", "witness value of a channel family's Choi state over [0, 1]");
  common(sweep, true);
  sweep->add_option("--family", family, "depolarizing or dephasing");
  sweep->add_option("--channel-file", channel_file, "JSON Kraus list of a fixed channel");
  sweep->add_option("--grid", config.grid, "grid points")->capture_default_str();

  auto* threshold = app.add_subcommand("threshold", "bisected threshold versus its closed form");
  common(threshold, true);
  threshold->add_option("--family", family, "depolarizing or dephasing")->required();
  threshold->add_option("--criterion", config.criterion, "witness or ppt")->capture_default_str();

  auto* snac = app.add_subcommand("snac", "two-local Lambda_k minimum eigenvalue sweep");
  common(snac, false);
  snac->add_option("--family", family, "depolarizing (default)");
  snac->add_option("--channel-file", channel_file, "JSON Kraus list of a fixed channel");
  snac->add_option("--k", config.k, "Lambda_k strength")->capture_default_str();
  snac->add_option("--p-grid", config.p_grid, "points on the p grid")->capture_default_str();
  snac->add_option("--q-grid", config.q_grid, "simplex lattice subdivisions")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the property and theorem suites");
  common(verify, true);
  verify->add_option("--suite", config.suite, "suite name or 'all'")->capture_default_str();
  verify->add_option("--k", config.k, "Lambda_k strength for the snac suite")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (sweep->parsed()) config.command = Command::Sweep;
  if (threshold->parsed()) config.command = Command::Threshold;
  if (snac->parsed()) config.command = Command::Snac;
  if (verify->parsed()) config.command = Command::Verify;
  if (!family.empty()) config.family = family;
  if (!channel_file.empty()) config.channel_file = channel_file;
  if (!output.empty()) config.output_path = output;
  if (format.empty()) format = config.command == Command::Threshold ? "json" : "csv";
  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;

  config.threads = 0;
  if (const char* env = std::getenv("SCHMIDT_LENS_THREADS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || parsed > 1024) {
      err << "usage error: SCHMIDT_LENS_THREADS must be a non-negative integer\n";
      return kExitUsage;
    }
    config.threads = static_cast<unsigned>(parsed);
  }
  return run(config, out, err);
}

}  // namespace schmidt_lens::cli
