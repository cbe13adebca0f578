// Command-line front end: exact power analysis, convergence tables,
// Monte Carlo estimates and self-checks for weighted voting rules.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "vpow/asymptotics.hpp"
#include "vpow/engine.hpp"
#include "vpow/error.hpp"
#include "vpow/io.hpp"
#include "vpow/montecarlo.hpp"

namespace {

using vpow::BeliefMeasure;
using vpow::EngineOptions;
using vpow::Error;
using vpow::ErrorCategory;
using vpow::PowerReport;
using vpow::Quantity;
using vpow::Rat;
using vpow::WeightedVotingSystem;

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Parse: return 2;
    case ErrorCategory::Validation: return 3;
    case ErrorCategory::Domain: return 4;
    case ErrorCategory::Resource: return 5;
    case ErrorCategory::Internal: return 6;
  }
  return 6;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCategory::Resource, "cannot write " + output_path);
  }
  out << text;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

long long parse_count(const std::string& text) {
  try {
    size_t used = 0;
    long long value = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorCategory::Parse, "not an integer: \"" + text + "\"");
  }
}

// "11,101,1001" or "start:stop[:step]", all sizes >= 1.
std::vector<long long> parse_populations(const std::string& text) {
  std::vector<long long> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 2 && parts.size() != 3) {
      throw Error(ErrorCategory::Parse,
                  "population ranges look like start:stop or start:stop:step");
    }
    long long start = parse_count(parts[0]);
    long long stop = parse_count(parts[1]);
    long long step = parts.size() == 3 ? parse_count(parts[2]) : 1;
    if (step < 1) throw Error(ErrorCategory::Parse, "step must be positive");
    if (start < 1 || stop < start) {
      throw Error(ErrorCategory::Parse, "need 1 <= start <= stop");
    }
    if ((stop - start) / step + 1 > 100000) {
      throw Error(ErrorCategory::Resource, "population range has too many entries");
    }
    for (long long n = start; n <= stop; n += step) out.push_back(n);
  } else {
    for (const std::string& part : split(text, ',')) {
      out.push_back(parse_count(part));
    }
  }
  if (out.empty()) {
    throw Error(ErrorCategory::Parse, "no population sizes given");
  }
  for (long long n : out) {
    if (n < 1) {
      throw Error(ErrorCategory::Parse, "population sizes must be at least 1");
    }
  }
  return out;
}

// ---- shared option blocks ----

struct SystemArgs {
  std::string file;
  std::string weights;
  std::string quota;
  std::string relative_quota;
  long long simple = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--system", file, "system JSON file");
    cmd->add_option("--weights", weights,
                    "inline comma-separated weights, e.g. 3,2,1");
    cmd->add_option("--quota", quota, "absolute quota for --weights");
    cmd->add_option("--relative-quota", relative_quota,
                    "relative quota in (0,1] for --weights");
    cmd->add_option("--simple", simple,
                    "unit-weight simple majority with this many voters");
  }

  WeightedVotingSystem build(std::string& label) const {
    const int sources = (!file.empty()) + (!weights.empty()) + (simple != 0);
    if (sources != 1) {
      throw Error(ErrorCategory::Parse,
                  "specify the system exactly one way: --system, --weights "
                  "or --simple");
    }
    if (file.empty() && weights.empty()) {
      if (simple < 1) {
        throw Error(ErrorCategory::Parse,
                    "--simple needs a positive voter count");
      }
      label = "simple-majority(" + std::to_string(simple) + ")";
      return vpow::simple_majority(simple);
    }
    if (!file.empty()) {
      if (!quota.empty() || !relative_quota.empty()) {
        throw Error(ErrorCategory::Parse,
                    "--quota/--relative-quota only combine with --weights");
      }
      label = file;
      return vpow::io::system_from_json_text(vpow::io::read_file(file));
    }

    std::vector<Rat> parsed;
    for (const std::string& part : split(weights, ',')) {
      parsed.push_back(vpow::parse_rat(part));
    }
    std::string shown = "[" + weights + "]";
    if (quota.empty() == relative_quota.empty()) {
      throw Error(ErrorCategory::Parse,
                  "--weights needs exactly one of --quota and "
                  "--relative-quota");
    }
    if (!quota.empty()) {
      label = shown + " quota " + quota;
      return WeightedVotingSystem(std::move(parsed), vpow::parse_rat(quota));
    }
    label = shown + " relative quota " + relative_quota;
    return WeightedVotingSystem::from_relative_quota(
        std::move(parsed), vpow::parse_rat(relative_quota));
  }
};

struct MeasureArgs {
  std::string selector = "penrose-banzhaf";

  void attach(CLI::App* cmd) {
    cmd->add_option(
        "--measure", selector,
        "penrose-banzhaf, shapley-shubik, unanimity, or a measure JSON file");
  }

  BeliefMeasure build(std::string& label) const {
    if (auto builtin = vpow::io::builtin_measure(selector)) {
      label = selector;
      return *builtin;
    }
    label = selector;
    return vpow::io::measure_from_json_text(vpow::io::read_file(selector));
  }
};

struct OutputArgs {
  std::string format = "table";
  std::string numbers = "fraction";
  int digits = 10;
  std::string output;

  void attach(CLI::App* cmd, const std::vector<std::string>& formats) {
    format = formats.front();
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    cmd->add_option("--numbers", numbers, "how to print exact values")
        ->check(CLI::IsMember({"fraction", "decimal"}))
        ->capture_default_str();
    cmd->add_option("--digits", digits, "decimal places for --numbers decimal")
        ->check(CLI::Range(1, 50))
        ->capture_default_str();
    cmd->add_option("-o,--output", output, "write to a file instead of stdout");
  }

  vpow::io::OutputOptions options() const {
    vpow::io::OutputOptions out;
    out.style = numbers == "decimal" ? vpow::io::NumberStyle::Decimal
                                     : vpow::io::NumberStyle::Fraction;
    out.digits = digits;
    return out;
  }
};

Quantity parse_quantity(const std::string& name) {
  if (auto q = vpow::quantity_from_string(name)) return *q;
  throw Error(ErrorCategory::Parse,
              "unknown quantity \"" + name +
                  "\" (expected DPlus, DMinus, D, SPlus, SMinus, S or E)");
}

// ---- the validate command's check list ----

bool same_power(const vpow::VoterPower& a, const vpow::VoterPower& b) {
  return a.decisive_plus == b.decisive_plus &&
         a.decisive_minus == b.decisive_minus && a.decisive == b.decisive &&
         a.success_plus == b.success_plus &&
         a.success_minus == b.success_minus && a.success == b.success;
}

std::vector<vpow::io::CheckResult> run_validation(
    const WeightedVotingSystem& system,
    const std::vector<std::pair<std::string, BeliefMeasure>>& measures,
    const EngineOptions& options) {
  std::vector<vpow::io::CheckResult> checks;
  auto add = [&](std::string name, bool passed, std::string detail = "") {
    checks.push_back({std::move(name), passed, std::move(detail)});
  };
  const long long n = system.voters();

  // Independent per-coalition enumeration, shared by several checks.
  vpow::CoalitionCounts counts = enumerate_coalition_counts(system, options);

  for (const auto& [name, measure] : measures) {
    PowerReport fast = analyze(system, measure, options);
    PowerReport slow = brute_force_analyze(system, measure, options);
    bool equal = fast.efficiency == slow.efficiency;
    for (long long v = 0; equal && v < n; ++v) {
      equal = same_power(fast.per_voter[static_cast<size_t>(v)],
                         slow.per_voter[static_cast<size_t>(v)]);
    }
    add("engine matches full enumeration under " + name, equal,
        equal ? "all voters, exact" : "results differ");

    vpow::SizeKernel kernel = size_kernel(measure, n);
    vpow::SizeKernel next = size_kernel(measure, n + 1);
    Rat total(0);
    for (long long k = 0; k <= n; ++k) {
      total += Rat(vpow::binomial(static_cast<unsigned long>(n),
                                  static_cast<unsigned long>(k))) *
               kernel.values[static_cast<size_t>(k)];
    }
    add("size kernel normalizes under " + name, total == 1,
        "sum " + vpow::to_fraction_string(total));

    bool symmetric = true;
    for (long long k = 0; k <= n; ++k) {
      symmetric = symmetric && kernel.values[static_cast<size_t>(k)] ==
                                   kernel.values[static_cast<size_t>(n - k)];
    }
    add("size kernel symmetric under " + name, symmetric);

    bool pascal = true;
    for (long long k = 0; k <= n; ++k) {
      pascal = pascal && kernel.values[static_cast<size_t>(k)] ==
                             next.values[static_cast<size_t>(k)] +
                                 next.values[static_cast<size_t>(k + 1)];
    }
    add("size kernel consistent between N and N+1 under " + name, pascal);

    bool dummies_ok = true;
    for (long long v = 0; v < n; ++v) {
      if (sgn(system.weights()[static_cast<size_t>(v)]) == 0) {
        dummies_ok = dummies_ok &&
                     fast.per_voter[static_cast<size_t>(v)].decisive == 0;
      }
    }
    add("zero-weight voters are never decisive under " + name, dummies_ok);

    if (measure.is_point_mass_at(vpow::make_rat(1, 2))) {
      bool identity = true;
      for (const vpow::VoterPower& p : fast.per_voter) {
        identity = identity &&
                   p.success == vpow::make_rat(1, 2) + p.decisive / 2;
      }
      add("success is half plus half the decisiveness under " + name,
          identity);
    }
    if (measure.is_uniform_on_unit_interval()) {
      Rat sum(0);
      for (const vpow::VoterPower& p : fast.per_voter) sum += p.decisive;
      add("decisiveness sums to 1 under " + name, sum == 1,
          "sum " + vpow::to_fraction_string(sum));
    }
  }

  bool bijection = true;
  for (long long v = 0; bijection && v < n; ++v) {
    vpow::Int plus(0), minus(0);
    for (long long k = 0; k <= n; ++k) {
      plus += counts.swing_plus[static_cast<size_t>(v)][static_cast<size_t>(k)];
      minus +=
          counts.swing_minus[static_cast<size_t>(v)][static_cast<size_t>(k)];
    }
    bijection = plus == minus &&
                plus == size_profile(system, v + 1, options).swing_plus_total();
  }
  add("negative swings match positive swings one-to-one", bijection);

  return checks;
}

// ---- command handlers ----

int run_analyze(const SystemArgs& system_args, const MeasureArgs& measure_args,
                const OutputArgs& output_args) {
  std::string system_label, measure_label;
  WeightedVotingSystem system = system_args.build(system_label);
  BeliefMeasure measure = measure_args.build(measure_label);
  PowerReport report = analyze(system, measure);
  const vpow::io::OutputOptions options = output_args.options();

  std::string text;
  if (output_args.format == "json") {
    text = vpow::io::power_report_json(report, system_label, measure_label,
                                       options);
  } else if (output_args.format == "csv") {
    text = vpow::io::power_report_csv(report, options);
  } else {
    text = vpow::io::power_report_table(report, system_label, measure_label,
                                        options);
  }
  emit(text, output_args.output);
  return 0;
}

int run_validate(const SystemArgs& system_args, const std::string& extra_measure,
                 int max_voters, const OutputArgs& output_args) {
  std::string system_label;
  WeightedVotingSystem system = system_args.build(system_label);
  if (system.voters() > max_voters) {
    throw Error(ErrorCategory::Resource,
                "validate enumerates all coalitions and is capped at " +
                    std::to_string(max_voters) +
                    " voters (raise --max-voters up to 20 if you mean it)");
  }
  EngineOptions options;
  options.max_enumeration_voters = max_voters;

  std::vector<std::pair<std::string, BeliefMeasure>> measures = {
      {"penrose-banzhaf", BeliefMeasure::penrose_banzhaf()},
      {"shapley-shubik", BeliefMeasure::shapley_shubik()},
      {"unanimity", BeliefMeasure::unanimity()},
  };
  if (!extra_measure.empty()) {
    MeasureArgs extra;
    extra.selector = extra_measure;
    std::string label;
    BeliefMeasure measure = extra.build(label);
    if (!vpow::io::builtin_measure(extra_measure)) {
      measures.emplace_back(label, std::move(measure));
    }
  }

  std::vector<vpow::io::CheckResult> checks =
      run_validation(system, measures, options);
  bool all = true;
  for (const vpow::io::CheckResult& c : checks) all = all && c.passed;

  std::string text = output_args.format == "json"
                         ? vpow::io::checks_json(checks)
                         : vpow::io::checks_text(checks);
  emit(text, output_args.output);
  return all ? 0 : 1;
}

int run_converge(const MeasureArgs& measure_args, const std::string& quantity,
                 bool simple, const std::string& relative_quota,
                 const std::string& populations, long long exact_cap,
                 const OutputArgs& output_args) {
  vpow::asym::ConvergenceRequest request;
  request.quantity = parse_quantity(quantity);
  std::string measure_label;
  request.measure = measure_args.build(measure_label);
  request.simple_majority = simple;
  if (simple != relative_quota.empty()) {
    throw Error(ErrorCategory::Parse,
                "pick exactly one of --simple and --relative-quota");
  }
  if (!relative_quota.empty()) {
    request.relative_quota = vpow::parse_rat(relative_quota);
  }
  request.voter_counts = parse_populations(populations);
  request.exact_voter_cap = exact_cap;

  vpow::asym::ConvergenceTable table = convergence_table(request);

  std::string text;
  if (output_args.format == "json") {
    text = vpow::io::convergence_json(table, measure_label);
  } else if (output_args.format == "csv") {
    text = vpow::io::convergence_csv(table);
  } else {
    text = vpow::io::convergence_text(table, measure_label);
  }
  emit(text, output_args.output);
  return 0;
}

int run_sample(const SystemArgs& system_args, const MeasureArgs& measure_args,
               long long samples, std::uint64_t seed,
               const std::vector<long long>& voters,
               const std::vector<std::string>& quantities,
               bool allow_asymmetric, const std::string& exact_mode,
               const OutputArgs& output_args) {
  std::string system_label, measure_label;
  WeightedVotingSystem system = system_args.build(system_label);
  BeliefMeasure measure = measure_args.build(measure_label);

  vpow::mc::EstimateRequest request;
  request.samples = samples;
  request.seed = seed;
  request.voters = voters;
  for (const std::string& q : quantities) {
    request.quantities.push_back(parse_quantity(q));
  }

  std::vector<vpow::mc::Estimate> estimates =
      vpow::mc::estimate(system, measure, request, allow_asymmetric);

  std::optional<PowerReport> exact;
  if (exact_mode != "off") {
    try {
      EngineOptions options;
      options.allow_asymmetric_measure = allow_asymmetric;
      exact = analyze(system, measure, options);
    } catch (const Error& e) {
      if (exact_mode == "on" || e.category() != ErrorCategory::Resource) {
        throw;
      }
      // auto mode: exact values were too expensive; carry on without them
    }
  }

  std::vector<vpow::io::EstimateRow> rows;
  rows.reserve(estimates.size());
  for (const vpow::mc::Estimate& est : estimates) {
    vpow::io::EstimateRow row;
    row.estimate = est;
    if (exact) {
      row.exact = report_quantity(*exact, est.quantity,
                                  est.voter == 0 ? 1 : est.voter);
    }
    rows.push_back(std::move(row));
  }

  const vpow::io::OutputOptions options = output_args.options();
  std::string text;
  if (output_args.format == "json") {
    text = vpow::io::estimates_json(rows, system_label, measure_label, options);
  } else if (output_args.format == "csv") {
    text = vpow::io::estimates_csv(rows, options);
  } else {
    text = vpow::io::estimates_table(rows, system_label, measure_label, options);
  }
  emit(text, output_args.output);
  return 0;
}

int run_invariant_check(const std::string& family_path,
                        const OutputArgs& output_args) {
  vpow::ExplicitVotingSystem family =
      vpow::io::family_from_json_text(vpow::io::read_file(family_path));
  std::optional<WeightedVotingSystem> rule = detect_anonymous_rule(family);

  const vpow::io::OutputOptions options = output_args.options();
  std::string text = output_args.format == "json"
                         ? vpow::io::detection_json(rule, options)
                         : vpow::io::detection_text(rule, options);
  emit(text, output_args.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and stochastic power analysis of weighted voting rules"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "1.0.0");

  // analyze
  auto* analyze_cmd =
      app.add_subcommand("analyze", "exact power report for a system");
  SystemArgs analyze_system;
  MeasureArgs analyze_measure;
  OutputArgs analyze_output;
  analyze_system.attach(analyze_cmd);
  analyze_measure.attach(analyze_cmd);
  analyze_output.attach(analyze_cmd, {"table", "csv", "json"});

  // validate
  auto* validate_cmd = app.add_subcommand(
      "validate", "cross-check the engine against full enumeration");
  SystemArgs validate_system;
  OutputArgs validate_output;
  std::string validate_measure;
  int validate_max_voters = 16;
  validate_system.attach(validate_cmd);
  validate_cmd->add_option("--measure", validate_measure,
                           "extra measure to include in the checks");
  validate_cmd
      ->add_option("--max-voters", validate_max_voters,
                   "refuse systems larger than this")
      ->check(CLI::Range(1, 20))
      ->capture_default_str();
  validate_output.attach(validate_cmd, {"text", "json"});

  // converge
  auto* converge_cmd = app.add_subcommand(
      "converge", "unit-rule quantities against their population limits");
  MeasureArgs converge_measure;
  OutputArgs converge_output;
  std::string converge_quantity = "E";
  std::string converge_relative_quota;
  std::string converge_populations;
  bool converge_simple = false;
  long long converge_exact_cap = 4096;
  converge_measure.attach(converge_cmd);
  converge_cmd
      ->add_option("--quantity", converge_quantity,
                   "DPlus, DMinus, D, SPlus, SMinus, S or E")
      ->capture_default_str();
  converge_cmd->add_flag("--simple", converge_simple,
                         "threshold floor(N/2)+1 per row");
  converge_cmd->add_option("--relative-quota", converge_relative_quota,
                           "fixed relative quota in (0,1]");
  converge_cmd
      ->add_option("--n", converge_populations,
                   "population sizes: 11,101,1001 or start:stop[:step]")
      ->required();
  converge_cmd
      ->add_option("--exact-cap", converge_exact_cap,
                   "largest population analyzed exactly")
      ->capture_default_str();
  converge_output.attach(converge_cmd, {"table", "csv", "json"});

  // sample
  auto* sample_cmd = app.add_subcommand(
      "sample", "Monte Carlo estimates of the report quantities");
  SystemArgs sample_system;
  MeasureArgs sample_measure;
  OutputArgs sample_output;
  long long sample_samples = 100000;
  std::uint64_t sample_seed = 1;
  std::vector<long long> sample_voters;
  std::vector<std::string> sample_quantities;
  bool sample_allow_asymmetric = false;
  std::string sample_exact = "auto";
  sample_system.attach(sample_cmd);
  sample_measure.attach(sample_cmd);
  sample_cmd->add_option("--samples", sample_samples, "number of samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sample_cmd->add_option("--seed", sample_seed, "random seed")
      ->capture_default_str();
  sample_cmd->add_option("--voter", sample_voters,
                         "restrict to these voters (repeatable)");
  sample_cmd->add_option("--quantity", sample_quantities,
                         "restrict to these quantities (repeatable)");
  sample_cmd->add_flag("--allow-asymmetric", sample_allow_asymmetric,
                       "sample from a measure that is not "
                       "reflection-symmetric");
  sample_cmd
      ->add_option("--exact", sample_exact,
                   "attach exact values: auto, on or off")
      ->check(CLI::IsMember({"auto", "on", "off"}))
      ->capture_default_str();
  sample_output.attach(sample_cmd, {"table", "csv", "json"});

  // invariant-check
  auto* invariant_cmd = app.add_subcommand(
      "invariant-check",
      "test whether an explicit winning family is anonymous");
  OutputArgs invariant_output;
  std::string invariant_family;
  invariant_cmd->add_option("--family", invariant_family, "family JSON file")
      ->required();
  invariant_output.attach(invariant_cmd, {"text", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: parse: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(analyze_cmd)) {
      return run_analyze(analyze_system, analyze_measure, analyze_output);
    }
    if (app.got_subcommand(validate_cmd)) {
      return run_validate(validate_system, validate_measure,
                          validate_max_voters, validate_output);
    }
    if (app.got_subcommand(converge_cmd)) {
      return run_converge(converge_measure, converge_quantity, converge_simple,
                          converge_relative_quota, converge_populations,
                          converge_exact_cap, converge_output);
    }
    if (app.got_subcommand(sample_cmd)) {
      return run_sample(sample_system, sample_measure, sample_samples,
                        sample_seed, sample_voters, sample_quantities,
                        sample_allow_asymmetric, sample_exact, sample_output);
    }
    if (app.got_subcommand(invariant_cmd)) {
      return run_invariant_check(invariant_family, invariant_output);
    }
    std::cerr << "error: internal: no command dispatched\n";
    return 6;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.category()) << ": " << e.what()
              << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 6;
  }
}
