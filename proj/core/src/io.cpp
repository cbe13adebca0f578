#include "vpow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "vpow/error.hpp"

namespace vpow::io {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& message) {
  throw Error(ErrorCategory::Parse, message);
}

ordered_json parse_document(const std::string& text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) parse_fail("malformed JSON document");
  return doc;
}

void expect_keys(const ordered_json& object,
                 std::initializer_list<std::string_view> allowed,
                 const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (std::string_view k : allowed) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) parse_fail("unknown key \"" + key + "\" in " + where);
  }
}

Rat rat_from_json(const ordered_json& value, const std::string& what) {
  if (value.is_string()) {
    try {
      return parse_rat(value.get<std::string>());
    } catch (const Error& e) {
      parse_fail(what + ": " + e.what());
    }
  }
  if (value.is_number_integer() || value.is_number_unsigned()) {
    return Rat(Int(value.dump(), 10));
  }
  if (value.is_number_float()) {
    parse_fail(what +
               ": floating JSON numbers lose precision; write the value as "
               "a string like \"3/10\"");
  }
  parse_fail(what + " must be a string like \"3/10\" or an integer");
}

long long int_from_json(const ordered_json& value, const std::string& what) {
  if (!value.is_number_integer() && !value.is_number_unsigned()) {
    parse_fail(what + " must be an integer");
  }
  return value.get<long long>();
}

std::string double_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_double_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8g", v);
  return buf;
}

// Simple aligned text table; the first column is left-aligned, the rest
// right-aligned.
std::string aligned_table(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return "";
  std::vector<size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      const std::string& cell = row[c];
      if (c == 0) {
        out += cell;
        out.append(widths[c] - cell.size(), ' ');
      } else {
        out.append(2 + widths[c] - cell.size(), ' ');
        out += cell;
      }
    }
    out += '\n';
  }
  return out;
}

const char* style_name(NumberStyle style) {
  return style == NumberStyle::Fraction ? "fraction" : "decimal";
}

}  // namespace

std::string render_number(const Rat& value, const OutputOptions& options) {
  if (options.style == NumberStyle::Fraction) return to_fraction_string(value);
  return to_decimal_string(value, options.digits);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::optional<BeliefMeasure> builtin_measure(std::string_view name) {
  if (name == "penrose-banzhaf") return BeliefMeasure::penrose_banzhaf();
  if (name == "shapley-shubik") return BeliefMeasure::shapley_shubik();
  if (name == "unanimity") return BeliefMeasure::unanimity();
  return std::nullopt;
}

BeliefMeasure measure_from_json_text(const std::string& text) {
  ordered_json doc = parse_document(text);
  if (!doc.is_object()) parse_fail("measure document must be a JSON object");
  if (!doc.contains("type") || !doc["type"].is_string()) {
    parse_fail("measure document needs a string \"type\"");
  }
  const std::string type = doc["type"].get<std::string>();

  if (auto builtin = builtin_measure(type)) {
    expect_keys(doc, {"type"}, "a \"" + type + "\" measure");
    return *builtin;
  }
  if (type != "common-belief") {
    parse_fail("unknown measure type \"" + type +
               "\" (expected penrose-banzhaf, shapley-shubik, unanimity or "
               "common-belief)");
  }

  expect_keys(doc, {"type", "atoms", "segments"}, "a common-belief measure");
  std::vector<Atom> atoms;
  if (doc.contains("atoms")) {
    if (!doc["atoms"].is_array()) parse_fail("\"atoms\" must be an array");
    for (const ordered_json& entry : doc["atoms"]) {
      if (!entry.is_object()) parse_fail("each atom must be an object");
      expect_keys(entry, {"location", "mass"}, "an atom");
      if (!entry.contains("location") || !entry.contains("mass")) {
        parse_fail("each atom needs \"location\" and \"mass\"");
      }
      atoms.push_back(Atom{rat_from_json(entry["location"], "atom location"),
                           rat_from_json(entry["mass"], "atom mass")});
    }
  }
  std::vector<Segment> segments;
  if (doc.contains("segments")) {
    if (!doc["segments"].is_array()) parse_fail("\"segments\" must be an array");
    for (const ordered_json& entry : doc["segments"]) {
      if (!entry.is_object()) parse_fail("each segment must be an object");
      expect_keys(entry, {"lower", "upper", "mass"}, "a segment");
      if (!entry.contains("lower") || !entry.contains("upper") ||
          !entry.contains("mass")) {
        parse_fail("each segment needs \"lower\", \"upper\" and \"mass\"");
      }
      segments.push_back(
          Segment{rat_from_json(entry["lower"], "segment lower bound"),
                  rat_from_json(entry["upper"], "segment upper bound"),
                  rat_from_json(entry["mass"], "segment mass")});
    }
  }
  return BeliefMeasure(std::move(atoms), std::move(segments));
}

WeightedVotingSystem system_from_json_text(const std::string& text) {
  ordered_json doc = parse_document(text);
  if (!doc.is_object()) parse_fail("system document must be a JSON object");
  expect_keys(doc, {"weights", "quota", "relative_quota"}, "a system document");
  if (!doc.contains("weights") || !doc["weights"].is_array() ||
      doc["weights"].empty()) {
    parse_fail("system document needs a nonempty \"weights\" array");
  }
  const bool has_quota = doc.contains("quota");
  const bool has_relative = doc.contains("relative_quota");
  if (has_quota == has_relative) {
    parse_fail("system document needs exactly one of \"quota\" and "
               "\"relative_quota\"");
  }

  std::vector<Rat> weights;
  weights.reserve(doc["weights"].size());
  for (const ordered_json& w : doc["weights"]) {
    weights.push_back(rat_from_json(w, "weight"));
  }
  if (has_quota) {
    return WeightedVotingSystem(std::move(weights),
                                rat_from_json(doc["quota"], "quota"));
  }
  return WeightedVotingSystem::from_relative_quota(
      std::move(weights), rat_from_json(doc["relative_quota"], "relative quota"));
}

ExplicitVotingSystem family_from_json_text(const std::string& text) {
  ordered_json doc = parse_document(text);
  if (!doc.is_object()) parse_fail("family document must be a JSON object");
  expect_keys(doc, {"voters", "winning"}, "a family document");
  if (!doc.contains("voters") || !doc.contains("winning")) {
    parse_fail("family document needs \"voters\" and \"winning\"");
  }
  const long long voters = int_from_json(doc["voters"], "\"voters\"");
  if (!doc["winning"].is_array()) parse_fail("\"winning\" must be an array");

  std::vector<std::vector<int>> winning;
  winning.reserve(doc["winning"].size());
  for (const ordered_json& coalition : doc["winning"]) {
    if (!coalition.is_array()) {
      parse_fail("each winning coalition must be an array of voter indices");
    }
    std::vector<int> ids;
    ids.reserve(coalition.size());
    for (const ordered_json& id : coalition) {
      ids.push_back(static_cast<int>(int_from_json(id, "voter index")));
    }
    winning.push_back(std::move(ids));
  }
  return ExplicitVotingSystem::from_coalition_lists(static_cast<int>(voters),
                                                    winning);
}

std::string power_report_json(const PowerReport& report,
                              const std::string& system_label,
                              const std::string& measure_label,
                              const OutputOptions& options) {
  ordered_json doc;
  doc["system"] = system_label;
  doc["measure"] = measure_label;
  doc["voters"] = report.voters;
  doc["numbers"] = style_name(options.style);
  if (options.style == NumberStyle::Decimal) doc["digits"] = options.digits;
  doc["E"] = render_number(report.efficiency, options);
  ordered_json per_voter = ordered_json::array();
  for (long long v = 1; v <= report.voters; ++v) {
    const VoterPower& p = report.per_voter[static_cast<size_t>(v - 1)];
    ordered_json row;
    row["voter"] = v;
    row["DPlus"] = render_number(p.decisive_plus, options);
    row["DMinus"] = render_number(p.decisive_minus, options);
    row["D"] = render_number(p.decisive, options);
    row["SPlus"] = render_number(p.success_plus, options);
    row["SMinus"] = render_number(p.success_minus, options);
    row["S"] = render_number(p.success, options);
    per_voter.push_back(std::move(row));
  }
  doc["per_voter"] = std::move(per_voter);
  return doc.dump(2) + "\n";
}

LabeledReport power_report_from_json_text(const std::string& text) {
  ordered_json doc = parse_document(text);
  if (!doc.is_object()) parse_fail("report document must be a JSON object");
  for (const char* key : {"system", "measure", "voters", "numbers", "E",
                          "per_voter"}) {
    if (!doc.contains(key)) {
      parse_fail(std::string("report document needs \"") + key + "\"");
    }
  }

  LabeledReport out;
  out.system_label = doc["system"].get<std::string>();
  out.measure_label = doc["measure"].get<std::string>();
  const std::string numbers = doc["numbers"].get<std::string>();
  if (numbers == "fraction") {
    out.options.style = NumberStyle::Fraction;
  } else if (numbers == "decimal") {
    out.options.style = NumberStyle::Decimal;
  } else {
    parse_fail("\"numbers\" must be \"fraction\" or \"decimal\"");
  }
  if (doc.contains("digits")) {
    out.options.digits = static_cast<int>(int_from_json(doc["digits"], "digits"));
  }

  out.report.voters = int_from_json(doc["voters"], "\"voters\"");
  out.report.efficiency = rat_from_json(doc["E"], "E");
  if (!doc["per_voter"].is_array() ||
      static_cast<long long>(doc["per_voter"].size()) != out.report.voters) {
    parse_fail("\"per_voter\" must list every voter exactly once");
  }
  out.report.per_voter.reserve(doc["per_voter"].size());
  for (const ordered_json& row : doc["per_voter"]) {
    VoterPower p;
    p.decisive_plus = rat_from_json(row.at("DPlus"), "DPlus");
    p.decisive_minus = rat_from_json(row.at("DMinus"), "DMinus");
    p.decisive = rat_from_json(row.at("D"), "D");
    p.success_plus = rat_from_json(row.at("SPlus"), "SPlus");
    p.success_minus = rat_from_json(row.at("SMinus"), "SMinus");
    p.success = rat_from_json(row.at("S"), "S");
    out.report.per_voter.push_back(std::move(p));
  }
  return out;
}

std::string power_report_csv(const PowerReport& report,
                             const OutputOptions& options) {
  std::string out = "voter,DPlus,DMinus,D,SPlus,SMinus,S,E\n";
  const std::string e = render_number(report.efficiency, options);
  for (long long v = 1; v <= report.voters; ++v) {
    const VoterPower& p = report.per_voter[static_cast<size_t>(v - 1)];
    out += std::to_string(v);
    for (const Rat* q : {&p.decisive_plus, &p.decisive_minus, &p.decisive,
                         &p.success_plus, &p.success_minus, &p.success}) {
      out += ',';
      out += render_number(*q, options);
    }
    out += ',';
    out += e;
    out += '\n';
  }
  return out;
}

std::string power_report_table(const PowerReport& report,
                               const std::string& system_label,
                               const std::string& measure_label,
                               const OutputOptions& options) {
  std::string out = "system:  " + system_label + "\n" +
                    "measure: " + measure_label + "\n" +
                    "E = " + render_number(report.efficiency, options) + "\n\n";
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"voter", "DPlus", "DMinus", "D", "SPlus", "SMinus", "S"});
  for (long long v = 1; v <= report.voters; ++v) {
    const VoterPower& p = report.per_voter[static_cast<size_t>(v - 1)];
    rows.push_back({std::to_string(v),
                    render_number(p.decisive_plus, options),
                    render_number(p.decisive_minus, options),
                    render_number(p.decisive, options),
                    render_number(p.success_plus, options),
                    render_number(p.success_minus, options),
                    render_number(p.success, options)});
  }
  return out + aligned_table(rows);
}

std::string convergence_json(const asym::ConvergenceTable& table,
                             const std::string& measure_label) {
  ordered_json doc;
  doc["quantity"] = to_string(table.quantity);
  doc["measure"] = measure_label;
  ordered_json rows = ordered_json::array();
  for (const asym::ConvergenceRow& row : table.rows) {
    ordered_json r;
    r["N"] = row.voters;
    r["value"] = row.value;
    if (row.exact) r["exact"] = to_fraction_string(*row.exact);
    r["limit"] = row.limit;
    r["gap"] = row.gap;
    if (row.estimate) r["estimate"] = *row.estimate;
    if (row.bound) r["bound"] = *row.bound;
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string convergence_csv(const asym::ConvergenceTable& table) {
  std::string out = std::string("N,") + to_string(table.quantity) +
                    ",exact,limit,estimate,bound,gap\n";
  for (const asym::ConvergenceRow& row : table.rows) {
    out += std::to_string(row.voters);
    out += ',';
    out += double_text(row.value);
    out += ',';
    if (row.exact) out += to_fraction_string(*row.exact);
    out += ',';
    out += double_text(row.limit);
    out += ',';
    if (row.estimate) out += double_text(*row.estimate);
    out += ',';
    if (row.bound) out += double_text(*row.bound);
    out += ',';
    out += double_text(row.gap);
    out += '\n';
  }
  return out;
}

std::string convergence_text(const asym::ConvergenceTable& table,
                             const std::string& measure_label) {
  std::string out = std::string("quantity: ") + to_string(table.quantity) +
                    "\nmeasure:  " + measure_label + "\n\n";
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"N", to_string(table.quantity), "limit", "estimate", "bound",
                  "gap"});
  for (const asym::ConvergenceRow& row : table.rows) {
    rows.push_back({std::to_string(row.voters), short_double_text(row.value),
                    short_double_text(row.limit),
                    row.estimate ? short_double_text(*row.estimate) : "",
                    row.bound ? short_double_text(*row.bound) : "",
                    short_double_text(row.gap)});
  }
  return out + aligned_table(rows);
}

std::string estimates_json(std::span<const EstimateRow> rows,
                           const std::string& system_label,
                           const std::string& measure_label,
                           const OutputOptions& options) {
  ordered_json doc;
  doc["system"] = system_label;
  doc["measure"] = measure_label;
  if (!rows.empty()) {
    doc["samples"] = rows.front().estimate.samples;
    doc["seed"] = rows.front().estimate.seed;
  }
  ordered_json list = ordered_json::array();
  for (const EstimateRow& row : rows) {
    ordered_json r;
    r["quantity"] = to_string(row.estimate.quantity);
    if (row.estimate.voter != 0) r["voter"] = row.estimate.voter;
    r["value"] = row.estimate.value;
    r["std_error"] = row.estimate.std_error;
    if (row.exact) r["exact"] = render_number(*row.exact, options);
    list.push_back(std::move(r));
  }
  doc["estimates"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::string estimates_csv(std::span<const EstimateRow> rows,
                          const OutputOptions& options) {
  std::string out = "quantity,voter,value,std_error,samples,seed,exact\n";
  for (const EstimateRow& row : rows) {
    out += to_string(row.estimate.quantity);
    out += ',';
    if (row.estimate.voter != 0) out += std::to_string(row.estimate.voter);
    out += ',';
    out += double_text(row.estimate.value);
    out += ',';
    out += double_text(row.estimate.std_error);
    out += ',';
    out += std::to_string(row.estimate.samples);
    out += ',';
    out += std::to_string(row.estimate.seed);
    out += ',';
    if (row.exact) out += render_number(*row.exact, options);
    out += '\n';
  }
  return out;
}

std::string estimates_table(std::span<const EstimateRow> rows,
                            const std::string& system_label,
                            const std::string& measure_label,
                            const OutputOptions& options) {
  std::string out = "system:  " + system_label + "\nmeasure: " + measure_label;
  if (!rows.empty()) {
    out += "\nsamples: " + std::to_string(rows.front().estimate.samples) +
           "   seed: " + std::to_string(rows.front().estimate.seed);
  }
  out += "\n\n";
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"quantity", "voter", "value", "std_error", "exact"});
  for (const EstimateRow& row : rows) {
    cells.push_back(
        {to_string(row.estimate.quantity),
         row.estimate.voter != 0 ? std::to_string(row.estimate.voter) : "-",
         short_double_text(row.estimate.value),
         short_double_text(row.estimate.std_error),
         row.exact ? render_number(*row.exact, options) : ""});
  }
  return out + aligned_table(cells);
}

std::string checks_json(std::span<const CheckResult> checks) {
  ordered_json doc;
  bool all = true;
  ordered_json list = ordered_json::array();
  for (const CheckResult& check : checks) {
    all = all && check.passed;
    ordered_json c;
    c["name"] = check.name;
    c["passed"] = check.passed;
    if (!check.detail.empty()) c["detail"] = check.detail;
    list.push_back(std::move(c));
  }
  doc["checks"] = std::move(list);
  doc["passed"] = all;
  return doc.dump(2) + "\n";
}

std::string checks_text(std::span<const CheckResult> checks) {
  std::string out;
  size_t passed = 0;
  for (const CheckResult& check : checks) {
    out += check.passed ? "[PASS] " : "[FAIL] ";
    out += check.name;
    if (!check.detail.empty()) {
      out += ": ";
      out += check.detail;
    }
    out += '\n';
    if (check.passed) ++passed;
  }
  out += std::to_string(passed) + "/" + std::to_string(checks.size()) +
         " checks passed\n";
  return out;
}

std::string detection_json(const std::optional<WeightedVotingSystem>& rule,
                           const OutputOptions& options) {
  ordered_json doc;
  doc["anonymous"] = rule.has_value();
  if (rule) {
    doc["voters"] = rule->voters();
    doc["quota"] = render_number(rule->quota(), options);
    ordered_json weights = ordered_json::array();
    for (const Rat& w : rule->weights()) {
      weights.push_back(render_number(w, options));
    }
    doc["weights"] = std::move(weights);
  }
  return doc.dump(2) + "\n";
}

std::string detection_text(const std::optional<WeightedVotingSystem>& rule,
                           const OutputOptions& options) {
  if (!rule) {
    return "not anonymous: winning depends on more than coalition size\n";
  }
  return "anonymous rule: coalitions of at least " +
         render_number(rule->quota(), options) + " of " +
         std::to_string(rule->voters()) + " voters win\n";
}

}  // namespace vpow::io
