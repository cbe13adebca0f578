#include "vpow/io.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "vpow/asymptotics.hpp"
#include "vpow/engine.hpp"
#include "vpow/error.hpp"
#include "vpow/montecarlo.hpp"

using test_util::thrown_category;
using namespace vpow;

namespace {

const char* kMixtureJson = R"({
  "type": "common-belief",
  "atoms": [
    {"location": "3/10", "mass": "1/4"},
    {"location": "7/10", "mass": "1/4"}
  ],
  "segments": [
    {"lower": "0", "upper": "1", "mass": "1/2"}
  ]
})";

}  // namespace

TEST_CASE("number rendering honors the style options") {
  io::OutputOptions fractions;
  CHECK(io::render_number(make_rat(3, 8), fractions) == "3/8");
  io::OutputOptions decimals;
  decimals.style = io::NumberStyle::Decimal;
  decimals.digits = 3;
  CHECK(io::render_number(make_rat(3, 8), decimals) == "0.375");
  decimals.digits = 2;
  CHECK(io::render_number(make_rat(3, 8), decimals) == "0.38");
}

TEST_CASE("built-in measure names") {
  CHECK(io::builtin_measure("penrose-banzhaf").has_value());
  CHECK(io::builtin_measure("shapley-shubik").has_value());
  CHECK(io::builtin_measure("unanimity").has_value());
  CHECK_FALSE(io::builtin_measure("coin").has_value());
  CHECK(io::builtin_measure("penrose-banzhaf")->is_point_mass_at(
      make_rat(1, 2)));
}

TEST_CASE("measures parse from JSON") {
  BeliefMeasure m = io::measure_from_json_text(kMixtureJson);
  REQUIRE(m.atoms().size() == 2);
  REQUIRE(m.segments().size() == 1);
  CHECK(m.atoms()[0].location == make_rat(3, 10));
  CHECK(m.atoms()[0].mass == make_rat(1, 4));
  CHECK(m.segments()[0].mass == make_rat(1, 2));

  BeliefMeasure builtin = io::measure_from_json_text(
      R"({"type": "penrose-banzhaf"})");
  CHECK(builtin.is_point_mass_at(make_rat(1, 2)));

  // Decimal strings and bare integers are accepted in rational slots.
  BeliefMeasure decimals = io::measure_from_json_text(R"({
    "type": "common-belief",
    "atoms": [{"location": "0.5", "mass": 1}],
    "segments": []
  })");
  CHECK(decimals.is_point_mass_at(make_rat(1, 2)));
}

TEST_CASE("measure JSON rejections carry the parse category") {
  // Unknown keys are flagged rather than ignored.
  CHECK(thrown_category([] {
          io::measure_from_json_text(
              R"({"type": "penrose-banzhaf", "extra": 1})");
        }) == ErrorCategory::Parse);
  CHECK(thrown_category([] {
          io::measure_from_json_text(R"({"type": "nonsense"})");
        }) == ErrorCategory::Parse);
  CHECK(thrown_category([] { io::measure_from_json_text("not json"); }) ==
        ErrorCategory::Parse);
  // Floating JSON numbers are ambiguous; the reader demands strings.
  auto category = thrown_category([] {
    io::measure_from_json_text(R"({
      "type": "common-belief",
      "atoms": [{"location": 0.5, "mass": 1}],
      "segments": []
    })");
  });
  CHECK(category == ErrorCategory::Parse);
  // An invalid distribution parses fine but fails validation.
  CHECK(thrown_category([] {
          io::measure_from_json_text(R"({
            "type": "common-belief",
            "atoms": [{"location": "1/2", "mass": "1/3"}],
            "segments": []
          })");
        }) == ErrorCategory::Validation);
}

TEST_CASE("systems parse from JSON") {
  WeightedVotingSystem s = io::system_from_json_text(
      R"({"weights": ["3", "2", "1"], "quota": "4"})");
  CHECK(s.voters() == 3);
  CHECK(s.quota() == 4);

  WeightedVotingSystem rel = io::system_from_json_text(
      R"({"weights": [1, 1, 1], "relative_quota": "2/3"})");
  CHECK(rel.quota() == 2);

  CHECK(thrown_category([] {
          io::system_from_json_text(R"({"weights": [1, 1]})");
        }) == ErrorCategory::Parse);
  CHECK(thrown_category([] {
          io::system_from_json_text(
              R"({"weights": [1], "quota": "1", "relative_quota": "1"})");
        }) == ErrorCategory::Parse);
  CHECK(thrown_category([] {
          io::system_from_json_text(R"({"quota": "1"})");
        }) == ErrorCategory::Parse);
}

TEST_CASE("winning families parse from JSON") {
  ExplicitVotingSystem family = io::family_from_json_text(
      R"({"voters": 3, "winning": [[1,2],[1,3],[2,3],[1,2,3]]})");
  CHECK(family.voters() == 3);
  CHECK(family.winning_count() == 4);
  CHECK(thrown_category([] {
          io::family_from_json_text(R"({"voters": 3})");
        }) == ErrorCategory::Parse);
}

TEST_CASE("missing files raise parse errors") {
  CHECK(thrown_category([] {
          io::read_file("/nonexistent/path.json");
        }) == ErrorCategory::Parse);
}

TEST_CASE("power reports round-trip through JSON byte for byte") {
  WeightedVotingSystem s({Rat(3), Rat(2), Rat(1)}, Rat(4));
  PowerReport report = analyze(s, io::measure_from_json_text(kMixtureJson));
  io::OutputOptions options;
  std::string text =
      io::power_report_json(report, "[3,2,1] quota 4", "mixture", options);
  io::LabeledReport parsed = io::power_report_from_json_text(text);
  CHECK(parsed.system_label == "[3,2,1] quota 4");
  CHECK(parsed.measure_label == "mixture");
  CHECK(parsed.report.efficiency == report.efficiency);
  std::string again =
      io::power_report_json(parsed.report, parsed.system_label,
                            parsed.measure_label, parsed.options);
  CHECK(again == text);

  // The same round trip in decimal style keeps the digit count.
  io::OutputOptions decimals;
  decimals.style = io::NumberStyle::Decimal;
  decimals.digits = 12;
  std::string decimal_text =
      io::power_report_json(report, "s", "m", decimals);
  io::LabeledReport reparsed = io::power_report_from_json_text(decimal_text);
  CHECK(io::power_report_json(reparsed.report, "s", "m", reparsed.options) ==
        decimal_text);
}

TEST_CASE("power report CSV shape") {
  PowerReport report =
      analyze(simple_majority(3), BeliefMeasure::penrose_banzhaf());
  std::string csv = io::power_report_csv(report, io::OutputOptions{});
  CHECK(csv.rfind("voter,DPlus,DMinus,D,SPlus,SMinus,S,E\n", 0) == 0);
  CHECK(csv.find("1,1/4,1/4,1/2,3/8,3/8,3/4,1/2\n") != std::string::npos);
  // Header plus one line per voter.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("power report table mentions the labels") {
  PowerReport report =
      analyze(simple_majority(3), BeliefMeasure::penrose_banzhaf());
  std::string table =
      io::power_report_table(report, "simple-majority(3)", "penrose-banzhaf",
                             io::OutputOptions{});
  CHECK(table.find("simple-majority(3)") != std::string::npos);
  CHECK(table.find("penrose-banzhaf") != std::string::npos);
  CHECK(table.find("E = 1/2") != std::string::npos);
}

TEST_CASE("convergence emitters") {
  asym::ConvergenceRequest req;
  req.quantity = Quantity::E;
  req.measure = BeliefMeasure::shapley_shubik();
  req.relative_quota = make_rat(3, 5);
  req.voter_counts = {10, 100};
  asym::ConvergenceTable table = asym::convergence_table(req);

  std::string csv = io::convergence_csv(table);
  CHECK(csv.rfind("N,E,exact,limit,estimate,bound,gap\n", 0) == 0);
  CHECK(csv.find("10,") != std::string::npos);
  CHECK(csv.find("5/11") != std::string::npos);

  std::string json = io::convergence_json(table, "shapley-shubik");
  io::OutputOptions options;
  CHECK(json.find("\"shapley-shubik\"") != std::string::npos);
  CHECK(json.find("\"rows\"") != std::string::npos);

  std::string text = io::convergence_text(table, "shapley-shubik");
  CHECK(text.find("quantity: E") != std::string::npos);
}

TEST_CASE("estimate emitters") {
  WeightedVotingSystem s = simple_majority(3);
  mc::EstimateRequest req;
  req.samples = 1000;
  req.quantities = {Quantity::E};
  std::vector<mc::Estimate> estimates =
      mc::estimate(s, BeliefMeasure::penrose_banzhaf(), req);
  std::vector<io::EstimateRow> rows;
  io::EstimateRow row;
  row.estimate = estimates.front();
  row.exact = make_rat(1, 2);
  rows.push_back(row);

  io::OutputOptions options;
  std::string csv = io::estimates_csv(rows, options);
  CHECK(csv.rfind("quantity,voter,value,std_error,samples,seed,exact\n", 0) ==
        0);
  // System-level rows leave the voter column empty.
  CHECK(csv.find("E,,") != std::string::npos);
  CHECK(csv.find(",1/2\n") != std::string::npos);

  std::string table = io::estimates_table(rows, "maj3", "coin", options);
  CHECK(table.find("maj3") != std::string::npos);
  std::string json = io::estimates_json(rows, "maj3", "coin", options);
  CHECK(json.find("\"samples\": 1000") != std::string::npos);
}

TEST_CASE("check list emitters") {
  std::vector<io::CheckResult> checks = {
      {"first law", true, "all good"},
      {"second law", false, "violated"},
  };
  std::string text = io::checks_text(checks);
  CHECK(text.find("[PASS] first law: all good") != std::string::npos);
  CHECK(text.find("[FAIL] second law: violated") != std::string::npos);
  CHECK(text.find("1/2 checks passed") != std::string::npos);
  std::string json = io::checks_json(checks);
  CHECK(json.find("\"passed\": false") != std::string::npos);
}

TEST_CASE("detection emitters") {
  auto rule = detect_anonymous_rule(
      ExplicitVotingSystem::enumerate(simple_majority(3)));
  io::OutputOptions options;
  std::string text = io::detection_text(rule, options);
  CHECK(text.find("at least 2 of 3") != std::string::npos);
  std::string json = io::detection_json(rule, options);
  CHECK(json.find("\"anonymous\": true") != std::string::npos);
  CHECK(json.find("\"quota\"") != std::string::npos);

  std::string none_text = io::detection_text(std::nullopt, options);
  CHECK(none_text.find("not anonymous") != std::string::npos);
  CHECK(io::detection_json(std::nullopt, options).find("false") !=
        std::string::npos);
}
