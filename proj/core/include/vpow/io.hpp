#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vpow/asymptotics.hpp"
#include "vpow/engine.hpp"
#include "vpow/measures.hpp"
#include "vpow/montecarlo.hpp"
#include "vpow/systems.hpp"

namespace vpow::io {

// ---- number rendering ----

enum class NumberStyle { Fraction, Decimal };

struct OutputOptions {
  NumberStyle style = NumberStyle::Fraction;
  int digits = 10;  // places after the point for Decimal
};

std::string render_number(const Rat& value, const OutputOptions& options);

// ---- input documents (JSON text) ----

std::string read_file(const std::string& path);

// {"type": "penrose-banzhaf" | "shapley-shubik" | "unanimity"} or
// {"type": "common-belief",
//  "atoms":    [{"location": "3/10", "mass": "1/4"}, ...],
//  "segments": [{"lower": "0", "upper": "1", "mass": "1/2"}, ...]}
// Rationals are strings like "3/10" or "0.3", or plain JSON integers.
BeliefMeasure measure_from_json_text(const std::string& text);
std::optional<BeliefMeasure> builtin_measure(std::string_view name);

// {"weights": ["3","2","1"], "quota": "4"} with exactly one of "quota" or
// "relative_quota".
WeightedVotingSystem system_from_json_text(const std::string& text);

// {"voters": 3, "winning": [[1,2], [1,3], [2,3], [1,2,3]]} with 1-based
// voter indices.
ExplicitVotingSystem family_from_json_text(const std::string& text);

// ---- power reports ----

struct LabeledReport {
  std::string system_label;
  std::string measure_label;
  PowerReport report;
  OutputOptions options;  // rendering style recorded in the document
};

std::string power_report_json(const PowerReport& report,
                              const std::string& system_label,
                              const std::string& measure_label,
                              const OutputOptions& options);
// Inverse of power_report_json: emitting the parsed report with the parsed
// options reproduces the document byte for byte.
LabeledReport power_report_from_json_text(const std::string& text);

std::string power_report_csv(const PowerReport& report,
                             const OutputOptions& options);
std::string power_report_table(const PowerReport& report,
                               const std::string& system_label,
                               const std::string& measure_label,
                               const OutputOptions& options);

// ---- convergence tables ----

std::string convergence_json(const asym::ConvergenceTable& table,
                             const std::string& measure_label);
std::string convergence_csv(const asym::ConvergenceTable& table);
std::string convergence_text(const asym::ConvergenceTable& table,
                             const std::string& measure_label);

// ---- sampling estimates ----

struct EstimateRow {
  mc::Estimate estimate;
  std::optional<Rat> exact;  // attached when an exact value was affordable
};

std::string estimates_json(std::span<const EstimateRow> rows,
                           const std::string& system_label,
                           const std::string& measure_label,
                           const OutputOptions& options);
std::string estimates_csv(std::span<const EstimateRow> rows,
                          const OutputOptions& options);
std::string estimates_table(std::span<const EstimateRow> rows,
                            const std::string& system_label,
                            const std::string& measure_label,
                            const OutputOptions& options);

// ---- pass/fail check lists (the validate command) ----

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::string checks_json(std::span<const CheckResult> checks);
std::string checks_text(std::span<const CheckResult> checks);

// ---- anonymous-rule detection results ----

std::string detection_json(const std::optional<WeightedVotingSystem>& rule,
                           const OutputOptions& options);
std::string detection_text(const std::optional<WeightedVotingSystem>& rule,
                           const OutputOptions& options);

}  // namespace vpow::io
