#pragma once

// Rendering of computed values, sweep reports and self-test results as
// human tables, CSV or JSON. All text uses LF line endings.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "deginv/degeneration.hpp"

namespace deginv {

enum class OutputFormat { table, csv, json };

/// Throws DomainError on an unknown name.
OutputFormat parse_output_format(const std::string& name);

struct OutputSpec {
  OutputFormat format = OutputFormat::table;
  /// Empty means standard output.
  std::string destination;
  /// Significant decimal digits, 4..17.
  int precision = 12;

  static constexpr int kMinPrecision = 4;
  static constexpr int kMaxPrecision = 17;
  bool precision_valid() const { return precision >= kMinPrecision && precision <= kMaxPrecision; }
};

/// %.<precision>g; non-finite values print as nan / inf / -inf.
std::string format_number(double value, int precision);

/// Indented JSON with floats at the given precision. Non-finite floats are
/// written as null. Parsing the output and writing it again at the same
/// precision reproduces it byte for byte.
std::string write_json(const nlohmann::ordered_json& doc, int precision);

/// A named computation result with ordered numeric fields.
struct ValueRecord {
  std::string name;
  std::vector<std::pair<std::string, double>> fields;
};

std::string render_record(const ValueRecord& record, const OutputSpec& spec);

/// Family parameters as ordered key/value pairs for the sweep header.
nlohmann::ordered_json family_json(const SeparatingFamily& fam);
nlohmann::ordered_json family_json(const NonSeparatingFamily& fam);

std::string render_sweep(const SweepReport& report, const nlohmann::ordered_json& family,
                         const OutputSpec& spec);

struct SelftestGroup;
std::string render_selftest(const std::vector<SelftestGroup>& groups, const OutputSpec& spec);

}  // namespace deginv
