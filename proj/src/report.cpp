#include "deginv/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "deginv/errors.hpp"
#include "deginv/selftest.hpp"

namespace deginv {

namespace {

using nlohmann::ordered_json;

const char* mode_name(DegenerationMode mode) {
  return mode == DegenerationMode::separating ? "separating" : "nonseparating";
}

void write_value(std::string& out, const ordered_json& v, int precision, int depth) {
  const std::string indent(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + ordered_json(key).dump() + ": ";
        write_value(out, item, precision, depth + 1);
      }
      out += "\n" + indent + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        write_value(out, item, precision, depth + 1);
      }
      out += "\n" + indent + "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_number(d, precision) : "null";
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(); }

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += (c + 1 < row.size()) ? pad(row[c], widths[c] + 2) : row[c];
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw DomainError("unknown output format '" + name + "'");
}

std::string format_number(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

std::string write_json(const ordered_json& doc, int precision) {
  std::string out;
  write_value(out, doc, precision, 0);
  out += "\n";
  return out;
}

std::string render_record(const ValueRecord& record, const OutputSpec& spec) {
  switch (spec.format) {
    case OutputFormat::json: {
      ordered_json doc;
      doc["name"] = record.name;
      for (const auto& [key, value] : record.fields) doc[key] = number_or_null(value);
      return write_json(doc, spec.precision);
    }
    case OutputFormat::csv: {
      std::string header = "name";
      std::string row = record.name;
      for (const auto& [key, value] : record.fields) {
        header += "," + key;
        row += "," + format_number(value, spec.precision);
      }
      return header + "\n" + row + "\n";
    }
    case OutputFormat::table:
    default: {
      std::vector<std::vector<std::string>> rows{{"name", record.name}};
      for (const auto& [key, value] : record.fields) {
        rows.push_back({key, format_number(value, spec.precision)});
      }
      return table(rows);
    }
  }
}

ordered_json family_json(const SeparatingFamily& fam) {
  ordered_json j;
  j["omega1_re"] = fam.omega1.re();
  j["omega1_im"] = fam.omega1.im();
  j["omega2_re"] = fam.omega2.re();
  j["omega2_im"] = fam.omega2.im();
  return j;
}

ordered_json family_json(const NonSeparatingFamily& fam) {
  ordered_json j;
  j["omega_re"] = fam.omega().re();
  j["omega_im"] = fam.omega().im();
  j["u_re"] = fam.u().real();
  j["u_im"] = fam.u().imag();
  j["x_offset"] = fam.x_offset();
  return j;
}

std::string render_sweep(const SweepReport& report, const ordered_json& family,
                         const OutputSpec& spec) {
  const int p = spec.precision;
  switch (spec.format) {
    case OutputFormat::json: {
      ordered_json doc;
      doc["mode"] = mode_name(report.mode);
      doc["family"] = family;
      doc["samples"] = ordered_json::array();
      for (const auto& s : report.samples) {
        ordered_json row;
        row["param"] = number_or_null(s.param);
        row["value"] = number_or_null(s.value);
        doc["samples"].push_back(row);
      }
      doc["extrapolated_limit"] = number_or_null(report.extrapolated_limit);
      doc["rhs"] = number_or_null(report.closed_form_rhs);
      doc["discrepancy"] = number_or_null(report.discrepancy);
      doc["estimated_order"] = number_or_null(report.estimated_order);
      return write_json(doc, p);
    }
    case OutputFormat::csv: {
      std::string out = "param,value\n";
      for (const auto& s : report.samples) {
        out += format_number(s.param, p) + "," + format_number(s.value, p) + "\n";
      }
      out += "# extrapolated_limit=" + format_number(report.extrapolated_limit, p) + "\n";
      out += "# rhs=" + format_number(report.closed_form_rhs, p) + "\n";
      out += "# discrepancy=" + format_number(report.discrepancy, p) + "\n";
      out += "# estimated_order=" + format_number(report.estimated_order, p) + "\n";
      return out;
    }
    case OutputFormat::table:
    default: {
      std::vector<std::vector<std::string>> rows{{"param", "value", "difference"}};
      for (std::size_t k = 0; k < report.samples.size(); ++k) {
        const auto& s = report.samples[k];
        const std::string diff =
            k == 0 ? "-" : format_number(s.value - report.samples[k - 1].value, p);
        rows.push_back({format_number(s.param, p), format_number(s.value, p), diff});
      }
      std::string out = "mode: " + std::string(mode_name(report.mode)) + "\n" + table(rows) + "\n";
      out += table({{"extrapolated_limit", format_number(report.extrapolated_limit, p)},
                    {"rhs", format_number(report.closed_form_rhs, p)},
                    {"discrepancy", format_number(report.discrepancy, p)},
                    {"estimated_order", format_number(report.estimated_order, p)}});
      return out;
    }
  }
}

std::string render_selftest(const std::vector<SelftestGroup>& groups, const OutputSpec& spec) {
  const bool all = std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.passed; });
  switch (spec.format) {
    case OutputFormat::json: {
      ordered_json doc;
      doc["groups"] = ordered_json::array();
      for (const auto& g : groups) {
        ordered_json row;
        row["name"] = g.name;
        row["passed"] = g.passed;
        row["worst_residual"] = number_or_null(g.worst_residual);
        doc["groups"].push_back(row);
      }
      doc["passed"] = all;
      return write_json(doc, spec.precision);
    }
    case OutputFormat::csv: {
      std::string out = "group,status,worst_residual\n";
      for (const auto& g : groups) {
        out += g.name + "," + (g.passed ? "pass" : "fail") + "," +
               format_number(g.worst_residual, spec.precision) + "\n";
      }
      return out;
    }
    case OutputFormat::table:
    default: {
      std::vector<std::vector<std::string>> rows{{"group", "status", "worst_residual"}};
      for (const auto& g : groups) {
        rows.push_back({g.name, g.passed ? "PASS" : "FAIL", format_number(g.worst_residual, spec.precision)});
      }
      return table(rows);
    }
  }
}

}  // namespace deginv
