#include <cmath>
#include <limits>

#include "doctest.h"

#include "deginv/errors.hpp"
#include "deginv/report.hpp"
#include "deginv/selftest.hpp"

using namespace deginv;
using nlohmann::ordered_json;

namespace {

SweepReport sample_report() {
  SweepReport r;
  r.mode = DegenerationMode::nonseparating;
  r.samples = {{2.0, -20.123456789012345}, {3.0, -20.5}, {4.0, 1.0 / 3.0}};
  r.extrapolated_limit = -20.75;
  r.closed_form_rhs = -20.7500001;
  r.discrepancy = 1e-7;
  r.estimated_order = std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("output format names") {
  CHECK(parse_output_format("json") == OutputFormat::json);
  CHECK(parse_output_format("csv") == OutputFormat::csv);
  CHECK(parse_output_format("table") == OutputFormat::table);
  CHECK_THROWS_AS(parse_output_format("xml"), DomainError);
  OutputSpec spec;
  CHECK(spec.precision == 12);
  spec.precision = 3;
  CHECK_FALSE(spec.precision_valid());
  spec.precision = 17;
  CHECK(spec.precision_valid());
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.5, 12) == "0.5");
  CHECK(format_number(1.0 / 3.0, 4) == "0.3333");
  CHECK(format_number(std::numeric_limits<double>::infinity(), 6) == "inf");
}

TEST_CASE("sweep json layout and round trip") {
  const NonSeparatingFamily fam({0.0, 1.0}, {0.2, 0.3});
  for (int p : {4, 8, 12, 17}) {
    const OutputSpec spec{OutputFormat::json, "", p};
    const std::string text = render_sweep(sample_report(), family_json(fam), spec);
    const auto parsed = ordered_json::parse(text);
    CHECK(write_json(parsed, p) == text);
    std::vector<std::string> keys;
    for (const auto& [k, v] : parsed.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"mode", "family", "samples", "extrapolated_limit", "rhs",
                                           "discrepancy", "estimated_order"});
    CHECK(parsed["mode"] == "nonseparating");
    CHECK(parsed["estimated_order"].is_null());
    CHECK(parsed["samples"].size() == 3);
    CHECK(parsed["samples"][0].contains("param"));
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.back() == '\n');
  }
}

TEST_CASE("sweep csv and table") {
  const SeparatingFamily fam{{0.0, 1.0}, {0.0, 1.5}};
  auto rep = sample_report();
  rep.mode = DegenerationMode::separating;
  const std::string csv = render_sweep(rep, family_json(fam), {OutputFormat::csv, "", 6});
  CHECK(csv.rfind("param,value\n2,-20.1235\n", 0) == 0);
  CHECK(csv.find("# discrepancy=1e-07\n") != std::string::npos);
  const std::string table = render_sweep(rep, family_json(fam), {OutputFormat::table, "", 6});
  CHECK(table.find("difference") != std::string::npos);
  CHECK(table.find("-0.376543") != std::string::npos);
}

TEST_CASE("records") {
  const ValueRecord rec{"delta1", {{"value", -7.25}}};
  CHECK(render_record(rec, {OutputFormat::csv, "", 12}) == "name,value\ndelta1,-7.25\n");
  const std::string json = render_record(rec, {OutputFormat::json, "", 12});
  CHECK(json == "{\n  \"name\": \"delta1\",\n  \"value\": -7.25\n}\n");
  CHECK(write_json(ordered_json::parse(json), 12) == json);
}

TEST_CASE("selftest manifest and fault injection") {
  const auto& names = selftest_group_names();
  CHECK(names == std::vector<std::string>{"even_characteristics", "odd_vanishing", "splitting",
                                          "sl2_invariance", "consistency_chain", "proof_identities"});
  const auto groups = run_selftest();
  REQUIRE(groups.size() == names.size());
  for (std::size_t k = 0; k < groups.size(); ++k) {
    CHECK(groups[k].name == names[k]);
    CHECK(groups[k].passed);
  }

  SelftestOptions faulty;
  const auto top = ThetaChar2::from_halves(1, 1, 1, 1);
  faulty.parity = [top](const ThetaChar2& c) { return c == top ? -1 : c.parity(); };
  const auto bad = run_selftest(faulty);
  CHECK_FALSE(bad[0].passed);
  for (std::size_t k = 1; k < bad.size(); ++k) CHECK(bad[k].passed);

  const std::string csv = render_selftest(bad, {OutputFormat::csv, "", 6});
  CHECK(csv.rfind("group,status,worst_residual\neven_characteristics,fail,", 0) == 0);
  const std::string json = render_selftest(groups, {OutputFormat::json, "", 6});
  CHECK(ordered_json::parse(json)["passed"] == true);
}

}
