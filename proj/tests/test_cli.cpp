#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "deginv/invariants.hpp"
#include "deginv/report.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(DEGINV_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("compute values") {
  auto r = run("compute delta1 --omega-re 0 --omega-im 2 --format csv --precision 17");
  CHECK(r.code == 0);
  const double expected = deginv::delta_elliptic({{0.0, 2.0}});
  const auto comma = r.out.rfind(',');
  REQUIRE(comma != std::string::npos);
  CHECK(std::stod(r.out.substr(comma + 1)) == doctest::Approx(expected).epsilon(1e-15));

  r = run("compute theta1 --z-re 0 --z-im 0 --omega-re 0 --omega-im 1 --format json");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["abs"].get<double>()) < 1e-14);

  for (const char* args :
       {"compute eta --omega-im 1.3", "compute eta-norm --omega-re 3 --omega-im 0.2",
        "compute theta2 --a1 0 --a2 0 --b1 0 --b2 0 --o11-im 1 --o12-re 0.1 --o22-im 1.2",
        "compute chi10 --o11-im 1 --o12-re 0.1 --o22-im 1.2",
        "compute chi10-norm --o11-im 1 --o12-re 0.1 --o22-im 1.2",
        "compute green --omega-im 1 --u-re 0.2 --u-im 0.3", "compute logd --omega-im 1",
        "compute beta2 --o11-im 1 --o12-re 0.1 --o22-im 1.2", "compute lambda --h 2 --phi 0 --delta 1",
        "compute thmA --h1 1 --h2 1 --phi1 0 --phi2 0 --delta1 0 --delta2 0",
        "compute thmB --mode nonseparating --h 2 --phi 0 --delta 0 --gab 1",
        "compute wentworth --mode nonseparating --h 1 --phi 0 --delta 0 --gab 1"}) {
    CAPTURE(args);
    CHECK(run(args).code == 0);
  }
}

TEST_CASE("exit codes") {
  CHECK(run("compute green --omega-im 1 --u-re 0 --u-im 0").code == 3);
  CHECK(run("compute delta1 --omega-im -1").code == 2);
  CHECK(run("compute delta1").code == 2);
  CHECK(run("compute delta1 --omega-im 1 --eps 0.1").code == 2);
  CHECK(run("compute delta1 --omega-im 1 --precision 3").code == 2);
  CHECK(run("compute nonsense --omega-im 1").code == 2);
  CHECK(run("compute theta2 --a1 2 --a2 0 --b1 0 --b2 0 --o11-im 1 --o22-im 1").code == 2);
  CHECK(run("compute chi10-norm --o11-im 1 --o22-im 1.5").code == 4);
  CHECK(run("compute eta --omega-im 0.06 --max-radius 4").code == 4);
  CHECK(run("sweep separating --omega1-im 1 --omega2-im 1.5 --start 1e-2 --end 1e-5 --points 1").code == 5);
  CHECK(run("sweep separating --omega1-im 1 --omega2-im 1.5 --start 1 --end 1e-5 --points 4").code == 3);
  CHECK(run("sweep separating --omega1-im 1 --omega2-im 1.5 --at 1e-3", "DEGINV_THREADS=0").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("diagnostics stay off the data stream") {
  const auto r = run("compute green --omega-im 1 --u-re 0 --u-im 0 --format json");
  CHECK(r.code == 3);
  CHECK(r.out.empty());
}

TEST_CASE("sweep json round-trips byte for byte") {
  const auto r = run("sweep separating --omega1-im 1 --omega2-im 1.5 --start 1e-2 --end 1e-5 --points 7 "
                     "--format json",
                     "DEGINV_THREADS=2");
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::ordered_json::parse(r.out);
  CHECK(deginv::write_json(doc, 12) == r.out);
  CHECK(doc["discrepancy"].get<double>() < 1e-4);
  CHECK(doc["samples"].size() == 7);

  const auto csv = run("sweep nonseparating --omega-im 1 --u-re 0.2 --u-im 0.3 --at 2 --at 3 --at 4 --format csv");
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("param,value\n", 0) == 0);
  CHECK(csv.out.find("# discrepancy=") != std::string::npos);
}

TEST_CASE("selftest") {
  const auto r = run("selftest --format csv");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("group,status,worst_residual\neven_characteristics,pass,", 0) == 0);
}

}
