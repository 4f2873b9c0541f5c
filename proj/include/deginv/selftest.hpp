#pragma once

// Embedded property suite run by `deginv selftest`.

#include <functional>
#include <string>
#include <vector>

#include "deginv/theta.hpp"

namespace deginv {

struct SelftestGroup {
  std::string name;
  bool passed = false;
  double worst_residual = 0.0;
};

struct SelftestOptions {
  /// Parity used by the even-characteristic group. Replaceable so tests can
  /// inject a fault.
  std::function<int(const ThetaChar2&)> parity = [](const ThetaChar2& c) { return c.parity(); };
};

/// Group names in the order run_selftest reports them.
const std::vector<std::string>& selftest_group_names();

std::vector<SelftestGroup> run_selftest(const SelftestOptions& options = {});

}  // namespace deginv
