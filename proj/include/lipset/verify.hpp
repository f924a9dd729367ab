#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lipset/rational.hpp"

namespace lipset {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::string suite = "all";  // all | interval | density | builder | estimator | cantor
  Rational breakpoint_factor = Rational(1, 4);
  int breakpoint_count = 1000;
  int cantor_depth = 2;
};

// Seeded, deterministic run of the exact invariant suite: interval-algebra
// laws against a brute-force membership oracle, density monotonicity and
// scan exactness, the builder's envelope / breakpoint / certificate
// properties, oscillation enclosures, and the Cantor measure recursions and
// density windows.
std::vector<CheckResult> run_verification(const VerifyOptions& opts);

bool all_pass(const std::vector<CheckResult>& results);
std::string verification_json(const VerifyOptions& opts,
                              const std::vector<CheckResult>& results);

}  // namespace lipset
