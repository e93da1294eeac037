#pragma once

// The reproduction battery: one named check per acceptance criterion, each
// reporting a verdict, a human-readable detail line and its wall time.

#include <cstdint>
#include <string>
#include <vector>

namespace egeo::repro {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double millis = 0.0;
};

inline constexpr int kCheckCount = 11;

/// Runs check `id` in 1..kCheckCount.
CheckResult run_check(int id, std::uint64_t seed = kDefaultSeed);

std::vector<CheckResult> run_battery(std::uint64_t seed = kDefaultSeed);

}  // namespace egeo::repro
