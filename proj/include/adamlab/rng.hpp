#pragma once

#include <cstdint>
#include <random>

namespace adamlab {

/// splitmix64 finalizer; good enough to decorrelate (campaign_seed, cell)
/// pairs before feeding them to mt19937_64.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Deterministic per-cell random stream. The mapping from engine output to
/// doubles is spelled out here rather than delegated to
/// std::uniform_real_distribution, whose output is implementation-defined;
/// this keeps traces bit-identical across standard libraries.
class CellRng {
 public:
  CellRng(std::uint64_t campaign_seed, std::uint64_t cell)
      : engine_(mix64(campaign_seed ^ mix64(cell))) {}

  explicit CellRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1]; never returns 0.
  double positive_unit() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on (lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * positive_unit(); }

  bool coin() { return (engine_() & 1ull) != 0; }

  /// Uniform integer in [1, n].
  std::int64_t index1(std::int64_t n) {
    return 1 + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(n));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace adamlab
