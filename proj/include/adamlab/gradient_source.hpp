#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace adamlab {

/// g_t = 1/sqrt(t).
struct InvSqrtSource {};

struct ConstantSource {
  double value = 1.0;
};

/// g_t uniform on (lo, hi], drawn from mt19937_64(seed) with a fixed
/// engine-to-double mapping (see rng.hpp), so sequences are portable.
struct UniformRandomSource {
  double lo = 0.0;
  double hi = 1.0;
  std::uint64_t seed = 0;
};

/// One decimal value per line; '#' starts a comment line; blank lines are
/// skipped.
struct FileSource {
  std::filesystem::path path;
};

using GradientSource =
    std::variant<InvSqrtSource, ConstantSource, UniformRandomSource, FileSource>;

/// First `count` gradients of the source. Throws IoError when a file source
/// cannot supply them, std::invalid_argument on malformed content.
std::vector<double> materialize(const GradientSource& source, std::int64_t count);

std::string describe(const GradientSource& source);

/// "invsqrt" | "constant:<v>" | "uniform:<lo>,<hi>,<seed>" | "file:<path>"
GradientSource parse_source_spec(std::string_view spec);

std::vector<double> load_gradient_file(const std::filesystem::path& path);

}  // namespace adamlab
