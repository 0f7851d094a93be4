#include "adamlab/gradient_source.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "adamlab/errors.hpp"
#include "adamlab/rng.hpp"

namespace adamlab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_value(std::string_view token, const std::string& context) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw std::invalid_argument(context + ": cannot parse '" + std::string(token) + "'");
  return value;
}

}  // namespace

std::vector<double> load_gradient_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open gradient file: " + path.string());
  std::vector<double> values;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    values.push_back(parse_value(
        body, path.string() + ":" + std::to_string(line_no)));
  }
  if (in.bad()) throw IoError("read failure on gradient file: " + path.string());
  return values;
}

std::vector<double> materialize(const GradientSource& source, std::int64_t count) {
  if (count < 1) throw std::invalid_argument("gradient count must be >= 1");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(count));
  if (const auto* inv = std::get_if<InvSqrtSource>(&source)) {
    (void)inv;
    for (std::int64_t t = 1; t <= count; ++t)
      g.push_back(1.0 / std::sqrt(static_cast<double>(t)));
  } else if (const auto* c = std::get_if<ConstantSource>(&source)) {
    g.assign(static_cast<std::size_t>(count), c->value);
  } else if (const auto* u = std::get_if<UniformRandomSource>(&source)) {
    CellRng rng(u->seed);
    for (std::int64_t t = 0; t < count; ++t) g.push_back(rng.uniform(u->lo, u->hi));
  } else {
    const auto& f = std::get<FileSource>(source);
    g = load_gradient_file(f.path);
    if (std::ssize(g) < count)
      throw IoError("gradient file " + f.path.string() + " holds " +
                    std::to_string(g.size()) + " values, need " +
                    std::to_string(count));
    g.resize(static_cast<std::size_t>(count));
  }
  return g;
}

std::string describe(const GradientSource& source) {
  std::ostringstream out;
  if (std::holds_alternative<InvSqrtSource>(source)) {
    out << "invsqrt";
  } else if (const auto* c = std::get_if<ConstantSource>(&source)) {
    out << "constant:" << c->value;
  } else if (const auto* u = std::get_if<UniformRandomSource>(&source)) {
    out << "uniform:" << u->lo << "," << u->hi << "," << u->seed;
  } else {
    out << "file:" << std::get<FileSource>(source).path.string();
  }
  return out.str();
}

GradientSource parse_source_spec(std::string_view spec) {
  if (spec == "invsqrt") return InvSqrtSource{};
  if (spec.starts_with("constant:"))
    return ConstantSource{parse_value(spec.substr(9), "constant source")};
  if (spec.starts_with("uniform:")) {
    std::string_view rest = spec.substr(8);
    const auto c1 = rest.find(',');
    const auto c2 = rest.find(',', c1 == std::string_view::npos ? 0 : c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos)
      throw std::invalid_argument("uniform source needs lo,hi,seed");
    const double lo = parse_value(rest.substr(0, c1), "uniform lo");
    const double hi = parse_value(rest.substr(c1 + 1, c2 - c1 - 1), "uniform hi");
    std::uint64_t seed = 0;
    std::string_view seed_text = rest.substr(c2 + 1);
    auto [ptr, ec] =
        std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
    if (ec != std::errc{} || ptr != seed_text.data() + seed_text.size())
      throw std::invalid_argument("uniform source: bad seed");
    if (!(lo < hi)) throw std::invalid_argument("uniform source needs lo < hi");
    return UniformRandomSource{lo, hi, seed};
  }
  if (spec.starts_with("file:"))
    return FileSource{std::filesystem::path(std::string(spec.substr(5)))};
  throw std::invalid_argument("unknown gradient source spec: '" + std::string(spec) +
                              "' (expected invsqrt|constant:v|uniform:lo,hi,seed|file:path)");
}

}  // namespace adamlab
