#include "nppq/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <optional>
#include <fstream>
#include <limits>
#include <sstream>

#include "nppq/rng.hpp"

namespace nppq {

NppInstance make_instance(std::vector<std::int64_t> numbers,
                          std::uint64_t seed) {
  const int n = static_cast<int>(numbers.size());
  if (n < 1 || n > kMaxInstanceSize) {
    throw std::domain_error("instance size must be in [1, " +
                            std::to_string(kMaxInstanceSize) + "], got " +
                            std::to_string(n));
  }
  NppInstance inst;
  inst.n = n;
  inst.range_a = std::int64_t{1} << n;
  inst.seed = seed;
  inst.weights.reserve(numbers.size());
  for (const auto a : numbers) {
    if (a < 1 || a > inst.range_a) {
      throw std::domain_error("number " + std::to_string(a) +
                              " outside [1, " + std::to_string(inst.range_a) +
                              "]");
    }
    inst.weights.push_back(static_cast<double>(a) /
                           static_cast<double>(inst.range_a));
  }
  inst.numbers = std::move(numbers);
  return inst;
}

NppInstance generate_instance(int n, std::uint64_t seed) {
  if (n < 1 || n > kMaxInstanceSize) {
    throw std::domain_error("instance size must be in [1, " +
                            std::to_string(kMaxInstanceSize) + "], got " +
                            std::to_string(n));
  }
  Xoshiro256 rng(seed);
  const auto range = std::uint64_t{1} << n;
  std::vector<std::int64_t> numbers(static_cast<std::size_t>(n));
  for (auto& a : numbers) {
    a = static_cast<std::int64_t>(rng.uniform_int(1, range));
  }
  return make_instance(std::move(numbers), seed);
}

std::int64_t signed_sum(const NppInstance& inst, std::uint32_t b) {
  std::int64_t s = 0;
  for (int i = 0; i < inst.n; ++i) {
    s += ((b >> i) & 1U) ? -inst.numbers[i] : inst.numbers[i];
  }
  return s;
}

GroundTruth solve_exact(const NppInstance& inst) {
  if (inst.n < 1 || inst.n > kMaxInstanceSize) {
    throw std::domain_error("solve_exact: size out of range");
  }
  const std::uint32_t dim = 1U << inst.n;
  GroundTruth gt;
  gt.min_diff = std::numeric_limits<std::int64_t>::max();
  for (std::uint32_t b = 0; b < dim; ++b) {
    const std::int64_t d = std::abs(signed_sum(inst, b));
    if (d < gt.min_diff) {
      gt.min_diff = d;
      gt.optimal_bitstrings.clear();
    }
    if (d == gt.min_diff) gt.optimal_bitstrings.push_back(b);
  }
  gt.degeneracy = gt.optimal_bitstrings.size();
  gt.is_perfect = gt.min_diff <= 1;
  return gt;
}

ParseError::ParseError(std::size_t line, const std::string& field,
                       const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", field '" +
                         field + "': " + what),
      line_(line),
      field_(field) {}

std::string format_instances(const std::vector<NppInstance>& set) {
  std::ostringstream out;
  out << "npp v1\n";
  for (const auto& inst : set) {
    out << "n=" << inst.n << " seed=" << inst.seed << " kappa=1 numbers=";
    for (std::size_t i = 0; i < inst.numbers.size(); ++i) {
      if (i) out << ',';
      out << inst.numbers[i];
    }
    out << '\n';
  }
  return out.str();
}

void save_instances(const std::vector<NppInstance>& set,
                    const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << format_instances(set);
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

namespace {

template <typename Int>
Int parse_int(std::string_view text, std::size_t line,
              const std::string& field) {
  Int value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError(line, field, "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

NppInstance parse_line(std::string_view body, std::size_t line) {
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::int64_t>> numbers;
  bool kappa_seen = false;

  std::size_t pos = 0;
  while (pos < body.size()) {
    while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
    if (pos >= body.size()) break;
    auto end = body.find_first_of(" \t", pos);
    if (end == std::string_view::npos) end = body.size();
    const auto token = body.substr(pos, end - pos);
    pos = end;

    const auto eq = token.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line, std::string(token), "expected key=value");
    }
    const std::string key(token.substr(0, eq));
    const auto value = token.substr(eq + 1);
    if (key == "n") {
      n = parse_int<int>(value, line, key);
    } else if (key == "seed") {
      seed = parse_int<std::uint64_t>(value, line, key);
    } else if (key == "kappa") {
      if (value != "1") throw ParseError(line, key, "only kappa=1 is supported");
      kappa_seen = true;
    } else if (key == "numbers") {
      std::vector<std::int64_t> nums;
      std::size_t p = 0;
      while (p <= value.size()) {
        auto c = value.find(',', p);
        if (c == std::string_view::npos) c = value.size();
        nums.push_back(parse_int<std::int64_t>(value.substr(p, c - p), line, key));
        p = c + 1;
      }
      numbers = std::move(nums);
    } else {
      throw ParseError(line, key, "unknown field");
    }
  }

  if (!n) throw ParseError(line, "n", "missing");
  if (!seed) throw ParseError(line, "seed", "missing");
  if (!kappa_seen) throw ParseError(line, "kappa", "missing");
  if (!numbers) throw ParseError(line, "numbers", "missing");
  if (*n < 1 || *n > kMaxInstanceSize) {
    throw ParseError(line, "n", "out of range: " + std::to_string(*n));
  }
  if (static_cast<int>(numbers->size()) != *n) {
    throw ParseError(line, "numbers",
                     "expected " + std::to_string(*n) + " values, got " +
                         std::to_string(numbers->size()));
  }
  const std::int64_t range = std::int64_t{1} << *n;
  for (const auto a : *numbers) {
    if (a < 1 || a > range) {
      throw ParseError(line, "numbers",
                       "value " + std::to_string(a) + " outside [1, " +
                           std::to_string(range) + "]");
    }
  }
  return make_instance(std::move(*numbers), *seed);
}

}  // namespace

std::vector<NppInstance> parse_instances(const std::string& text) {
  std::vector<NppInstance> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view body(raw);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;
    if (!header) {
      if (body != "npp v1") {
        throw ParseError(line, "header", "expected 'npp v1'");
      }
      header = true;
      continue;
    }
    out.push_back(parse_line(body, line));
  }
  if (!header) throw ParseError(line, "header", "missing 'npp v1'");
  return out;
}

std::vector<NppInstance> load_instances(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_instances(ss.str());
}

}  // namespace nppq
