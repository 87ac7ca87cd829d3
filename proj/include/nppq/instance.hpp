#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace nppq {

inline constexpr int kMaxInstanceSize = 20;

/// A number partitioning instance at bit density kappa = 1: n integers
/// drawn from {1, ..., 2^n}, plus their rescaled weights a_i / 2^n.
struct NppInstance {
  int n = 0;
  std::vector<std::int64_t> numbers;
  std::int64_t range_a = 0;      // A = 2^n
  std::vector<double> weights;   // numbers[i] / A, exact in binary
  std::uint64_t seed = 0;

  bool operator==(const NppInstance&) const = default;
};

/// Validates and completes an instance from raw numbers. Throws
/// std::domain_error if n is out of range or any a_i is outside [1, 2^n].
NppInstance make_instance(std::vector<std::int64_t> numbers,
                          std::uint64_t seed = 0);

/// Draws n i.i.d. integers uniform on {1, ..., 2^n} from Xoshiro256 seeded
/// with `seed`. Bit-identical across platforms.
NppInstance generate_instance(int n, std::uint64_t seed);

struct GroundTruth {
  std::int64_t min_diff = 0;
  /// Basis indices (bit i set <=> s_i = -1) attaining min_diff, ascending.
  /// Global-flip partners are both present.
  std::vector<std::uint32_t> optimal_bitstrings;
  std::size_t degeneracy = 0;
  bool is_perfect = false;
};

/// Exhaustive enumeration of all 2^n sign vectors in integer arithmetic.
GroundTruth solve_exact(const NppInstance& inst);

/// Signed difference sum_i s_i(b) a_i for basis index b.
std::int64_t signed_sum(const NppInstance& inst, std::uint32_t b);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& field,
             const std::string& what);
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

/// Instance bank file: header `npp v1`, then one instance per line as
/// `n=<int> seed=<int> kappa=1 numbers=<a1,a2,...>`. `#` starts a comment.
void save_instances(const std::vector<NppInstance>& set,
                    const std::filesystem::path& path);
std::vector<NppInstance> load_instances(const std::filesystem::path& path);

std::string format_instances(const std::vector<NppInstance>& set);
std::vector<NppInstance> parse_instances(const std::string& text);

}  // namespace nppq
