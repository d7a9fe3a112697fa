#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nvsign::cli {

enum class Format { kCsv, kJson };

struct ExperimentConfig {
  // expand, forms, powersum, bfree, gaps, signs, rankin, nonvanish
  std::string command;
  // forms: list|warm|ingest; signs: window|scan|partial|dyadic;
  // nonvanish: witness|simultaneous|hatada|badset
  std::string action;
  std::vector<std::string> labels;

  std::optional<std::uint64_t> precision;
  std::optional<std::filesystem::path> cache_dir;
  std::vector<std::filesystem::path> forms_files;
  std::optional<Format> format;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> output;

  std::optional<std::uint64_t> n, x, y, H, from, to, count, r, s, D, M, q, a, K, j_min, j_max, x_min, x_max;
  std::optional<std::uint64_t> x_power, samples, grid_size, bound;
  std::optional<double> delta;
  std::vector<std::uint64_t> badset, x_grid, ns;
  bool badset_given = false;
  std::string set_spec = "prime-squares";
  std::optional<std::filesystem::path> rle;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitTheorem = 3;

// Parses argv into a config. Returns nullopt and sets exit_code after
// printing help or a parse error.
std::optional<ExperimentConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                           int& exit_code);

// Validates, runs, writes the report; returns the process exit code.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nvsign::cli
