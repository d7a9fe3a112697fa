#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nvsign {

// Environment variable overriding the default cache directory.
inline constexpr const char* kCacheDirEnv = "NVSIGN_CACHE_DIR";

class CacheCorrupt : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// On-disk coefficient file, all integers little-endian:
//   "NVSC" | u32 version | u32 label length | label | u64 P | u64 checksum |
//   P records of (i32 signed byte length, magnitude bytes)
// The checksum is FNV-1a 64 over the record bytes. A negative length marks
// a negative value; zero is a record of length 0.
void write_coefficient_file(const std::filesystem::path& path, const std::string& label,
                            std::span<const mpz_class> coeffs);
// Throws CacheCorrupt on any header, length or checksum mismatch.
std::vector<mpz_class> read_coefficient_file(const std::filesystem::path& path, std::string* label = nullptr);

// Coefficient sequences keyed by (label, P). A request at precision P is
// served by any stored file with precision >= P, truncated. Writes go to a
// temporary file in the same directory followed by an atomic rename.
class CoefficientCache {
 public:
  explicit CoefficientCache(std::filesystem::path dir);

  // $NVSIGN_CACHE_DIR if set and nonempty.
  static std::optional<std::filesystem::path> env_dir();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& label, std::size_t precision) const;

  // Corrupted files are reported on stderr, removed, and treated as a miss.
  std::optional<std::vector<mpz_class>> load(const std::string& label, std::size_t precision) const;
  void store(const std::string& label, std::span<const mpz_class> coeffs) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace nvsign
