#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "nvsign/forms.hpp"

namespace nvsign {

// One line of the newform JSON-lines format:
//   {"label": str, "level": int, "weight": int, "cm": bool, "ap": {"2": int, ...}}
//   {"label": str, "level": int, "weight": int, "cm": bool, "an": [c_1, c_2, ...]}
// Integers may be JSON numbers or decimal strings (for values beyond 53 bits).
struct NewformRecord {
  std::string label;
  std::uint64_t level = 1;
  int weight = 2;
  bool cm = false;
  std::optional<std::map<std::uint64_t, mpz_class>> ap;
  std::optional<std::vector<mpz_class>> an;
};

NewformRecord parse_newform_record(std::string_view line);
std::string format_newform_record(const NewformRecord& record);

// Validates normalization and the Deligne bound, then fills coefficients.
// Prime-map records get precision equal to the first prime missing from
// the map.
ModularForm materialize(const NewformRecord& record);

// Blank lines are skipped. Errors carry the 1-based line number.
std::vector<ModularForm> ingest_newforms(const std::filesystem::path& path);

}  // namespace nvsign
