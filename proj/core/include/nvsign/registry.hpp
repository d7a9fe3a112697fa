#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nvsign/cache.hpp"
#include "nvsign/forms.hpp"

namespace nvsign {

// Labels of the built-in forms: level-1 eigenforms delta (k = 12), w16,
// w18, w20, w22, w26, and the level-32 CM form cm32.
const std::vector<std::string>& fixture_labels();
bool is_fixture(const std::string& label);

// Name -> form lookup over the built-in fixtures plus ingested newforms.
// Fixtures are computed on demand at the requested precision, memoized in
// process, and persisted through the optional coefficient cache.
class FormRegistry {
 public:
  FormRegistry() = default;
  explicit FormRegistry(std::optional<CoefficientCache> cache) : cache_(std::move(cache)) {}

  void add(ModularForm form);
  void ingest(const std::filesystem::path& path);

  bool contains(const std::string& label) const;
  std::vector<std::string> labels() const;

  // Throws std::invalid_argument for unknown labels and
  // InsufficientPrecision when an ingested form is too short.
  FormPtr get(const std::string& label, std::size_t precision);
  FormPair pair(const std::string& f, const std::string& g, std::size_t precision);

  // Computes and stores fixtures at precision P. Returns the cache files.
  std::vector<std::filesystem::path> warm(const std::vector<std::string>& labels, std::size_t precision);

 private:
  ModularForm compute_fixture(const std::string& label, std::size_t precision);

  std::optional<CoefficientCache> cache_;
  std::map<std::string, FormPtr> ingested_;
  std::map<std::string, FormPtr> memo_;
  std::optional<QSeries> delta_;
};

}  // namespace nvsign
