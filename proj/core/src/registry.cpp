#include "nvsign/registry.hpp"

#include <algorithm>
#include <stdexcept>

#include "nvsign/errors.hpp"
#include "nvsign/newform_io.hpp"

namespace nvsign {

const std::vector<std::string>& fixture_labels() {
  static const std::vector<std::string> labels = {"delta", "w16", "w18", "w20", "w22", "w26", "cm32"};
  return labels;
}

bool is_fixture(const std::string& label) {
  const auto& l = fixture_labels();
  return std::find(l.begin(), l.end(), label) != l.end();
}

namespace {

int fixture_weight(const std::string& label) {
  if (label == "delta") return 12;
  if (label == "cm32") return 2;
  return std::stoi(label.substr(1));
}

}  // namespace

void FormRegistry::add(ModularForm form) {
  if (is_fixture(form.label()) || ingested_.contains(form.label())) {
    throw std::invalid_argument("form label '" + form.label() + "' is already registered");
  }
  const std::string label = form.label();
  ingested_.emplace(label, std::make_shared<const ModularForm>(std::move(form)));
}

void FormRegistry::ingest(const std::filesystem::path& path) {
  for (auto& f : ingest_newforms(path)) add(std::move(f));
}

bool FormRegistry::contains(const std::string& label) const {
  return is_fixture(label) || ingested_.contains(label);
}

std::vector<std::string> FormRegistry::labels() const {
  std::vector<std::string> out = fixture_labels();
  for (const auto& [label, f] : ingested_) out.push_back(label);
  return out;
}

ModularForm FormRegistry::compute_fixture(const std::string& label, std::size_t precision) {
  if (label == "cm32") return cm32_form(precision);
  if (!delta_ || delta_->precision() < precision) delta_ = delta_series(precision);
  return level1_eigenform(fixture_weight(label), precision, &*delta_);
}

FormPtr FormRegistry::get(const std::string& label, std::size_t precision) {
  if (auto it = ingested_.find(label); it != ingested_.end()) {
    if (it->second->precision() < precision) {
      throw InsufficientPrecision("form " + label + " carries coefficients below " +
                                  std::to_string(it->second->precision()) + ", need " + std::to_string(precision));
    }
    return it->second;
  }
  if (!is_fixture(label)) throw std::invalid_argument("unknown form label '" + label + "'");
  if (auto it = memo_.find(label); it != memo_.end() && it->second->precision() >= precision) return it->second;

  FormPtr out;
  if (cache_) {
    if (auto coeffs = cache_->load(label, precision)) {
      const bool cm = label == "cm32";
      out = std::make_shared<const ModularForm>(label, cm ? 32 : 1, fixture_weight(label), std::move(*coeffs), cm,
                                                CoefficientSource::kFullList);
    }
  }
  if (!out) {
    out = std::make_shared<const ModularForm>(compute_fixture(label, precision));
    if (cache_) cache_->store(label, out->coeffs());
  }
  memo_[label] = out;
  return out;
}

FormPair FormRegistry::pair(const std::string& f, const std::string& g, std::size_t precision) {
  return FormPair(get(f, precision), get(g, precision));
}

std::vector<std::filesystem::path> FormRegistry::warm(const std::vector<std::string>& labels, std::size_t precision) {
  if (!cache_) throw std::invalid_argument("warm: no cache directory configured");
  std::vector<std::filesystem::path> out;
  for (const auto& label : labels) {
    if (!is_fixture(label)) throw std::invalid_argument("warm: '" + label + "' is not a computable fixture");
    get(label, precision);
    // A cache hit from a larger file is fine; store at exactly P so the
    // (label, P) key exists.
    const auto path = cache_->path_for(label, precision);
    if (!std::filesystem::exists(path)) cache_->store(label, memo_.at(label)->truncated(precision).coeffs());
    out.push_back(path);
  }
  return out;
}

}  // namespace nvsign
