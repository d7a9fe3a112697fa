#include "nvsign/newform_io.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "nvsign/arith.hpp"

namespace nvsign {

namespace {

using nlohmann::json;

mpz_class parse_integer(const json& v, const std::string& what) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return mpz_class(std::to_string(v.get<std::uint64_t>()));
    return mpz_class(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    mpz_class out;
    const bool digits = !s.empty() && s.find_first_not_of("-0123456789") == std::string::npos &&
                        s.find('-', 1) == std::string::npos && s != "-";
    if (!digits || out.set_str(s, 10) != 0) throw std::invalid_argument(what + ": not an integer string '" + s + "'");
    return out;
  }
  throw std::invalid_argument(what + ": expected an integer");
}

std::string encode_integer(const mpz_class& v) { return v.get_str(); }

json integer_json(const mpz_class& v) {
  // Exact in a double up to 2^53; larger magnitudes go out as strings.
  if (mpz_sizeinbase(v.get_mpz_t(), 2) <= 53) return json(v.get_si());
  return json(encode_integer(v));
}

}  // namespace

NewformRecord parse_newform_record(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("record must be a JSON object");
  NewformRecord r;
  if (!j.contains("label") || !j["label"].is_string()) throw std::invalid_argument("record needs a string label");
  r.label = j["label"].get<std::string>();
  if (r.label.empty()) throw std::invalid_argument("label must be nonempty");
  const mpz_class level = parse_integer(j.value("level", json(nullptr)), r.label + ".level");
  const mpz_class weight = parse_integer(j.value("weight", json(nullptr)), r.label + ".weight");
  if (level < 1 || !level.fits_ulong_p()) throw std::invalid_argument(r.label + ": level must be a positive integer");
  if (weight < 2 || weight > 1000) throw std::invalid_argument(r.label + ": weight must be an integer >= 2");
  r.level = level.get_ui();
  r.weight = static_cast<int>(weight.get_si());
  if (j.contains("cm")) {
    if (!j["cm"].is_boolean()) throw std::invalid_argument(r.label + ": cm must be boolean");
    r.cm = j["cm"].get<bool>();
  }
  const bool has_ap = j.contains("ap");
  const bool has_an = j.contains("an");
  if (has_ap == has_an) throw std::invalid_argument(r.label + ": exactly one of 'ap' or 'an' is required");
  if (has_ap) {
    if (!j["ap"].is_object()) throw std::invalid_argument(r.label + ": ap must be an object");
    std::map<std::uint64_t, mpz_class> ap;
    for (const auto& [key, value] : j["ap"].items()) {
      const mpz_class p = parse_integer(json(key), r.label + ".ap key");
      if (p < 2 || !p.fits_ulong_p() || !is_prime(p.get_ui())) {
        throw std::invalid_argument(r.label + ": ap key '" + key + "' is not a prime");
      }
      ap[p.get_ui()] = parse_integer(value, r.label + ".ap[" + key + "]");
    }
    r.ap = std::move(ap);
  } else {
    if (!j["an"].is_array()) throw std::invalid_argument(r.label + ": an must be an array");
    std::vector<mpz_class> an;
    for (std::size_t i = 0; i < j["an"].size(); ++i) {
      an.push_back(parse_integer(j["an"][i], r.label + ".an[" + std::to_string(i + 1) + "]"));
    }
    r.an = std::move(an);
  }
  return r;
}

std::string format_newform_record(const NewformRecord& record) {
  json j;
  j["label"] = record.label;
  j["level"] = record.level;
  j["weight"] = record.weight;
  j["cm"] = record.cm;
  if (record.ap) {
    json ap = json::object();
    for (const auto& [p, v] : *record.ap) ap[std::to_string(p)] = integer_json(v);
    j["ap"] = ap;
  }
  if (record.an) {
    json an = json::array();
    for (const auto& v : *record.an) an.push_back(integer_json(v));
    j["an"] = an;
  }
  return j.dump();
}

ModularForm materialize(const NewformRecord& record) {
  if (record.an) {
    const auto& an = *record.an;
    if (an.empty()) throw std::invalid_argument(record.label + ": an list is empty");
    if (an.front() != 1) {
      throw std::invalid_argument(record.label + ": c_1 = " + an.front().get_str() + ", expected 1 (normalized)");
    }
    std::vector<mpz_class> coeffs(an.size() + 1);
    for (std::size_t i = 0; i < an.size(); ++i) coeffs[i + 1] = an[i];
    ModularForm f(record.label, record.level, record.weight, std::move(coeffs), record.cm,
                  CoefficientSource::kFullList);
    if (auto p = deligne_violation(f)) {
      throw std::invalid_argument(record.label + ": Deligne bound c_p^2 <= 4 p^(k-1) fails at p = " +
                                  std::to_string(*p));
    }
    return f;
  }
  const auto& ap = *record.ap;
  mpz_class bound;
  for (const auto& [p, v] : ap) {
    if (record.level % p == 0) continue;
    mpz_ui_pow_ui(bound.get_mpz_t(), p, static_cast<unsigned long>(record.weight - 1));
    if (v * v > 4 * bound) {
      throw std::invalid_argument(record.label + ": Deligne bound c_p^2 <= 4 p^(k-1) fails at p = " +
                                  std::to_string(p));
    }
  }
  // Precision runs up to the first prime without data.
  std::uint64_t precision = 2;
  while (true) {
    if (is_prime(precision) && !ap.contains(precision)) break;
    ++precision;
  }
  return hecke_fill(record.label, record.level, record.weight, ap, precision, record.cm);
}

std::vector<ModularForm> ingest_newforms(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open newform file " + path.string());
  std::vector<ModularForm> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(materialize(parse_newform_record(line)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace nvsign
