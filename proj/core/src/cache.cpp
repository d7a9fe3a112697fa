#include "nvsign/cache.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <unistd.h>

namespace nvsign {

namespace {

constexpr char kMagic[4] = {'N', 'V', 'S', 'C'};
constexpr std::uint32_t kVersion = 1;
constexpr const char* kSuffix = ".nvc";

class Fnv1a {
 public:
  void update(const unsigned char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= data[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

template <typename T>
void put_le(std::string& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return static_cast<T>(v);
}

std::string encode_records(std::span<const mpz_class> coeffs) {
  std::string out;
  std::vector<unsigned char> buf;
  for (const auto& c : coeffs) {
    std::size_t count = 0;
    if (c != 0) {
      buf.resize((mpz_sizeinbase(c.get_mpz_t(), 2) + 7) / 8);
      mpz_export(buf.data(), &count, -1, 1, -1, 0, c.get_mpz_t());
    }
    const auto len = static_cast<std::int32_t>(count);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(sgn(c) < 0 ? -len : len));
    out.append(reinterpret_cast<const char*>(buf.data()), count);
  }
  return out;
}

}  // namespace

void write_coefficient_file(const std::filesystem::path& path, const std::string& label,
                            std::span<const mpz_class> coeffs) {
  const std::string payload = encode_records(coeffs);
  Fnv1a h;
  h.update(reinterpret_cast<const unsigned char*>(payload.data()), payload.size());
  std::string header(kMagic, 4);
  put_le<std::uint32_t>(header, kVersion);
  put_le<std::uint32_t>(header, static_cast<std::uint32_t>(label.size()));
  header += label;
  put_le<std::uint64_t>(header, coeffs.size());
  put_le<std::uint64_t>(header, h.value());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string() + ": " + std::strerror(errno));
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  out.close();
  if (!out) throw std::runtime_error("write failed for " + path.string() + ": " + std::strerror(errno));
}

std::vector<mpz_class> read_coefficient_file(const std::filesystem::path& path, std::string* label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + ": " + std::strerror(errno));
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(data.data());
  const std::size_t n = data.size();
  auto need = [&](std::size_t at, std::size_t len) {
    if (at + len > n) throw CacheCorrupt(path.string() + ": truncated file");
  };
  need(0, 12);
  if (std::memcmp(p, kMagic, 4) != 0) throw CacheCorrupt(path.string() + ": bad magic");
  if (get_le<std::uint32_t>(p + 4) != kVersion) throw CacheCorrupt(path.string() + ": unsupported version");
  const auto label_len = get_le<std::uint32_t>(p + 8);
  need(12, label_len + 16);
  if (label) label->assign(data.data() + 12, label_len);
  std::size_t at = 12 + label_len;
  const auto count = get_le<std::uint64_t>(p + at);
  const auto checksum = get_le<std::uint64_t>(p + at + 8);
  at += 16;
  Fnv1a h;
  h.update(p + at, n - at);
  if (h.value() != checksum) throw CacheCorrupt(path.string() + ": checksum mismatch");
  std::vector<mpz_class> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    need(at, 4);
    const auto len = static_cast<std::int32_t>(get_le<std::uint32_t>(p + at));
    at += 4;
    const std::size_t mag = static_cast<std::size_t>(len < 0 ? -static_cast<std::int64_t>(len) : len);
    need(at, mag);
    mpz_class v;
    if (mag > 0) mpz_import(v.get_mpz_t(), mag, -1, 1, -1, 0, p + at);
    if (len < 0) v = -v;
    at += mag;
    out.push_back(std::move(v));
  }
  if (at != n) throw CacheCorrupt(path.string() + ": trailing bytes");
  return out;
}

CoefficientCache::CoefficientCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::optional<std::filesystem::path> CoefficientCache::env_dir() {
  const char* v = std::getenv(kCacheDirEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::filesystem::path(v);
}

std::filesystem::path CoefficientCache::path_for(const std::string& label, std::size_t precision) const {
  return dir_ / (label + "." + std::to_string(precision) + kSuffix);
}

std::optional<std::vector<mpz_class>> CoefficientCache::load(const std::string& label, std::size_t precision) const {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir_, ec)) return std::nullopt;
  // Smallest stored precision that covers the request.
  std::optional<std::pair<std::size_t, std::filesystem::path>> best;
  const std::string prefix = label + ".";
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    const std::string name = entry.path().filename().string();
    if (!name.starts_with(prefix) || !name.ends_with(kSuffix)) continue;
    const std::string mid = name.substr(prefix.size(), name.size() - prefix.size() - std::strlen(kSuffix));
    if (mid.empty() || mid.find_first_not_of("0123456789") != std::string::npos) continue;
    const std::size_t stored = std::stoull(mid);
    if (stored < precision) continue;
    if (!best || stored < best->first) best = std::make_pair(stored, entry.path());
  }
  if (!best) return std::nullopt;
  try {
    std::string stored_label;
    std::vector<mpz_class> coeffs = read_coefficient_file(best->second, &stored_label);
    if (stored_label != label || coeffs.size() != best->first) {
      throw CacheCorrupt(best->second.string() + ": header does not match file name");
    }
    coeffs.resize(precision);
    return coeffs;
  } catch (const CacheCorrupt& e) {
    std::cerr << "warning: " << e.what() << "; recomputing\n";
    std::filesystem::remove(best->second, ec);
    return std::nullopt;
  }
}

void CoefficientCache::store(const std::string& label, std::span<const mpz_class> coeffs) const {
  std::filesystem::create_directories(dir_);
  const std::filesystem::path final_path = path_for(label, coeffs.size());
  std::filesystem::path tmp = final_path;
  tmp += ".tmp." + std::to_string(::getpid());
  write_coefficient_file(tmp, label, coeffs);
  std::filesystem::rename(tmp, final_path);
}

}  // namespace nvsign
