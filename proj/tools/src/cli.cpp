#include "nvsign/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "nvsign/arith.hpp"
#include "nvsign/bfree.hpp"
#include "nvsign/cache.hpp"
#include "nvsign/errors.hpp"
#include "nvsign/gaps.hpp"
#include "nvsign/newform_io.hpp"
#include "nvsign/nonvanish.hpp"
#include "nvsign/powersum.hpp"
#include "nvsign/rankin.hpp"
#include "nvsign/registry.hpp"
#include "nvsign/signs.hpp"

namespace nvsign::cli {

namespace {

using nlohmann::json;

// Signals an exact check contradicting a theorem after the report is out.
struct Diagnostic {
  bool theorem_violation = false;
  std::string message;
};

json big_json(const mpz_class& v) {
  if (v.fits_slong_p() && mpz_sizeinbase(v.get_mpz_t(), 2) <= 53) return json(v.get_si());
  return json(v.get_str());
}

std::vector<std::string> split_labels(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty label in '" + s + "'");
    out.push_back(item);
  }
  return out;
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw std::invalid_argument(std::string("missing required option ") + flag);
  return *v;
}

Format format_or(const ExperimentConfig& c, Format fallback) { return c.format.value_or(fallback); }

std::uint64_t window_span(std::uint64_t n, std::uint64_t K) {
  return n + K * iroot_ceil(n, 4) + 2;
}

class Runner {
 public:
  Runner(const ExperimentConfig& c, std::ostream& err) : c_(c), err_(err), registry_(make_cache(c)) {
    for (const auto& f : c.forms_files) registry_.ingest(f);
  }

  Diagnostic dispatch(std::ostream& out) {
    const auto& cmd = c_.command;
    if (cmd == "expand") return expand(out);
    if (cmd == "forms") return forms(out);
    if (cmd == "powersum") return powersum(out);
    if (cmd == "bfree") return bfree(out);
    if (cmd == "gaps") return gaps(out);
    if (cmd == "signs") return signs(out);
    if (cmd == "rankin") return rankin(out);
    if (cmd == "nonvanish") return nonvanish(out);
    throw std::invalid_argument("unknown command '" + cmd + "'");
  }

 private:
  static std::optional<CoefficientCache> make_cache(const ExperimentConfig& c) {
    auto dir = c.cache_dir ? c.cache_dir : CoefficientCache::env_dir();
    if (!dir) return std::nullopt;
    return CoefficientCache(*dir);
  }

  std::size_t precision_for(std::uint64_t needed) const {
    if (c_.precision) {
      if (*c_.precision < needed)
        throw InsufficientPrecision("--precision " + std::to_string(*c_.precision) + " is below the " +
                                    std::to_string(needed) + " this command needs");
      return *c_.precision;
    }
    return needed;
  }

  // Fixtures are computed to `precision`; ingested forms only need `minimum`.
  FormPtr form(const std::string& label, std::size_t precision, std::optional<std::size_t> minimum = std::nullopt) {
    if (!registry_.contains(label)) throw std::invalid_argument("unknown form label '" + label + "'");
    return registry_.get(label, is_fixture(label) ? precision : minimum.value_or(precision));
  }

  FormPair pair(std::size_t precision, std::optional<std::size_t> minimum = std::nullopt) {
    if (c_.labels.size() != 2) throw std::invalid_argument("--pair expects two labels f,g");
    return FormPair(form(c_.labels[0], precision, minimum), form(c_.labels[1], precision, minimum));
  }

  const std::string& single_label() const {
    if (c_.labels.size() != 1) throw std::invalid_argument("--form expects exactly one label");
    return c_.labels[0];
  }

  Diagnostic expand(std::ostream& out) {
    const std::uint64_t count = c_.count.value_or(20);
    if (count == 0) throw std::invalid_argument("--count must be positive");
    auto f = form(single_label(), precision_for(count + 1));
    if (format_or(c_, Format::kCsv) == Format::kCsv) {
      out << "n,c_n\n";
      for (std::uint64_t n = 1; n <= count; ++n) out << n << ',' << f->c(n).get_str() << '\n';
    } else {
      json j{{"label", f->label()}, {"level", f->level()}, {"weight", f->weight()}, {"cm", f->is_cm()}};
      auto& cs = j["coefficients"] = json::array();
      for (std::uint64_t n = 1; n <= count; ++n) cs.push_back(big_json(f->c(n)));
      out << j.dump() << '\n';
    }
    return {};
  }

  Diagnostic forms(std::ostream& out) {
    const auto& act = c_.action;
    if (act == "list") {
      std::set<std::string> labels;
      for (const auto& l : fixture_labels()) labels.insert(l);
      for (const auto& l : registry_.labels()) labels.insert(l);
      if (format_or(c_, Format::kCsv) == Format::kCsv) out << "label,level,weight,cm,kind\n";
      json arr = json::array();
      for (const auto& l : labels) {
        // Fixtures at a tiny precision only to read their metadata.
        auto f = registry_.get(l, is_fixture(l) ? 2 : 0);
        const char* kind = is_fixture(l) ? "fixture" : "ingested";
        if (format_or(c_, Format::kCsv) == Format::kCsv)
          out << l << ',' << f->level() << ',' << f->weight() << ',' << (f->is_cm() ? "true" : "false") << ','
              << kind << '\n';
        else
          arr.push_back({{"label", l}, {"level", f->level()}, {"weight", f->weight()}, {"cm", f->is_cm()},
                         {"kind", kind}});
      }
      if (format_or(c_, Format::kCsv) == Format::kJson) out << arr.dump(2) << '\n';
      return {};
    }
    if (act == "warm") {
      if (c_.labels.empty()) throw std::invalid_argument("forms warm needs --forms");
      const auto P = need(c_.precision, "--precision");
      for (const auto& path : registry_.warm(c_.labels, P)) out << path.string() << '\n';
      return {};
    }
    if (act == "ingest") {
      if (c_.forms_files.empty()) throw std::invalid_argument("forms ingest needs --forms-file");
      if (format_or(c_, Format::kCsv) == Format::kCsv) out << "label,level,weight,cm,precision\n";
      json arr = json::array();
      for (const auto& path : c_.forms_files)
        for (const auto& f : ingest_newforms(path)) {
          if (format_or(c_, Format::kCsv) == Format::kCsv)
            out << f.label() << ',' << f.level() << ',' << f.weight() << ',' << (f.is_cm() ? "true" : "false") << ','
                << f.precision() << '\n';
          else
            arr.push_back({{"label", f.label()}, {"level", f.level()}, {"weight", f.weight()}, {"cm", f.is_cm()},
                           {"precision", f.precision()}});
        }
      if (format_or(c_, Format::kCsv) == Format::kJson) out << arr.dump(2) << '\n';
      return {};
    }
    throw std::invalid_argument("forms action must be list, warm or ingest");
  }

  Diagnostic powersum(std::ostream& out) {
    const auto n = need(c_.n, "--n");
    if (n == 0) throw std::invalid_argument("--n must be positive");
    json j;
    if (c_.D) {
      if (!is_squarefree(*c_.D)) throw std::invalid_argument("--D must be squarefree");
      auto rep = find_normform(n, *c_.D);
      j = {{"n", rep.n}, {"D", rep.D}, {"m", rep.m}, {"a", rep.a}, {"b", rep.b}, {"C", rep.C_prime.get_str()}};
    } else {
      const auto r = static_cast<unsigned>(c_.r.value_or(2));
      const auto s = static_cast<unsigned>(c_.s.value_or(2));
      if (r < 2 || s < 2 || r > 16 || s > 16) throw std::invalid_argument("--r and --s must lie in [2, 16]");
      const auto params = PowerSumParams::make(r, s);
      if (c_.badset_given) {
        auto cr = find_representation_coprime(n, params, c_.badset, c_.K);
        j = {{"n", n},           {"m", cr.rep.m},          {"A", cr.rep.A},           {"B", cr.rep.B},
             {"r", r},           {"s", s},                 {"K", cr.K.get_str()},     {"badset", c_.badset},
             {"window_used", cr.window_used}};
      } else {
        auto rep = find_representation(n, params);
        j = {{"n", n}, {"m", rep.m}, {"A", rep.A}, {"B", rep.B}, {"r", r}, {"s", s}, {"C", params.C.get_str()},
             {"boundary_hit", rep.boundary_hit}};
      }
    }
    if (format_or(c_, Format::kJson) == Format::kJson) {
      out << j.dump() << '\n';
    } else {
      std::string header, row;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (it->is_array()) continue;
        header += (header.empty() ? "" : ",") + it.key();
        row += (row.empty() ? "" : ",") + (it->is_string() ? it->get<std::string>() : it->dump());
      }
      out << header << '\n' << row << '\n';
    }
    return {};
  }

  BFreeSet parse_set(std::optional<PairBFreeSet>& pair_set, std::uint64_t top) {
    const auto& spec = c_.set_spec;
    if (spec == "prime-squares") return BFreeSet::prime_squares();
    if (spec.rfind("list:", 0) == 0) {
      std::vector<std::uint64_t> gens;
      std::stringstream ss(spec.substr(5));
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const auto v = std::stoull(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad generator '" + item + "'");
        gens.push_back(v);
      }
      return BFreeSet::from_list(gens);
    }
    if (spec == "pair") {
      const std::uint64_t bound = c_.bound.value_or(top);
      pair_set = build_from_pair(pair(precision_for(bound + 1)), bound);
      return pair_set->set;
    }
    throw std::invalid_argument("--set must be prime-squares, list:b1,b2,... or pair");
  }

  Diagnostic bfree(std::ostream& out) {
    const auto x = c_.x.value_or(0);
    const auto y = need(c_.y, "--y");
    if (y == 0) throw std::invalid_argument("--y must be positive");
    std::optional<PairBFreeSet> pair_set;
    const BFreeSet set = parse_set(pair_set, x + y);
    if (c_.q || c_.a) {
      const auto q = need(c_.q, "--q");
      const auto a = need(c_.a, "--a");
      auto pc = sieve_progression(set, x, y, a, q);
      json j{{"x", x}, {"y", y}, {"a", a}, {"q", q}, {"count", pc.count}, {"outside_regime", pc.outside_regime},
             {"set", set.descriptor()}};
      if (format_or(c_, Format::kJson) == Format::kJson)
        out << j.dump() << '\n';
      else
        out << "x,y,a,q,count,outside_regime\n"
            << x << ',' << y << ',' << a << ',' << q << ',' << pc.count << ',' << (pc.outside_regime ? 1 : 0) << '\n';
      return {};
    }
    auto sieve = sieve_interval(set, x, y);
    if (c_.rle) write_bitmap_rle(*c_.rle, sieve);
    Diagnostic diag;
    std::optional<std::uint64_t> zero_member;
    if (pair_set) {
      const FormPair p = pair(precision_for(std::max(x + y, pair_set->bound) + 1));
      for (std::uint64_t n : sieve.members())
        if (p.sign(n) == 0) {
          zero_member = n;
          break;
        }
      if (zero_member) {
        diag.theorem_violation = true;
        diag.message = "B-free n=" + std::to_string(*zero_member) + " has a vanishing coefficient product";
      }
    }
    if (format_or(c_, Format::kJson) == Format::kJson) {
      json j = json::parse(sieve_summary_json(sieve));
      j["set"] = set.descriptor();
      if (pair_set) {
        j["s_primes"] = pair_set->s_primes.size();
        j["serre_ratio"] = pair_set->serre_ratio;
        j["bound"] = pair_set->bound;
        j["all_products_nonzero"] = !zero_member.has_value();
      }
      out << j.dump() << '\n';
    } else {
      out << "x,y,count,density\n" << x << ',' << y << ',' << sieve.count << ',' << sieve.density() << '\n';
    }
    return diag;
  }

  Diagnostic gaps(std::ostream& out) {
    const auto to = need(c_.to, "--to");
    const auto from = c_.from.value_or(1);
    if (from == 0 || from > to) throw std::invalid_argument("need 1 <= --from <= --to");
    // Room for the witness of the last record.
    const std::uint64_t P = precision_for(to + 1024);
    std::vector<GapRecord> recs;
    std::optional<FormPair> p;
    FormPtr f;
    if (c_.labels.size() == 2) {
      p.emplace(pair(P, to + 1));
      recs = scan_gaps(*p, from, to);
    } else {
      f = form(single_label(), P, to + 1);
      recs = scan_gaps(*f, from, to);
    }
    const ModularForm& first = p ? p->f() : *f;
    const ModularForm* second = p ? &p->g() : nullptr;
    if (format_or(c_, Format::kCsv) == Format::kCsv) {
      write_gap_csv(out, recs, first, second);
      return {};
    }
    const auto fit = exponent_fit(recs);
    std::uint64_t max_gap = 0;
    for (const auto& r : recs) max_gap = std::max(max_gap, r.gap);
    json j{{"context", recs.empty() ? std::string() : recs.front().context},
           {"from", from},
           {"to", to},
           {"max_gap", max_gap},
           {"fit", {{"degenerate", fit.degenerate}, {"nonzero", fit.nonzero}, {"slope", fit.slope},
                    {"envelope", fit.envelope}}}};
    auto& rs = j["records"] = json::array();
    for (const auto& r : recs)
      if (r.gap > 0) rs.push_back({{"n", r.n}, {"gap", r.gap}, {"witness", r.witness}});
    out << j.dump() << '\n';
    return {};
  }

  std::vector<std::uint64_t> sweep_grid() const {
    if (!c_.x_grid.empty()) return c_.x_grid;
    const auto size = need(c_.grid_size, "--x-grid or --grid-size");
    const auto lo = need(c_.x_min, "--x-min");
    const auto hi = need(c_.x_max, "--x-max");
    if (lo == 0 || lo > hi) throw std::invalid_argument("need 1 <= --x-min <= --x-max");
    std::mt19937_64 rng(c_.seed);
    std::uniform_real_distribution<double> u(std::log(static_cast<double>(lo)), std::log(static_cast<double>(hi)));
    std::vector<std::uint64_t> grid;
    for (std::uint64_t i = 0; i < size; ++i)
      grid.push_back(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::llround(std::exp(u(rng)))), lo, hi));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
  }

  Diagnostic signs(std::ostream& out) {
    const auto& act = c_.action;
    const Format fmt = format_or(c_, act == "partial" ? Format::kJson : Format::kCsv);
    if (act == "window") {
      const double delta = need(c_.delta, "--delta");
      if (!(delta > 0 && delta < 1)) throw std::invalid_argument("--delta must lie in (0, 1)");
      const auto grid = sweep_grid();
      if (grid.empty()) throw std::invalid_argument("empty x grid");
      const double top = static_cast<double>(grid.back());
      const auto P = precision_for(grid.back() + static_cast<std::uint64_t>(std::ceil(std::pow(top, delta))) + 2);
      const auto sw = window_sweep(pair(P), delta, grid);
      if (fmt == Format::kCsv) {
        write_window_csv(out, sw);
      } else {
        json j{{"delta", delta}, {"eligibility", sw.eligibility.label()},
               {"fraction_with_change", sw.fraction_with_change}};
        auto& ws = j["windows"] = json::array();
        for (const auto& w : sw.windows)
          ws.push_back({{"x", w.x}, {"H", w.H}, {"count", w.count},
                        {"first_change", w.first_change ? json(*w.first_change) : json(nullptr)},
                        {"positives", w.positives}, {"negatives", w.negatives}, {"zeros", w.zeros}});
        auto& cs = j["cumulative"] = json::array();
        for (const auto& cc : sw.cumulative) cs.push_back({{"x", cc.x}, {"count", cc.count}, {"ratio", cc.ratio}});
        out << j.dump(2) << '\n';
      }
      Diagnostic diag;
      if (sw.eligibility.in_regime() && delta > 7.0 / 8.0)
        for (const auto& w : sw.windows)
          if (w.count == 0) {
            diag.theorem_violation = true;
            diag.message = "no sign change in (" + std::to_string(w.x) + ", " + std::to_string(w.x + w.H) + "]";
            break;
          }
      return diag;
    }
    if (act == "scan") {
      const auto x = c_.x.value_or(0);
      const auto H = need(c_.H, "--H");
      const auto rep = scan_sign_changes(pair(precision_for(x + H + 1)), x, H);
      if (fmt == Format::kCsv) {
        out << "x,H,count,first_change,positives,negatives,zeros\n"
            << x << ',' << H << ',' << rep.count << ',' << (rep.first_change ? std::to_string(*rep.first_change) : "")
            << ',' << rep.positives << ',' << rep.negatives << ',' << rep.zeros << '\n';
      } else {
        json j{{"x", x}, {"H", H}, {"count", rep.count},
               {"first_change", rep.first_change ? json(*rep.first_change) : json(nullptr)},
               {"positives", rep.positives}, {"negatives", rep.negatives}, {"zeros", rep.zeros}, {"flips", rep.flips}};
        out << j.dump() << '\n';
      }
      return {};
    }
    if (act == "partial") {
      const auto x_max = need(c_.x_max, "--x-max");
      if (x_max < 100) throw std::invalid_argument("--x-max must be at least 100");
      const auto fit = partial_sums(pair(precision_for(x_max + 1)), x_max, c_.samples.value_or(kDefaultSamples));
      if (fmt == Format::kCsv) {
        out << "x,s1,s2\n";
        for (std::size_t i = 0; i < fit.xs.size(); ++i)
          out << fit.xs[i] << ',' << static_cast<double>(fit.s1[i]) << ',' << static_cast<double>(fit.s2[i]) << '\n';
        return {};
      }
      json j = json::parse(partial_sum_fit_json(fit));
      if (c_.delta) {
        const auto v = criterion_check(fit, *c_.delta);
        j["criterion"] = {{"delta", *c_.delta}, {"pass", v.pass}, {"refused", v.refused}, {"lhs", v.lhs},
                          {"lower_margin", v.lower_margin}, {"upper_margin", v.upper_margin}, {"reason", v.reason}};
      }
      out << j.dump(2) << '\n';
      return {};
    }
    if (act == "dyadic") {
      const auto jmin = c_.j_min.value_or(10);
      const auto jmax = c_.j_max.value_or(19);
      if (jmin > jmax || jmax > 40) throw std::invalid_argument("need --j-min <= --j-max <= 40");
      const auto blocks = dyadic_sign_blocks(pair(precision_for((std::uint64_t{1} << (jmax + 1)))),
                                             static_cast<unsigned>(jmin), static_cast<unsigned>(jmax));
      if (fmt == Format::kCsv) {
        out << "j,positives,negatives\n";
        for (const auto& b : blocks) out << b.j << ',' << b.positives << ',' << b.negatives << '\n';
      } else {
        json arr = json::array();
        for (const auto& b : blocks) arr.push_back({{"j", b.j}, {"positives", b.positives}, {"negatives", b.negatives}});
        out << arr.dump() << '\n';
      }
      return {};
    }
    throw std::invalid_argument("signs action must be window, scan, partial or dyadic");
  }

  Diagnostic rankin(std::ostream& out) {
    const auto P = need(c_.to, "--to");
    if (P == 0) throw std::invalid_argument("--to must be positive");
    const auto M = c_.M.value_or(1);
    if (M == 0) throw std::invalid_argument("--M must be positive");
    const FormPair p = pair(precision_for(P + 1));
    const auto rc = rankin_coefficients(p, M, P);
    const auto rep = positivity_scan(rc.coeffs);
    if (format_or(c_, Format::kJson) == Format::kJson) {
      out << positivity_report_json(p.label(), rc, rep) << '\n';
    } else {
      out << "n,c_n\n";
      for (std::uint64_t n = 1; n <= P; ++n) out << n << ',' << rc.coeffs[n].get_str() << '\n';
    }
    Diagnostic diag;
    if (c_.labels[0] == c_.labels[1] && rep.first_negative) {
      diag.theorem_violation = true;
      diag.message = "negative coefficient at n=" + std::to_string(*rep.first_negative) + " for f = g";
    }
    return diag;
  }

  std::vector<std::uint64_t> witness_indices() const {
    if (!c_.ns.empty()) return c_.ns;
    const auto to = need(c_.to, "--n or --to");
    const auto from = c_.from.value_or(1);
    if (from == 0 || from > to) throw std::invalid_argument("need 1 <= --from <= --to");
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = from; n <= to; ++n) out.push_back(n);
    return out;
  }

  Diagnostic nonvanish(std::ostream& out) {
    const auto& act = c_.action;
    if (act == "hatada") {
      const auto x = need(c_.x, "--x");
      const auto xp = c_.x_power.value_or(x);
      auto f = form(single_label(), precision_for(std::max(x, xp) + 1));
      const auto rep = check_hatada(*f, x, xp);
      out << congruence_report_json(rep) << '\n';
      Diagnostic diag;
      if (!rep.ok()) {
        diag.theorem_violation = true;
        diag.message = std::to_string(rep.violations.size()) + " congruence violations for " + f->label();
      }
      return diag;
    }
    const auto K = c_.K.value_or(kDefaultWitnessK);
    if (K == 0 || K % 64 != 0) throw std::invalid_argument("--K must be a positive multiple of 64");
    if (act == "badset") {
      auto f = form(single_label(), precision_for(c_.to.value_or(10000) + 1));
      out << json(empirical_badset(*f)).dump() << '\n';
      return {};
    }
    if (act != "witness" && act != "simultaneous")
      throw std::invalid_argument("nonvanish action must be witness, simultaneous, hatada or badset");
    if (act == "witness" && c_.labels.size() != 1) throw std::invalid_argument("witness expects --form");
    if (c_.labels.empty()) throw std::invalid_argument("simultaneous expects --forms");
    const auto ns = witness_indices();
    const auto n_max = *std::max_element(ns.begin(), ns.end());
    if (n_max == 0) throw std::invalid_argument("n must be positive");
    const auto P = precision_for(window_span(n_max, K));
    std::vector<FormPtr> held;
    std::vector<const ModularForm*> fs;
    std::set<std::uint64_t> bad(c_.badset.begin(), c_.badset.end());
    for (const auto& l : c_.labels) {
      held.push_back(form(l, P));
      fs.push_back(held.back().get());
      if (!c_.badset_given)
        for (auto p : empirical_badset(*held.back())) bad.insert(p);
    }
    const std::vector<std::uint64_t> badset(bad.begin(), bad.end());
    const Format fmt = format_or(c_, Format::kJson);
    if (fmt == Format::kCsv) {
      out << "n,m,gap";
      for (const auto& l : c_.labels) out << ",c_m_" << l;
      out << ",escalations\n";
    }
    for (std::uint64_t n : ns) {
      const auto w = simultaneous_witness(fs, n, badset, K);
      if (fmt == Format::kJson) {
        out << witness_json(w) << '\n';
      } else {
        out << w.n << ',' << w.m << ',' << w.gap;
        for (const auto& c : w.coefficients) out << ',' << c.get_str();
        out << ',' << w.escalations.size() << '\n';
      }
      if (!w.escalations.empty())
        err_ << "finding: vanishing coefficient among witness candidates for n=" << n << '\n';
    }
    return {};
  }

  const ExperimentConfig& c_;
  std::ostream& err_;
  FormRegistry registry_;
};

}  // namespace

std::optional<ExperimentConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                           int& exit_code) {
  ExperimentConfig c;
  CLI::App app{"Exact Fourier coefficient experiments on modular forms", "nvsign"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> cache_dir, output, format, rle;
  std::vector<std::string> forms_files;
  app.add_option("--precision", c.precision, "Coefficient precision P (coefficients for n < P)");
  app.add_option("--cache-dir", cache_dir, std::string("Coefficient cache directory (default $") + kCacheDirEnv + ")");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", c.seed, "Seed for sampled x grids");
  app.add_option("--forms-file", forms_files, "Newform JSON-lines file to ingest")->check(CLI::ExistingFile);
  app.add_option("--output,-o", output, "Write the report here instead of stdout");

  std::string form, pair, forms;
  auto add_form = [&](CLI::App* sub) { sub->add_option("--form", form, "Form label"); };
  auto add_pair = [&](CLI::App* sub) { sub->add_option("--pair", pair, "Pair of labels f,g"); };
  auto add_forms = [&](CLI::App* sub) { sub->add_option("--forms", forms, "Comma-separated labels"); };

  auto* expand = app.add_subcommand("expand", "Print Fourier coefficients c_1..c_count");
  add_form(expand);
  expand->add_option("--count", c.count, "Number of coefficients");

  auto* fm = app.add_subcommand("forms", "List, warm or ingest forms");
  fm->add_option("action", c.action, "list | warm | ingest")->required();
  add_forms(fm);

  auto* ps = app.add_subcommand("powersum", "Find m = A^r + B^s in the short window above n");
  ps->add_option("--n", c.n, "Lower end of the window")->required();
  ps->add_option("--r", c.r, "Exponent r (default 2)");
  ps->add_option("--s", c.s, "Exponent s (default 2)");
  ps->add_option("--D", c.D, "Use the norm form a^2 + D b^2 instead");
  auto* bad_ps = ps->add_option("--badset", c.badset, "Primes the witness must avoid")->delimiter(',');
  ps->add_option("--K", c.K, "Window multiplier for --badset");

  auto* bf = app.add_subcommand("bfree", "Sieve B-free numbers in (x, x+y]");
  bf->add_option("--set", c.set_spec, "prime-squares | list:b1,b2,... | pair");
  bf->add_option("--x", c.x, "Interval start (exclusive, default 0)");
  bf->add_option("--y", c.y, "Interval length")->required();
  bf->add_option("--q", c.q, "Progression modulus");
  bf->add_option("--a", c.a, "Progression residue");
  bf->add_option("--bound", c.bound, "Generator bound X for --set pair (default x+y)");
  bf->add_option("--rle", rle, "Write the membership bitmap run-length encoded");
  add_pair(bf);

  auto* gp = app.add_subcommand("gaps", "Gap function records over [from, to]");
  add_form(gp);
  add_pair(gp);
  gp->add_option("--from", c.from, "First n (default 1)");
  gp->add_option("--to", c.to, "Last n")->required();

  auto* sg = app.add_subcommand("signs", "Sign changes and partial sums of c_n(f) c_n(g)");
  sg->add_option("action", c.action, "window | scan | partial | dyadic")->required();
  add_pair(sg);
  sg->add_option("--delta", c.delta, "Window exponent, H = ceil(x^delta)");
  sg->add_option("--x-grid", c.x_grid, "Explicit window starts")->delimiter(',');
  sg->add_option("--grid-size", c.grid_size, "Sample this many log-uniform x from [x-min, x-max]");
  sg->add_option("--x-min", c.x_min, "Lower end for the sampled grid");
  sg->add_option("--x-max", c.x_max, "Upper end for the sampled grid, or the partial-sum range");
  sg->add_option("--x", c.x, "Window start for scan");
  sg->add_option("--H", c.H, "Window length for scan");
  sg->add_option("--samples", c.samples, "Fit sample count (default 64)");
  sg->add_option("--j-min", c.j_min, "First dyadic block");
  sg->add_option("--j-max", c.j_max, "Last dyadic block");

  auto* rk = app.add_subcommand("rankin", "Coefficients of the Rankin-type series and their signs");
  add_pair(rk);
  rk->add_option("--M", c.M, "Restriction modulus (default 1)");
  rk->add_option("--to", c.to, "Length P")->required();

  auto* nv = app.add_subcommand("nonvanish", "Congruences and nonvanishing witnesses");
  nv->add_option("action", c.action, "witness | simultaneous | hatada | badset")->required();
  add_form(nv);
  add_forms(nv);
  nv->add_option("--n", c.ns, "Values of n")->delimiter(',');
  nv->add_option("--from", c.from, "First n of a range");
  nv->add_option("--to", c.to, "Last n of a range");
  nv->add_option("--x", c.x, "Prime bound for the congruence check");
  nv->add_option("--x-power", c.x_power, "Prime-power bound (default --x)");
  nv->add_option("--K", c.K, "Window multiplier, a multiple of 64 (default 64)");
  auto* bad_nv = nv->add_option("--badset", c.badset, "Primes the witness must avoid (default: empirical)")->delimiter(',');

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitValidation;
    return std::nullopt;
  }

  for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
  if (cache_dir) c.cache_dir = *cache_dir;
  if (output) c.output = *output;
  if (rle) c.rle = *rle;
  if (format) c.format = *format == "csv" ? Format::kCsv : Format::kJson;
  for (const auto& f : forms_files) c.forms_files.emplace_back(f);
  c.badset_given = bad_ps->count() > 0 || bad_nv->count() > 0;
  try {
    if (!form.empty()) c.labels = {form};
    const int given = !form.empty() + !pair.empty() + !forms.empty();
    if (given > 1) throw std::invalid_argument("give only one of --form, --pair, --forms");
    if (!pair.empty()) {
      c.labels = split_labels(pair);
      if (c.labels.size() != 2) throw std::invalid_argument("--pair expects f,g");
    }
    if (!forms.empty()) c.labels = split_labels(forms);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    exit_code = kExitValidation;
    return std::nullopt;
  }
  exit_code = kExitOk;
  return c;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Runner runner(config, err);
    std::ostringstream buf;
    const Diagnostic diag = runner.dispatch(buf);
    if (config.output) {
      const auto tmp = config.output->string() + ".tmp";
      {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
        f << buf.str();
        if (!f) throw std::runtime_error("write to " + tmp + " failed");
      }
      std::filesystem::rename(tmp, *config.output);
    } else {
      out << buf.str();
    }
    if (diag.theorem_violation) {
      err << "theorem violation: " << diag.message << '\n';
      return kExitTheorem;
    }
    return kExitOk;
  } catch (const TheoremViolation& e) {
    err << "theorem violation: " << e.what() << '\n';
    return kExitTheorem;
  } catch (const InsufficientPrecision& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const SearchExhausted& e) {
    err << "search exhausted: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  auto config = parse_args(argc, argv, out, err, code);
  if (!config) return code;
  return run(*config, out, err);
}

}  // namespace nvsign::cli
