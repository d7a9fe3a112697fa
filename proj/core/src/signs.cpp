#include "nvsign/signs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

#include "nvsign/arith.hpp"
#include "nvsign/errors.hpp"

namespace nvsign {

namespace {

void require_range(const FormPair& pair, std::uint64_t last) {
  if (last >= pair.precision())
    throw InsufficientPrecision("pair " + pair.label() + " needs coefficients up to " + std::to_string(last) +
                                ", have " + std::to_string(pair.precision()));
}

// Least-squares slope of log v against log x over the points with v > 0.
double loglog_slope(std::span<const std::uint64_t> xs, std::span<const long double> vs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(vs[i] > 0)) continue;
    double lx = std::log(static_cast<double>(xs[i]));
    double ly = std::log(static_cast<double>(vs[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return 0.0;
  double den = m * sxx - sx * sx;
  if (den == 0) return 0.0;
  return (m * sxy - sx * sy) / den;
}

std::vector<std::uint64_t> sample_grid(std::uint64_t x_max, std::size_t samples) {
  const double lo = std::log(10.0), hi = std::log(static_cast<double>(x_max));
  std::vector<std::uint64_t> xs;
  for (std::size_t i = 0; i < samples; ++i) {
    double t = samples == 1 ? 1.0 : static_cast<double>(i) / (samples - 1);
    auto x = static_cast<std::uint64_t>(std::llround(std::exp(lo + t * (hi - lo))));
    xs.push_back(std::clamp<std::uint64_t>(x, 10, x_max));
  }
  xs.back() = x_max;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

SignChangeReport scan_sign_changes(const SignFunction& sign, std::uint64_t x, std::uint64_t H) {
  SignChangeReport r;
  r.x = x;
  r.H = H;
  int last = 0;
  for (std::uint64_t n = x + 1; n <= x + H; ++n) {
    int s = sign(n);
    if (s == 0) {
      ++r.zeros;
      continue;
    }
    (s > 0 ? r.positives : r.negatives)++;
    if (last != 0 && s != last) {
      if (!r.first_change) r.first_change = n;
      r.flips.push_back(n);
      ++r.count;
    }
    last = s;
  }
  return r;
}

SignChangeReport scan_sign_changes(const FormPair& pair, std::uint64_t x, std::uint64_t H) {
  require_range(pair, x + H);
  return scan_sign_changes([&](std::uint64_t n) { return pair.sign(n); }, x, H);
}

PairEligibility pair_eligibility(const FormPair& pair) {
  PairEligibility e;
  e.same_weight = pair.f().weight() == pair.g().weight();
  e.same_level = pair.f().level() == pair.g().level();
  bool differs = pair.f().label() != pair.g().label();
  if (differs) {
    differs = false;
    for (std::uint64_t n = 1; n < pair.precision(); ++n)
      if (pair.f().c(n) != pair.g().c(n)) {
        differs = true;
        break;
      }
  }
  e.distinct = differs;
  return e;
}

WindowSweep window_sweep(const FormPair& pair, double delta, std::span<const std::uint64_t> x_grid) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0, 1), got " + std::to_string(delta));
  WindowSweep sw;
  sw.delta = delta;
  sw.eligibility = pair_eligibility(pair);
  if (x_grid.empty()) return sw;

  std::vector<std::uint64_t> grid(x_grid.begin(), x_grid.end());
  std::sort(grid.begin(), grid.end());
  std::size_t with_change = 0;
  for (std::uint64_t x : grid) {
    if (x == 0) throw std::invalid_argument("window start must be positive");
    auto H = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(x), delta)));
    sw.windows.push_back(scan_sign_changes(pair, x, H));
    if (sw.windows.back().count > 0) ++with_change;
  }
  sw.fraction_with_change = static_cast<double>(with_change) / grid.size();

  // Cumulative count of n <= x at which the sign flips.
  require_range(pair, grid.back());
  std::uint64_t count = 0;
  int last = 0;
  std::size_t gi = 0;
  for (std::uint64_t n = 1; n <= grid.back(); ++n) {
    int s = pair.sign(n);
    if (s != 0) {
      if (last != 0 && s != last) ++count;
      last = s;
    }
    while (gi < grid.size() && grid[gi] == n) {
      double scale = std::pow(static_cast<double>(n), 1.0 - delta);
      sw.cumulative.push_back({n, count, count / scale});
      ++gi;
    }
  }
  return sw;
}

void write_window_csv(std::ostream& out, const WindowSweep& sweep) {
  out << "x,H,count,first_change,positives,negatives,zeros,eligibility\n";
  for (const auto& w : sweep.windows) {
    out << w.x << ',' << w.H << ',' << w.count << ',';
    if (w.first_change) out << *w.first_change;
    out << ',' << w.positives << ',' << w.negatives << ',' << w.zeros << ',' << sweep.eligibility.label() << '\n';
  }
}

std::vector<BlockSigns> dyadic_sign_blocks(const FormPair& pair, unsigned j_min, unsigned j_max) {
  if (j_min > j_max || j_max >= 63) throw std::invalid_argument("bad dyadic block range");
  require_range(pair, (std::uint64_t{1} << (j_max + 1)) - 1);
  std::vector<BlockSigns> out;
  for (unsigned j = j_min; j <= j_max; ++j) {
    BlockSigns b{j, 0, 0};
    for (std::uint64_t n = std::uint64_t{1} << j; n < (std::uint64_t{1} << (j + 1)); ++n) {
      int s = pair.sign(n);
      if (s > 0) ++b.positives;
      if (s < 0) ++b.negatives;
    }
    out.push_back(b);
  }
  return out;
}

PartialSumFit partial_sums_from_terms(std::span<const long double> terms, std::size_t samples) {
  if (terms.size() < 100) throw std::invalid_argument("partial sums need x_max >= 100");
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  const std::uint64_t x_max = terms.size();
  const long double eps = std::numeric_limits<long double>::epsilon();

  PartialSumFit fit;
  fit.x_max = x_max;
  fit.xs = sample_grid(x_max, samples);

  std::vector<long double> s2_all(x_max + 1, 0);
  std::vector<long double> max_term, max_s1;
  long double s1 = 0, s2 = 0, e1 = 0, e2 = 0, mt = 0, ms1 = 0;
  bool pos = false, neg = false;
  std::size_t gi = 0;
  for (std::uint64_t n = 1; n <= x_max; ++n) {
    long double t = terms[n - 1];
    s1 += t;
    s2 += t * t;
    // Each term carries a few ulps from conversion and normalization.
    e1 += 4 * eps * std::fabs(t) + eps * std::fabs(s1);
    e2 += 9 * eps * t * t + eps * s2;
    mt = std::max(mt, std::fabs(t));
    ms1 = std::max(ms1, std::fabs(s1));
    if (s1 > 0) pos = true;
    if (s1 < 0) neg = true;
    s2_all[n] = s2;
    while (gi < fit.xs.size() && fit.xs[gi] == n) {
      fit.s1.push_back(s1);
      fit.s2.push_back(s2);
      max_term.push_back(mt);
      max_s1.push_back(ms1);
      ++gi;
    }
  }
  fit.s1_error_bound = e1;
  fit.s2_error_bound = e2;
  fit.s1_has_both_signs = pos && neg;

  long double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < fit.xs.size(); ++i) {
    long double x = fit.xs[i];
    sxy += x * fit.s2[i];
    sxx += x * x;
  }
  fit.c_hat = sxy / sxx;

  {
    const std::size_t m = fit.xs.size();
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < m; ++i) {
      mx += fit.xs[i];
      my += fit.s2[i];
    }
    mx /= m;
    my /= m;
    long double cxy = 0, cxx = 0, cyy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      long double dx = fit.xs[i] - mx, dy = fit.s2[i] - my;
      cxy += dx * dy;
      cxx += dx * dx;
      cyy += dy * dy;
    }
    fit.s2_correlation = (cxx > 0 && cyy > 0) ? static_cast<double>(cxy / std::sqrt(cxx * cyy)) : 0.0;
  }

  std::vector<long double> max_resid;
  long double mr = 0;
  gi = 0;
  for (std::uint64_t n = 1; n <= x_max; ++n) {
    mr = std::max(mr, std::fabs(s2_all[n] - fit.c_hat * static_cast<long double>(n)));
    while (gi < fit.xs.size() && fit.xs[gi] == n) {
      max_resid.push_back(mr);
      ++gi;
    }
  }
  // Residuals at rounding level mean S2 is exactly linear.
  bool exact = mr <= 16 * eps * std::fabs(fit.c_hat) * static_cast<long double>(x_max) + e2;
  if (exact) std::fill(max_resid.begin(), max_resid.end(), 0.0L);

  fit.alpha_hat = loglog_slope(fit.xs, max_term);
  fit.s1_exponent = loglog_slope(fit.xs, max_s1);
  fit.err_exponent = loglog_slope(fit.xs, max_resid);
  return fit;
}

PartialSumFit partial_sums(const FormPair& pair, std::uint64_t x_max, std::size_t samples) {
  if (x_max < 100) throw std::invalid_argument("partial sums need x_max >= 100");
  require_range(pair, x_max);
  const long double w = (pair.f().weight() + pair.g().weight() - 2) / 2.0L;
  std::vector<long double> terms(x_max);
  for (std::uint64_t n = 1; n <= x_max; ++n) {
    long double v = to_long_double(pair.product(n));
    terms[n - 1] = v == 0 ? 0.0L : v / std::pow(static_cast<long double>(n), w);
  }
  return partial_sums_from_terms(terms, samples);
}

CriterionVerdict criterion_check(const PartialSumFit& fit, double delta) {
  CriterionVerdict v;
  if (!(fit.c_hat > 0)) {
    v.refused = true;
    v.reason = "second moment constant is not positive";
    return v;
  }
  const double ab = fit.alpha_hat + fit.s1_exponent;
  v.lhs = std::max(ab, fit.err_exponent);
  v.lower_margin = delta - v.lhs;
  v.upper_margin = 1.0 - delta;
  if (!(ab < 1.0))
    v.reason = "alpha + beta >= 1";
  else if (!(v.lhs < delta))
    v.reason = "delta does not exceed max(alpha + beta, gamma)";
  else if (!(delta < 1.0))
    v.reason = "delta >= 1";
  else
    v.pass = true;
  return v;
}

std::string partial_sum_fit_json(const PartialSumFit& fit) {
  nlohmann::json j;
  j["x_max"] = fit.x_max;
  j["c_hat"] = static_cast<double>(fit.c_hat);
  j["s2_correlation"] = fit.s2_correlation;
  j["alpha_hat"] = fit.alpha_hat;
  j["beta_hat"] = fit.s1_exponent;
  j["gamma_hat"] = fit.err_exponent;
  j["s1_error_bound"] = static_cast<double>(fit.s1_error_bound);
  j["s2_error_bound"] = static_cast<double>(fit.s2_error_bound);
  j["s1_has_both_signs"] = fit.s1_has_both_signs;
  auto& samples = j["samples"] = nlohmann::json::array();
  for (std::size_t i = 0; i < fit.xs.size(); ++i)
    samples.push_back({{"x", fit.xs[i]}, {"s1", static_cast<double>(fit.s1[i])}, {"s2", static_cast<double>(fit.s2[i])}});
  return j.dump(2);
}

}  // namespace nvsign
