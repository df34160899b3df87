// Copyright 2026 The TSLEC Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tslec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tslec {
namespace {

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

// Continued fraction for the regularized incomplete beta, modified Lentz.
double beta_cf(double a, double b, double x) {
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;
  constexpr int kMaxIter = 500;

  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double variance(const std::vector<double>& xs, double mean) {
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / (xs.size() - 1);
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / xs.size();
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                 a * std::log(x) + b * std::log(1.0 - x);
  double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!std::isfinite(t)) return 0.0;
  return clamp01(incomplete_beta(df / 2.0, 0.5, df / (df + t * t)));
}

double f_sf(double f, double df1, double df2) {
  if (f <= 0.0) return 1.0;
  if (!std::isfinite(f)) return 0.0;
  return clamp01(incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f)));
}

double chi2_df1_sf(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

std::pair<double, std::optional<double>> mean_std(
    const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean_std: empty sample");
  double m = mean_of(xs);
  if (xs.size() < 2) return {m, std::nullopt};
  return {m, std::sqrt(variance(xs, m))};
}

std::optional<std::pair<double, double>> confidence_interval_95(
    const std::vector<double>& xs) {
  if (xs.size() < 2) return std::nullopt;
  auto [m, s] = mean_std(xs);
  double half = 1.96 * *s / std::sqrt(static_cast<double>(xs.size()));
  return std::make_pair(m - half, m + half);
}

TestResult welch_t_test(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  if (xs.size() < 2 || ys.size() < 2)
    throw std::invalid_argument("welch_t_test: need n >= 2 per sample");
  TestResult r;
  r.n1 = static_cast<int>(xs.size());
  r.n2 = static_cast<int>(ys.size());
  double m1 = mean_of(xs), m2 = mean_of(ys);
  double v1 = variance(xs, m1), v2 = variance(ys, m2);
  double se1 = v1 / r.n1, se2 = v2 / r.n2;
  double se = se1 + se2;
  r.effect_size = cohens_d(xs, ys);
  if (se == 0.0) {
    r.statistic = 0.0;
    r.p_value = m1 == m2 ? 1.0 : 0.0;
    return r;
  }
  r.statistic = (m1 - m2) / std::sqrt(se);
  double df = se * se /
              (se1 * se1 / (r.n1 - 1) + se2 * se2 / (r.n2 - 1));
  r.p_value = student_t_two_sided_p(r.statistic, df);
  return r;
}

std::optional<double> cohens_d(const std::vector<double>& xs,
                               const std::vector<double>& ys) {
  if (xs.size() < 2 || ys.size() < 2) return std::nullopt;
  double m1 = mean_of(xs), m2 = mean_of(ys);
  return cohens_d_from_stats(m1, std::sqrt(variance(xs, m1)),
                             static_cast<int>(xs.size()), m2,
                             std::sqrt(variance(ys, m2)),
                             static_cast<int>(ys.size()));
}

std::optional<double> cohens_d_from_stats(double mean1, double sd1, int n1,
                                          double mean2, double sd2, int n2) {
  double pooled = std::sqrt(((n1 - 1) * sd1 * sd1 + (n2 - 1) * sd2 * sd2) /
                            (n1 + n2 - 2));
  if (pooled == 0.0) return std::nullopt;
  return (mean1 - mean2) / pooled;
}

TestResult pearson_r(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3)
    throw std::invalid_argument("pearson_r: need n >= 3");
  TestResult res;
  res.n1 = static_cast<int>(pairs.size());
  double n = static_cast<double>(pairs.size());
  double sx = 0, sy = 0;
  for (auto& [x, y] : pairs) {
    sx += x;
    sy += y;
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, syy = 0, sxy = 0;
  for (auto& [x, y] : pairs) {
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    res.p_value = 1.0;
    return res;
  }
  double r = sxy / std::sqrt(sxx * syy);
  r = std::min(1.0, std::max(-1.0, r));
  res.statistic = r;
  if (std::fabs(r) >= 1.0) {
    res.p_value = 0.0;
    return res;
  }
  double t = r * std::sqrt((n - 2.0) / (1.0 - r * r));
  res.p_value = student_t_two_sided_p(t, n - 2.0);
  return res;
}

TestResult one_way_anova(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2)
    throw std::invalid_argument("one_way_anova: need >= 2 groups");
  int k = static_cast<int>(groups.size());
  int total_n = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2)
      throw std::invalid_argument("one_way_anova: each group needs n >= 2");
    total_n += static_cast<int>(g.size());
    for (double x : g) grand_sum += x;
  }
  double grand_mean = grand_sum / total_n;

  double ssb = 0.0, ssw = 0.0;
  for (const auto& g : groups) {
    double gm = mean_of(g);
    ssb += g.size() * (gm - grand_mean) * (gm - grand_mean);
    for (double x : g) ssw += (x - gm) * (x - gm);
  }
  TestResult res;
  res.n1 = k - 1;
  res.n2 = total_n - k;
  if (ssw == 0.0) {
    if (ssb == 0.0) {
      res.statistic = 0.0;
      res.p_value = 1.0;
    } else {
      res.statistic = std::numeric_limits<double>::infinity();
      res.p_value = 0.0;
    }
    return res;
  }
  res.statistic = (ssb / res.n1) / (ssw / res.n2);
  res.p_value = f_sf(res.statistic, res.n1, res.n2);
  return res;
}

TestResult chi_square_2x2(long long a, long long b, long long c,
                          long long d) {
  TestResult res;
  double n = static_cast<double>(a + b + c + d);
  double r1 = static_cast<double>(a + b), r2 = static_cast<double>(c + d);
  double c1 = static_cast<double>(a + c), c2 = static_cast<double>(b + d);
  if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0)
    throw std::invalid_argument("chi_square_2x2: zero marginal");
  double det = static_cast<double>(a) * d - static_cast<double>(b) * c;
  res.statistic = n * det * det / (r1 * r2 * c1 * c2);
  res.p_value = chi2_df1_sf(res.statistic);
  res.n1 = static_cast<int>(r1);
  res.n2 = static_cast<int>(r2);
  return res;
}

std::vector<BonferroniResult> bonferroni(const std::vector<double>& p_values,
                                         double alpha) {
  std::vector<BonferroniResult> out;
  out.reserve(p_values.size());
  double k = static_cast<double>(p_values.size());
  for (double p : p_values) {
    BonferroniResult b;
    b.adjusted_p = std::min(1.0, p * k);
    b.significant = b.adjusted_p < alpha;
    out.push_back(b);
  }
  return out;
}

double sign_test_p(int wins, int n) {
  if (n <= 0) return 1.0;
  if (wins <= 0) return 1.0;
  double log_half_n = n * std::log(0.5);
  double p = 0.0;
  for (int k = wins; k <= n; ++k) {
    double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                   std::lgamma(n - k + 1.0);
    p += std::exp(log_c + log_half_n);
  }
  return clamp01(p);
}

}  // namespace tslec
