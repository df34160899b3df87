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

#ifndef TSLEC_STATS_HPP_
#define TSLEC_STATS_HPP_

#include <optional>
#include <utility>
#include <vector>

namespace tslec {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<double> effect_size;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  int n1 = 0;
  int n2 = 0;
};

// Sample std uses the n-1 denominator; std absent when n < 2.
std::pair<double, std::optional<double>> mean_std(
    const std::vector<double>& xs);

// mean +/- 1.96 * s / sqrt(n); absent when n < 2.
std::optional<std::pair<double, double>> confidence_interval_95(
    const std::vector<double>& xs);

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double incomplete_beta(double a, double b, double x);

// Two-sided survival helpers for the test statistics used here.
double student_t_two_sided_p(double t, double df);
double f_sf(double f, double df1, double df2);
double chi2_df1_sf(double x);

// Welch statistic with Welch-Satterthwaite degrees of freedom; effect_size
// carries Cohen's d (pooled sd). Two identical zero-variance samples give
// t = 0, p = 1.
TestResult welch_t_test(const std::vector<double>& xs,
                        const std::vector<double>& ys);

// (mean_x - mean_y) / pooled_sd; absent when the pooled sd is zero.
std::optional<double> cohens_d(const std::vector<double>& xs,
                               const std::vector<double>& ys);
std::optional<double> cohens_d_from_stats(double mean1, double sd1, int n1,
                                          double mean2, double sd2, int n2);

// r with p via t = r * sqrt((n-2) / (1-r^2)); absent statistic on
// degenerate variance (p reported as 1).
TestResult pearson_r(const std::vector<std::pair<double, double>>& pairs);

// F with (k-1, N-k) degrees of freedom.
TestResult one_way_anova(const std::vector<std::vector<double>>& groups);

// Pearson chi-square without continuity correction on [[a, b], [c, d]].
TestResult chi_square_2x2(long long a, long long b, long long c, long long d);

struct BonferroniResult {
  double adjusted_p = 1.0;
  bool significant = false;
};

std::vector<BonferroniResult> bonferroni(const std::vector<double>& p_values,
                                         double alpha = 0.05);

// One-sided sign test: P(X >= wins) for X ~ Binomial(n, 1/2).
double sign_test_p(int wins, int n);

}  // namespace tslec

#endif  // TSLEC_STATS_HPP_
