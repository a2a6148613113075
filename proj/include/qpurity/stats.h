// Copyright 2026 The qpurity Authors
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

#ifndef QPURITY_STATS_H
#define QPURITY_STATS_H

#include <functional>
#include <span>
#include <vector>

namespace qpurity {

/// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> values);

/// Sample mean with standard error = sample std / sqrt(n).
struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

MeanEstimate mean_estimate(std::span<const double> values);

double normal_cdf(double x);

/// Kolmogorov-Smirnov statistic of samples against a continuous CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)> &cdf);

/// Anderson-Darling A^2 of samples against the standard normal (fully specified case).
double anderson_darling_normal(std::vector<double> standardized);

struct LinearFit {
    double slope;
    double intercept;
};

LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace qpurity

#endif
