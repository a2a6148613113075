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

#include "qpurity/stats.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpurity {

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) {
            s += v;
        }
        return s;
    }
    std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MeanEstimate mean_estimate(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) {
        throw std::invalid_argument("mean of an empty sample");
    }
    MeanEstimate out;
    out.mean = pairwise_sum(values) / static_cast<double>(n);
    if (n < 2) {
        return out;
    }
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d = values[i] - out.mean;
        sq[i] = d * d;
    }
    double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    out.std_error = std::sqrt(var / static_cast<double>(n));
    return out;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)> &cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

double anderson_darling_normal(std::vector<double> z) {
    std::sort(z.begin(), z.end());
    const std::size_t n = z.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // log Phi(z_i) + log(1 - Phi(z_{n-1-i})), via erfc for tail accuracy.
        double lo = std::log(normal_cdf(z[i]));
        double hi = std::log(normal_cdf(-z[n - 1 - i]));
        s += (2.0 * i + 1.0) * (lo + hi);
    }
    return -static_cast<double>(n) - s / static_cast<double>(n);
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("least squares needs matching samples of size >= 2");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

}  // namespace qpurity
