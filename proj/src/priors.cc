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

#include "qpurity/priors.h"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qpurity/errors.h"
#include "qpurity/quadrature.h"

namespace qpurity {

namespace {

constexpr int kTableIntervals = 4096;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Fritsch-Carlson slopes for a monotone cubic Hermite interpolant.
std::vector<double> monotone_slopes(const std::vector<double> &x, const std::vector<double> &y) {
    const std::size_t n = x.size();
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        secant[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    }
    std::vector<double> m(n);
    m[0] = secant[0];
    m[n - 1] = secant[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        m[i] = secant[i - 1] * secant[i] <= 0.0 ? 0.0 : 0.5 * (secant[i - 1] + secant[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (secant[i] == 0.0) {
            m[i] = m[i + 1] = 0.0;
            continue;
        }
        double a = m[i] / secant[i];
        double b = m[i + 1] / secant[i];
        double tau = a * a + b * b;
        if (tau > 9.0) {
            double scale = 3.0 / std::sqrt(tau);
            m[i] = scale * a * secant[i];
            m[i + 1] = scale * b * secant[i];
        }
    }
    return m;
}

}  // namespace

struct PriorFamily::Data {
    bool tabulated = false;
    double lambda = std::numeric_limits<double>::quiet_NaN();
    double norm = 0.0;

    // Family sampling table: CDF against t = arcsin r.
    std::vector<double> table_t;
    std::vector<double> table_cdf;
    std::vector<double> table_slope;

    // Tabulated prior.
    std::vector<double> knots;
    std::vector<double> weights;
    std::vector<double> knot_cdf;

    double family_cdf_t(double t) const {
        double s = std::sin(t);
        return boost::math::ibeta(1.5, 1.0 - lambda, s * s);
    }
    double family_density_t(double t) const {
        double c = std::cos(t);
        double s = std::sin(t);
        return norm * s * s * std::pow(c, 1.0 - 2.0 * lambda);
    }
};

PriorFamily::PriorFamily(std::shared_ptr<const Data> data) : data_(std::move(data)) {
}

PriorFamily PriorFamily::with_lambda(double lambda) {
    if (!(lambda < 1.0) || !std::isfinite(lambda)) {
        throw DomainError("prior exponent lambda must be finite and < 1");
    }
    auto d = std::make_shared<Data>();
    d->lambda = lambda;
    d->norm = 4.0 / std::sqrt(std::numbers::pi) *
              std::exp(boost::math::lgamma(2.5 - lambda) - boost::math::lgamma(1.0 - lambda));

    d->table_t.resize(kTableIntervals + 1);
    d->table_cdf.resize(kTableIntervals + 1);
    for (int i = 0; i <= kTableIntervals; ++i) {
        double t = kHalfPi * i / kTableIntervals;
        d->table_t[i] = t;
        d->table_cdf[i] = i == kTableIntervals ? 1.0 : d->family_cdf_t(t);
    }
    d->table_slope = monotone_slopes(d->table_t, d->table_cdf);

    PriorFamily prior(std::move(d));
    double mass = prior.radial_moment(0);
    if (!(std::abs(mass - 1.0) <= 1e-10)) {
        throw NumericalError("prior normalization check failed: integral = " + std::to_string(mass));
    }
    return prior;
}

PriorFamily PriorFamily::hard_sphere() {
    return with_lambda(0.0);
}

PriorFamily PriorFamily::bures() {
    return with_lambda(0.5);
}

PriorFamily PriorFamily::tabulated(std::vector<double> knots, std::vector<double> weights) {
    if (knots.size() < 2 || knots.size() != weights.size()) {
        throw DomainError("tabulated prior needs at least two knots with one weight each");
    }
    if (knots.front() != 0.0 || knots.back() != 1.0) {
        throw DomainError("tabulated prior knots must span [0, 1]");
    }
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (!(knots[i + 1] > knots[i])) {
            throw DomainError("tabulated prior knots must be strictly increasing");
        }
    }
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw DomainError("tabulated prior weights must be finite and nonnegative");
        }
    }
    auto d = std::make_shared<Data>();
    d->tabulated = true;
    d->knot_cdf.assign(knots.size(), 0.0);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        d->knot_cdf[i + 1] = d->knot_cdf[i] + 0.5 * (weights[i] + weights[i + 1]) * (knots[i + 1] - knots[i]);
    }
    double total = d->knot_cdf.back();
    if (!(total > 0.0)) {
        throw DomainError("tabulated prior has zero mass");
    }
    d->norm = 1.0 / total;
    for (double &w : weights) {
        w /= total;
    }
    for (double &c : d->knot_cdf) {
        c /= total;
    }
    d->knots = std::move(knots);
    d->weights = std::move(weights);

    PriorFamily prior(std::move(d));
    double mass = prior.radial_moment(0);
    if (!(std::abs(mass - 1.0) <= 1e-10)) {
        throw NumericalError("prior normalization check failed: integral = " + std::to_string(mass));
    }
    return prior;
}

bool PriorFamily::is_tabulated() const {
    return data_->tabulated;
}

double PriorFamily::lambda() const {
    return data_->lambda;
}

double PriorFamily::normalization() const {
    return data_->norm;
}

const std::vector<double> &PriorFamily::knots() const {
    return data_->knots;
}

const std::vector<double> &PriorFamily::knot_weights() const {
    return data_->weights;
}

double PriorFamily::weight(double r) const {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("purity must lie in [0, 1]");
    }
    const Data &d = *data_;
    if (d.tabulated) {
        auto it = std::upper_bound(d.knots.begin(), d.knots.end(), r);
        std::size_t i = it == d.knots.end() ? d.knots.size() - 2 : static_cast<std::size_t>(it - d.knots.begin()) - 1;
        double frac = (r - d.knots[i]) / (d.knots[i + 1] - d.knots[i]);
        return d.weights[i] + frac * (d.weights[i + 1] - d.weights[i]);
    }
    if (r == 0.0) {
        return 0.0;
    }
    return d.norm * r * r * std::pow((1.0 - r) * (1.0 + r), -d.lambda);
}

double PriorFamily::cdf(double r) const {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("purity must lie in [0, 1]");
    }
    const Data &d = *data_;
    if (!d.tabulated) {
        return boost::math::ibeta(1.5, 1.0 - d.lambda, r * r);
    }
    auto it = std::upper_bound(d.knots.begin(), d.knots.end(), r);
    if (it == d.knots.end()) {
        return 1.0;
    }
    std::size_t i = static_cast<std::size_t>(it - d.knots.begin()) - 1;
    double x = r - d.knots[i];
    double slope = (d.weights[i + 1] - d.weights[i]) / (d.knots[i + 1] - d.knots[i]);
    return d.knot_cdf[i] + d.weights[i] * x + 0.5 * slope * x * x;
}

double PriorFamily::radial_moment(int k) const {
    if (k < 0) {
        throw DomainError("moment order must be nonnegative");
    }
    double previous = std::numeric_limits<double>::quiet_NaN();
    for (int panels = 4; panels <= 4096; panels *= 2) {
        RadialRule rule(*this, panels);
        double value = rule.integrate([k](const RadialNode &n) { return std::pow(n.r, k); });
        if (std::abs(value - previous) <= 1e-14 * std::abs(value)) {
            return value;
        }
        previous = value;
    }
    throw NumericalError("radial moment quadrature did not converge");
}

double PriorFamily::sample_purity(double u) const {
    if (!(u >= 0.0 && u < 1.0)) {
        throw DomainError("uniform variate must lie in [0, 1)");
    }
    const Data &d = *data_;
    if (d.tabulated) {
        auto it = std::upper_bound(d.knot_cdf.begin(), d.knot_cdf.end(), u);
        std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - d.knot_cdf.begin()) - 1,
                                              d.knots.size() - 2);
        double target = u - d.knot_cdf[i];
        double w0 = d.weights[i];
        double slope = (d.weights[i + 1] - d.weights[i]) / (d.knots[i + 1] - d.knots[i]);
        double x;
        if (std::abs(slope) < 1e-300) {
            x = w0 > 0.0 ? target / w0 : 0.0;
        } else {
            // 0.5 slope x^2 + w0 x - target = 0, stable root.
            double disc = std::max(0.0, w0 * w0 + 2.0 * slope * target);
            x = 2.0 * target / (w0 + std::sqrt(disc));
        }
        return std::clamp(d.knots[i] + x, d.knots[i], d.knots[i + 1]);
    }
    if (u == 0.0) {
        return 0.0;
    }

    auto it = std::upper_bound(d.table_cdf.begin(), d.table_cdf.end(), u);
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - d.table_cdf.begin()) - 1, kTableIntervals - 1);
    double lo = d.table_t[i];
    double hi = d.table_t[i + 1];
    double width = hi - lo;

    // Invert the cubic Hermite segment by bisection.
    double f0 = d.table_cdf[i], f1 = d.table_cdf[i + 1];
    double m0 = d.table_slope[i] * width, m1 = d.table_slope[i + 1] * width;
    auto hermite = [&](double x) {
        double x2 = x * x, x3 = x2 * x;
        return (2 * x3 - 3 * x2 + 1) * f0 + (x3 - 2 * x2 + x) * m0 + (-2 * x3 + 3 * x2) * f1 + (x3 - x2) * m1;
    };
    double a = 0.0, b = 1.0;
    for (int it2 = 0; it2 < 60; ++it2) {
        double mid = 0.5 * (a + b);
        (hermite(mid) < u ? a : b) = mid;
    }
    double t = lo + 0.5 * (a + b) * width;

    // Two Newton steps on the exact CDF, kept inside the bracketing interval.
    for (int step = 0; step < 2; ++step) {
        double density = d.family_density_t(t);
        if (!(density > 0.0) || !std::isfinite(density)) {
            break;
        }
        double next = t - (d.family_cdf_t(t) - u) / density;
        if (!(next >= lo && next <= hi)) {
            break;
        }
        t = next;
    }
    return std::sin(t);
}

std::string PriorFamily::label() const {
    if (data_->tabulated) {
        return "tabulated";
    }
    std::ostringstream out;
    out << "lambda=" << data_->lambda;
    return out.str();
}

Vec3 sample_direction(double u1, double u2) {
    if (!(u1 >= 0.0 && u1 < 1.0 && u2 >= 0.0 && u2 < 1.0)) {
        throw DomainError("uniform variates must lie in [0, 1)");
    }
    double cos_theta = 2.0 * u1 - 1.0;
    double sin_theta = std::sqrt((1.0 - cos_theta) * (1.0 + cos_theta));
    double phi = 2.0 * std::numbers::pi * u2;
    return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

}  // namespace qpurity
