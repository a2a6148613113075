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

#include "qpurity/asymptotics.h"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "qpurity/errors.h"

namespace qpurity {

double quantum_fisher(double r) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw DomainError("quantum Fisher information needs 0 <= r < 1 (singular at r = 1)");
    }
    return 1.0 / ((1.0 - r) * (1.0 + r));
}

double joint_asymptote(int n_copies) {
    if (n_copies < 1) {
        throw DomainError("number of copies must be positive");
    }
    return 1.0 - 0.5 / n_copies;
}

double tomography_accuracy(double r, double n0) {
    if (!(r > 0.0 && r <= 1.0)) {
        throw DomainError("tomography accuracy needs 0 < r <= 1 (direction undefined at r = 0)");
    }
    if (!(n0 >= 1.0)) {
        throw DomainError("tomography needs at least one copy");
    }
    return 3.0 / n0 * (1.0 / (r * r) - 0.2);
}

double k_lambda(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw DomainError("k_lambda is defined for 0 < lambda < 1");
    }
    using boost::math::tgamma;
    return std::pow(2.0, 2.0 - lambda) * tgamma(2.5 - lambda) * tgamma(1.5 - lambda) * tgamma(lambda - 2.0) /
           (std::numbers::pi * tgamma(1.0 - lambda));
}

const char *prediction_kind_name(PredictionKind kind) {
    switch (kind) {
        case PredictionKind::joint:
            return "joint";
        case PredictionKind::adaptive_neg_lambda:
            return "adaptive-neg-lambda";
        case PredictionKind::adaptive_pos_lambda:
            return "adaptive-pos-lambda";
        case PredictionKind::hard_sphere:
            return "hard-sphere";
    }
    return "unknown";
}

double AsymptoticPrediction::deficit() const {
    double total = 0.0;
    for (const auto &term : deficit_terms) {
        total += term.value;
    }
    return total;
}

AsymptoticPrediction joint_prediction(int n_copies) {
    double deficit = integrated_cr_deficit(n_copies);
    return {PredictionKind::joint, 1.0 - deficit, {{"one_over_2n", deficit}}};
}

AsymptoticPrediction adaptive_prediction(int n_copies, double alpha, double lambda, std::optional<double> theta2) {
    if (n_copies < 2) {
        throw DomainError("adaptive prediction needs N >= 2");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1)");
    }
    if (!(lambda < 1.0)) {
        throw DomainError("prior exponent lambda must be < 1");
    }
    const double n = n_copies;
    const double n0 = std::pow(n, alpha);
    const double n1 = n - n0;
    const double t = theta2.value_or(2.0 * tomography_accuracy(1.0, n0));
    if (!(t > 0.0)) {
        throw DomainError("<Theta^2> must be positive");
    }

    AsymptoticPrediction out{};
    out.deficit_terms.push_back({"one_over_2n1", 0.5 / n1});
    if (lambda < 0.0) {
        out.kind = PredictionKind::adaptive_neg_lambda;
    } else if (lambda == 0.0) {
        out.kind = PredictionKind::hard_sphere;
        out.deficit_terms.push_back({"theta2_log_theta2", 3.0 * t * std::log(t) / (8.0 * n1)});
    } else {
        out.kind = PredictionKind::adaptive_pos_lambda;
        out.deficit_terms.push_back(
            {"tomography_correction", std::pow(2.0, lambda - 2.0) * k_lambda(lambda) * std::pow(t, 2.0 - lambda)});
    }
    out.value = 1.0 - out.deficit();
    return out;
}

AlphaWindow alpha_window(double lambda) {
    if (!(lambda < 1.0)) {
        throw DomainError("prior exponent lambda must be < 1");
    }
    return {std::max(0.5, 1.0 / (2.0 - lambda)), 1.0};
}

double integrated_cr_deficit(int n_copies) {
    if (n_copies < 1) {
        throw DomainError("number of copies must be positive");
    }
    return 0.5 / n_copies;
}

double optimal_alpha(int n_copies, double lambda) {
    auto deficit = [&](double a) { return adaptive_prediction(n_copies, a, lambda).deficit(); };
    constexpr int kGrid = 200;
    int best = 1;
    for (int i = 2; i < kGrid; ++i) {
        if (deficit(static_cast<double>(i) / kGrid) < deficit(static_cast<double>(best) / kGrid)) {
            best = i;
        }
    }
    double lo = static_cast<double>(best - 1) / kGrid;
    double hi = static_cast<double>(best + 1) / kGrid;
    lo = std::max(lo, 1e-6);
    hi = std::min(hi, 1.0 - 1e-9);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = deficit(x1), f2 = deficit(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = deficit(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = deficit(x2);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace qpurity
