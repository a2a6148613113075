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

#include "qpurity/quadrature.h"

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qpurity/errors.h"

namespace qpurity {

namespace {

struct JacobiValue {
    double p;
    double dp;
};

// P_n^{(a,b)}(x) and its derivative by the standard three-term recurrence.
JacobiValue jacobi_value(int n, double a, double b, double x) {
    auto eval = [](int n, double a, double b, double x) {
        double p0 = 1.0;
        if (n == 0) {
            return p0;
        }
        double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
        for (int k = 2; k <= n; ++k) {
            double s = 2.0 * k + a + b;
            double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
            double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
            double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
            double p2 = (c2 * p1 - c3 * p0) / c1;
            p0 = p1;
            p1 = p2;
        }
        return p1;
    };
    double p = eval(n, a, b, x);
    double dp = n == 0 ? 0.0 : 0.5 * (n + a + b + 1.0) * eval(n - 1, a + 1.0, b + 1.0, x);
    return {p, dp};
}

}  // namespace

GaussRule gauss_jacobi(int order, double a, double b) {
    if (order < 1) {
        throw DomainError("quadrature order must be positive");
    }
    if (!(a > -1.0 && b > -1.0)) {
        throw DomainError("Jacobi exponents must exceed -1");
    }
    const int n = order;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    diag[0] = (b - a) / (a + b + 2.0);
    for (int k = 1; k < n; ++k) {
        double s = 2.0 * k + a + b;
        diag[k] = (b * b - a * a) / (s * (s + 2.0));
        double beta = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
        sub[k - 1] = std::sqrt(beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Golub-Welsch eigenvalue solve failed");
    }

    using boost::math::lgamma;
    const double log_const = lgamma(n + a + 1.0) + lgamma(n + b + 1.0) - lgamma(n + a + b + 1.0) -
                             lgamma(n + 1.0) + (a + b + 1.0) * std::numbers::ln2;
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = solver.eigenvalues()[i];
        for (int it = 0; it < 3; ++it) {
            JacobiValue v = jacobi_value(n, a, b, x);
            double step = v.p / v.dp;
            x -= step;
            if (std::abs(step) < 1e-17) {
                break;
            }
        }
        JacobiValue v = jacobi_value(n, a, b, x);
        rule.nodes[i] = x;
        rule.weights[i] = std::exp(log_const) / ((1.0 - x) * (1.0 + x) * v.dp * v.dp);
    }
    return rule;
}

GaussRule gauss_legendre(int order) {
    return gauss_jacobi(order, 0.0, 0.0);
}

RadialRule::RadialRule(const PriorFamily &prior, int panels, int order) : panels_(panels) {
    if (panels < 1) {
        throw DomainError("radial rule needs at least one panel");
    }
    const GaussRule legendre = gauss_legendre(order);
    nodes_.reserve(static_cast<std::size_t>(panels) * order);

    if (prior.is_tabulated()) {
        const auto &knots = prior.knots();
        const std::size_t intervals = knots.size() - 1;
        const int sub = std::max<int>(1, static_cast<int>((panels + intervals - 1) / intervals));
        for (std::size_t k = 0; k < intervals; ++k) {
            double width = (knots[k + 1] - knots[k]) / sub;
            for (int piece = 0; piece < sub; ++piece) {
                double lo = knots[k] + piece * width;
                for (int i = 0; i < order; ++i) {
                    double r = lo + 0.5 * width * (1.0 + legendre.nodes[i]);
                    double w = 0.5 * width * legendre.weights[i] * prior.weight(r);
                    nodes_.push_back({r, std::sqrt((1.0 - r) * (1.0 + r)), std::log(0.5 * (1.0 - r)),
                                      std::log1p(r) - std::numbers::ln2, w});
                }
            }
        }
        return;
    }

    // Family prior in s = arccos r: w(r) dr = C cos^2 s sin^beta s ds, beta = 1 - 2 lambda.
    const double beta = 1.0 - 2.0 * prior.lambda();
    const double c = prior.normalization();
    const double h = 0.5 * std::numbers::pi / panels;
    const GaussRule jacobi = gauss_jacobi(order, 0.0, beta);
    auto push = [&](double s, double w) {
        double half = 0.5 * s;
        nodes_.push_back({std::cos(s), std::sin(s), 2.0 * std::log(std::sin(half)), 2.0 * std::log(std::cos(half)), w});
    };
    for (int i = 0; i < order; ++i) {
        double s = 0.5 * h * (1.0 + jacobi.nodes[i]);
        double smooth = c * std::cos(s) * std::cos(s) * std::pow(std::sin(s) / s, beta);
        push(s, std::pow(0.5 * h, beta + 1.0) * jacobi.weights[i] * smooth);
    }
    for (int k = 1; k < panels; ++k) {
        for (int i = 0; i < order; ++i) {
            double s = h * (k + 0.5 * (1.0 + legendre.nodes[i]));
            double density = c * std::cos(s) * std::cos(s) * std::pow(std::sin(s), beta);
            push(s, 0.5 * h * legendre.weights[i] * density);
        }
    }
}

double RadialRule::integrate(const std::function<double(const RadialNode &)> &g) const {
    double total = 0.0;
    for (const auto &node : nodes_) {
        total += node.weight * g(node);
    }
    return total;
}

}  // namespace qpurity
