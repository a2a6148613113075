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

#include "oracles.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

namespace qpurity::oracle {

double greedy_limit(double lambda) {
    using boost::math::quadrature::gauss_kronrod;
    using boost::math::quadrature::tanh_sinh;
    const double c = 4.0 / std::sqrt(std::numbers::pi) * boost::math::tgamma(2.5 - lambda) /
                     boost::math::tgamma(1.0 - lambda);
    auto inner = [](double r) {
        auto g = [r](double u) {
            double R = r * u;
            return 1.0 - (r * R + std::sqrt(1.0 - r * r) * std::sqrt(1.0 - R * R));
        };
        return gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 15, 1e-14);
    };
    // w(r) dr = c sin^2 t cos^{1 - 2 lambda} t dt
    auto outer = [&](double t) {
        double r = std::sin(t);
        return c * r * r * std::pow(std::cos(t), 1.0 - 2.0 * lambda) * inner(r);
    };
    tanh_sinh<double> integrator;
    return integrator.integrate(outer, 0.0, std::numbers::pi / 2);
}

double wigner_d(int two_j, int two_m, int two_mp, double beta) {
    // Extended precision: the alternating sum cancels heavily once j passes ~15.
    using boost::math::factorial;
    using real = long double;
    const int jm = (two_j + two_m) / 2, jmm = (two_j - two_m) / 2;
    const int jmp = (two_j + two_mp) / 2, jmmp = (two_j - two_mp) / 2;
    const real pref =
        std::sqrt(factorial<real>(jm) * factorial<real>(jmm) * factorial<real>(jmp) * factorial<real>(jmmp));
    const real c = std::cos(static_cast<real>(beta) / 2), s = std::sin(static_cast<real>(beta) / 2);
    real sum = 0.0L;
    for (int k = 0; k <= two_j; ++k) {
        int a = jmp - k, b = jmm - k, d = (two_m - two_mp) / 2 + k;
        if (a < 0 || b < 0 || d < 0) {
            continue;
        }
        real term = 1.0L / (factorial<real>(a) * factorial<real>(k) * factorial<real>(d) * factorial<real>(b));
        term *= std::pow(c, two_j + (two_mp - two_m) / 2 - 2 * k);
        term *= std::pow(s, (two_m - two_mp) / 2 + 2 * k);
        sum += (d % 2 == 0 ? 1.0L : -1.0L) * term;
    }
    return static_cast<double>(pref * sum);
}

double log_multiplicity_by_counting(int n, int two_j) {
    const int k = (n - two_j) / 2;
    double top = boost::math::binomial_coefficient<double>(n, k);
    double below = k >= 1 ? boost::math::binomial_coefficient<double>(n, k - 1) : 0.0;
    return std::log(top - below);
}

}  // namespace qpurity::oracle
