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

#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>

#include "qpurity/errors.h"
#include "qpurity/quadrature.h"

namespace qpurity {
namespace {

TEST(GaussRules, LegendreIntegratesPolynomialsExactly) {
    GaussRule g = gauss_legendre(16);
    ASSERT_EQ(g.nodes.size(), 16u);
    for (int k = 0; k <= 31; ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            sum += g.weights[i] * std::pow(g.nodes[i], k);
        }
        double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
        EXPECT_NEAR(sum, exact, 1e-14) << k;
    }
}

TEST(GaussRules, JacobiMoments) {
    // int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1).
    for (auto [a, b] : {std::pair{0.0, -0.5}, {0.0, 0.5}, {1.5, 0.0}, {0.0, 2.0}}) {
        GaussRule g = gauss_jacobi(12, a, b);
        double sum = 0.0, first = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            sum += g.weights[i];
            first += g.weights[i] * (1.0 + g.nodes[i]);
        }
        double m0 = std::pow(2.0, a + b + 1) * boost::math::beta(a + 1, b + 1);
        double m1 = std::pow(2.0, a + b + 2) * boost::math::beta(a + 1, b + 2);
        EXPECT_NEAR(sum, m0, 1e-13 * m0);
        EXPECT_NEAR(first, m1, 1e-13 * m1);
    }
    EXPECT_THROW(gauss_jacobi(4, -1.0, 0.0), DomainError);
    EXPECT_THROW(gauss_legendre(0), DomainError);
}

TEST(RadialRule, NodesCarryConsistentTerms) {
    RadialRule rule(PriorFamily::bures(), 8);
    EXPECT_EQ(rule.panels(), 8);
    for (const RadialNode &n : rule.nodes()) {
        EXPECT_NEAR(n.r * n.r + n.sqrt_one_minus_r2 * n.sqrt_one_minus_r2, 1.0, 1e-15);
        EXPECT_NEAR(std::exp(n.log_p), (1.0 - n.r) / 2.0, 1e-14);
        EXPECT_NEAR(std::exp(n.log_q), (1.0 + n.r) / 2.0, 1e-14);
        EXPECT_GT(n.weight, 0.0);
    }
}

TEST(RadialRule, SingularEndpointIsResolved) {
    // Bures density blows up at r = 1; moments still converge with few panels.
    for (double lambda : {0.5, 0.9, 0.0, -1.0}) {
        RadialRule rule(PriorFamily::with_lambda(lambda), 4);
        EXPECT_NEAR(rule.integrate([](const RadialNode &) { return 1.0; }), 1.0, 1e-12) << lambda;
        EXPECT_NEAR(rule.integrate([](const RadialNode &n) { return n.r * n.r; }), 1.5 / (2.5 - lambda), 1e-12);
        // sqrt(1 - r^2) is the other half of the fidelity integrand.
        double s = rule.integrate([](const RadialNode &n) { return n.sqrt_one_minus_r2; });
        // E[(1 - r^2)^{1/2}] with r^2 ~ Beta(3/2, 1 - lambda).
        double exact = boost::math::beta(1.5, 1.5 - lambda) / boost::math::beta(1.5, 1.0 - lambda);
        EXPECT_NEAR(s, exact, 1e-12) << lambda;
    }
}

TEST(RadialRule, TabulatedPrior) {
    std::vector<double> knots{0.0, 0.25, 0.5, 0.75, 1.0}, w{0.0, 1.0, 1.0, 1.0, 0.0};
    RadialRule rule(PriorFamily::tabulated(knots, w), 1);
    EXPECT_NEAR(rule.integrate([](const RadialNode &) { return 1.0; }), 1.0, 1e-13);
    EXPECT_NEAR(rule.integrate([](const RadialNode &n) { return n.r; }), 0.5, 1e-13);
    EXPECT_THROW(RadialRule(PriorFamily::bures(), 0), DomainError);
}

}  // namespace
}  // namespace qpurity
