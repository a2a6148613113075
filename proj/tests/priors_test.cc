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
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "qpurity/errors.h"
#include "qpurity/priors.h"
#include "qpurity/stats.h"

namespace qpurity {
namespace {

TEST(Priors, NamedMembers) {
    EXPECT_EQ(PriorFamily::hard_sphere().lambda(), 0.0);
    EXPECT_EQ(PriorFamily::bures().lambda(), 0.5);
    EXPECT_NEAR(PriorFamily::hard_sphere().normalization(), 3.0, 1e-14);
    EXPECT_NEAR(PriorFamily::bures().normalization(), 4.0 / std::numbers::pi, 1e-14);
    EXPECT_NEAR(PriorFamily::bures().weight(0.5), 4.0 / std::numbers::pi * 0.25 / std::sqrt(0.75), 1e-14);
    EXPECT_NEAR(PriorFamily::hard_sphere().weight(0.5), 0.75, 1e-15);
}

TEST(Priors, UnitMassAcrossFamily) {
    for (double lambda : {-2.0, -1.0, 0.0, 0.25, 0.5, 0.75, 0.9}) {
        PriorFamily p = PriorFamily::with_lambda(lambda);
        EXPECT_NEAR(p.radial_moment(0), 1.0, 1e-10) << lambda;
        EXPECT_NEAR(p.cdf(1.0), 1.0, 1e-14);
        EXPECT_EQ(p.cdf(0.0), 0.0);
    }
}

TEST(Priors, Moments) {
    // <r^2> = E[Beta(3/2, 1 - lambda)] = (3/2) / (5/2 - lambda).
    for (double lambda : {-1.0, 0.0, 0.5, 0.8}) {
        PriorFamily p = PriorFamily::with_lambda(lambda);
        EXPECT_NEAR(p.radial_moment(2), 1.5 / (2.5 - lambda), 1e-11) << lambda;
    }
    EXPECT_NEAR(PriorFamily::hard_sphere().radial_moment(1), 0.75, 1e-12);
}

TEST(Priors, RejectsLambdaAtOrAboveOne) {
    EXPECT_THROW(PriorFamily::with_lambda(1.0), DomainError);
    EXPECT_THROW(PriorFamily::with_lambda(1.5), DomainError);
    EXPECT_THROW(PriorFamily::with_lambda(std::nan("")), DomainError);
}

TEST(Priors, CdfMatchesIncompleteBeta) {
    for (double lambda : {-1.0, 0.0, 0.5}) {
        PriorFamily p = PriorFamily::with_lambda(lambda);
        for (double r : {0.1, 0.4, 0.8, 0.99}) {
            EXPECT_NEAR(p.cdf(r), boost::math::ibeta(1.5, 1.0 - lambda, r * r), 1e-13);
        }
    }
}

TEST(Priors, SamplerInvertsCdf) {
    PriorFamily p = PriorFamily::bures();
    for (double u : {1e-9, 0.01, 0.3, 0.5, 0.77, 0.999, 1.0 - 1e-6}) {
        // Near r = 1 the CDF moves by w(r) * ulp(r) between neighbouring doubles.
        double r = p.sample_purity(u);
        double grain = p.weight(std::min(r, 1.0 - 1e-16)) * 4.0 * std::numeric_limits<double>::epsilon();
        EXPECT_NEAR(p.cdf(r), u, 1e-13 + grain) << u;
    }
    EXPECT_THROW(p.sample_purity(1.0), DomainError);
    EXPECT_THROW(p.sample_purity(-0.1), DomainError);
}

// Kolmogorov-Smirnov at 99%: critical value 1.628 / sqrt(n).
TEST(Priors, SamplesPassKolmogorovSmirnov) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = 20000;
    for (double lambda : {0.0, 0.5, -1.0}) {
        PriorFamily p = PriorFamily::with_lambda(lambda);
        std::vector<double> draws(n);
        for (double &d : draws) {
            d = p.sample_purity(unif(rng));
        }
        double ks = ks_statistic(draws, [&](double r) { return p.cdf(r); });
        EXPECT_LT(ks, 1.628 / std::sqrt(n)) << lambda;
    }
}

TEST(Priors, IsotropicDirection) {
    Vec3 pole = sample_direction(0.9999999, 0.25);
    EXPECT_NEAR(norm(pole), 1.0, 1e-15);
    EXPECT_GT(pole[2], 0.99);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> z(20000);
    for (double &v : z) {
        v = sample_direction(unif(rng), unif(rng))[2];
    }
    // n_z is uniform on [-1, 1] for an isotropic direction.
    EXPECT_LT(ks_statistic(z, [](double x) { return 0.5 * (x + 1.0); }), 1.628 / std::sqrt(20000.0));
}

TEST(Priors, TabulatedIsNormalized) {
    std::vector<double> knots, w;
    for (int i = 0; i <= 40; ++i) {
        double r = i / 40.0;
        knots.push_back(r);
        w.push_back(6.0 * r * r);  // hard sphere scaled by 2
    }
    PriorFamily p = PriorFamily::tabulated(knots, w);
    EXPECT_TRUE(p.is_tabulated());
    EXPECT_TRUE(std::isnan(p.lambda()));
    EXPECT_NEAR(p.radial_moment(0), 1.0, 1e-12);
    EXPECT_NEAR(p.weight(0.5), 0.75, 2e-3);
    EXPECT_NEAR(p.cdf(0.5), 0.125, 2e-3);
    EXPECT_NEAR(p.cdf(p.sample_purity(0.4)), 0.4, 1e-10);
}

TEST(Priors, TabulatedRejectsBadInput) {
    EXPECT_THROW(PriorFamily::tabulated({0.0}, {1.0}), DomainError);
    EXPECT_THROW(PriorFamily::tabulated({0.0, 0.5}, {1.0, 1.0}), DomainError);
    EXPECT_THROW(PriorFamily::tabulated({0.0, 0.6, 0.5, 1.0}, {1.0, 1.0, 1.0, 1.0}), DomainError);
    EXPECT_THROW(PriorFamily::tabulated({0.0, 1.0}, {1.0, -1.0}), DomainError);
    EXPECT_THROW(PriorFamily::tabulated({0.0, 1.0}, {0.0, 0.0}), DomainError);
}

}  // namespace
}  // namespace qpurity
