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

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.h"
#include "qpurity/errors.h"
#include "qpurity/joint_bound.h"

namespace qpurity {
namespace {

void expect_small_n(const PriorFamily &prior, const std::array<double, 4> &expected) {
    for (int n = 1; n <= 4; ++n) {
        EXPECT_NEAR(max_fidelity(n, prior).f_max, expected[n - 1], 1e-12) << prior.label() << " N=" << n;
    }
}

TEST(JointBound, SmallNMatchesExactArithmetic) {
    expect_small_n(PriorFamily::hard_sphere(), oracle::kHardSphereFmax);
    expect_small_n(PriorFamily::bures(), oracle::kBuresFmax);
    expect_small_n(PriorFamily::with_lambda(-1.0), oracle::kLambdaMinusOneFmax);
    expect_small_n(PriorFamily::with_lambda(0.75), oracle::kLambdaThreeQuartersFmax);
    EXPECT_NEAR(max_fidelity(10, PriorFamily::hard_sphere()).f_max, oracle::kHardSphereFmaxN10, 1e-12);
}

TEST(JointBound, SingleCopyClosedForm) {
    // Hard sphere, N = 1: V = (3 pi / 16, 3 / 4) and the guess is its direction.
    const double perp = 3.0 * std::numbers::pi / 16.0, par = 0.75;
    JointBoundResult res = max_fidelity(1, PriorFamily::hard_sphere());
    ASSERT_EQ(res.terms.size(), 1u);
    EXPECT_NEAR(res.f_max, std::hypot(perp, par), 1e-14);
    EXPECT_NEAR(res.terms[0].v_perp, perp, 1e-14);
    EXPECT_NEAR(res.terms[0].v_par, par, 1e-14);
    EXPECT_NEAR(res.terms[0].optimal_guess, par / std::hypot(perp, par), 1e-14);
}

TEST(JointBound, MultiplicityMatchesCounting) {
    for (int n : {1, 2, 5, 10, 31, 64}) {
        for (int two_j = n % 2; two_j <= n; two_j += 2) {
            EXPECT_NEAR(log_multiplicity(n, two_j), oracle::log_multiplicity_by_counting(n, two_j), 1e-11);
        }
    }
    EXPECT_EQ(std::exp(log_multiplicity(2, 0)), 1.0);
    EXPECT_THROW(log_multiplicity(4, 1), DomainError);
    EXPECT_THROW(log_multiplicity(4, 6), DomainError);
    EXPECT_THROW(log_multiplicity(0, 0), DomainError);
}

TEST(JointBound, TraceAndDimensionRules) {
    for (int n : {1, 2, 3, 17, 50, 100}) {
        double dim = 0.0;
        for (int two_j = n % 2; two_j <= n; two_j += 2) {
            dim += std::exp(log_multiplicity(n, two_j) - n * std::numbers::ln2) * (two_j + 1);
        }
        EXPECT_NEAR(dim, 1.0, 1e-10) << n;
        for (double r : {0.0, 0.3, 0.7, 0.99, 1.0}) {
            double total = 0.0;
            for (int two_j = n % 2; two_j <= n; two_j += 2) {
                total += std::exp(log_multiplicity(n, two_j) + log_block_trace(n, two_j, r));
            }
            EXPECT_NEAR(total, 1.0, 1e-10) << "N=" << n << " r=" << r;
        }
    }
}

TEST(JointBound, BlockTraceEdgeCases) {
    EXPECT_NEAR(block_trace(4, 2, 0.0), 3.0 / 16.0, 1e-16);
    EXPECT_EQ(block_trace(4, 4, 1.0), 1.0);
    EXPECT_EQ(block_trace(4, 2, 1.0), 0.0);
    // Spin-1/2 trace for one copy is p + q = 1.
    EXPECT_NEAR(block_trace(1, 1, 0.42), 1.0, 1e-15);
    // Near r = 0 the geometric factor approaches 2j + 1 smoothly.
    EXPECT_NEAR(block_trace(6, 4, 1e-12) / block_trace(6, 4, 0.0), 1.0, 1e-9);
    EXPECT_THROW(block_trace(4, 2, 1.1), DomainError);
}

TEST(JointBound, FidelityIncreasesWithN) {
    for (const PriorFamily &prior : {PriorFamily::hard_sphere(), PriorFamily::bures()}) {
        double prev = 0.0;
        for (int n = 1; n <= 40; ++n) {
            double f = max_fidelity(n, prior).f_max;
            EXPECT_GT(f, prev) << n;
            EXPECT_LT(f, 1.0);
            prev = f;
        }
    }
}

TEST(JointBound, VVectorMatchesTerms) {
    JointBoundResult res = max_fidelity(9, PriorFamily::bures());
    for (const BlockTerm &t : res.terms) {
        BlockVector v = v_vector(9, t.two_j, PriorFamily::bures());
        EXPECT_NEAR(v.perp, t.v_perp, 1e-13 * t.v_perp + 1e-300);
        EXPECT_NEAR(v.par, t.v_par, 1e-13 * t.v_par + 1e-300);
        EXPECT_GE(t.optimal_guess, 0.0);
        EXPECT_LE(t.optimal_guess, 1.0);
    }
}

TEST(JointBound, OptimalGuessApproachesTwoJOverN) {
    const int n = 2000;
    JointBoundResult res = max_fidelity(n, PriorFamily::bures());
    // Only blocks carrying prior mass matter; the deviation is O(1/sqrt N) there.
    for (const BlockTerm &t : res.terms) {
        if (t.contribution() > 1e-6) {
            EXPECT_NEAR(t.optimal_guess, t.two_j / static_cast<double>(n), 0.05) << t.two_j;
        }
    }
}

TEST(JointBound, ThreadCountInvariant) {
    BoundOptions one, many;
    one.threads = 1;
    many.threads = 5;
    for (int n : {3, 257, 1500}) {
        JointBoundResult a = max_fidelity(n, PriorFamily::bures(), one);
        JointBoundResult b = max_fidelity(n, PriorFamily::bures(), many);
        EXPECT_EQ(a.f_max, b.f_max);
        for (std::size_t i = 0; i < a.terms.size(); ++i) {
            EXPECT_EQ(a.terms[i].weighted_perp, b.terms[i].weighted_perp);
        }
    }
}

TEST(JointBound, ApproachesAsymptote) {
    double d = 5000 * (1.0 - max_fidelity(5000, PriorFamily::bures()).f_max);
    EXPECT_GT(d, 0.45);
    EXPECT_LT(d, 0.5);
}

TEST(Fig1, LogSpacedCounts) {
    std::vector<int> c = log_spaced_counts(10, 5000, 30);
    ASSERT_EQ(c.size(), 30u);
    EXPECT_EQ(c.front(), 10);
    EXPECT_EQ(c.back(), 5000);
    for (std::size_t i = 1; i < c.size(); ++i) {
        EXPECT_GT(c[i], c[i - 1]);
    }
    EXPECT_THROW(log_spaced_counts(0, 5, 3), DomainError);
    EXPECT_THROW(log_spaced_counts(10, 5, 3), DomainError);
}

TEST(Fig1, RichardsonRemovesGeometricTail) {
    auto g = [](int k) { return 0.5 - 0.3 * std::pow(0.4, k); };
    EXPECT_NEAR(richardson_geometric(g(1), g(2), g(3)), 0.5, 1e-14);
    EXPECT_EQ(richardson_geometric(1.0, 1.0, 1.0), 1.0);
}

TEST(Fig1, CurveRows) {
    std::vector<int> n{1, 2, 3};
    auto curve = fig1_curve(n, PriorFamily::hard_sphere());
    ASSERT_EQ(curve.size(), 3u);
    EXPECT_NEAR(curve[1].scaled_deficit, 2.0 * (1.0 - oracle::kHardSphereFmax[1]), 1e-12);
}

}  // namespace
}  // namespace qpurity
