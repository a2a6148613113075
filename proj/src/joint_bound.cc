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

#include "qpurity/joint_bound.h"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mass_integrals.h"
#include "qpurity/errors.h"
#include "qpurity/parallel.h"
#include "qpurity/quadrature.h"

namespace qpurity {

namespace detail {

double log_binomial(int n, int k) {
    using boost::math::lgamma;
    return lgamma(n + 1.0) - lgamma(k + 1.0) - lgamma(n - k + 1.0);
}

int initial_panels(int n_copies) {
    int nodes = std::max(64, 4 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_copies)))));
    return (nodes + RadialRule::kOrder - 1) / RadialRule::kOrder;
}

MassIntegrals integrate_masses(const PriorFamily &prior, const kernels::MassLanes &lanes, int panels,
                               const BoundOptions &options) {
    const std::size_t count = lanes.size();
    MassIntegrals previous;
    double last_change = std::numeric_limits<double>::infinity();
    for (; panels <= options.max_panels; panels *= 2) {
        RadialRule rule(prior, panels);
        std::vector<kernels::NodeTerms> terms;
        terms.reserve(rule.nodes().size());
        for (const RadialNode &node : rule.nodes()) {
            if (node.weight == 0.0) {
                continue;
            }
            terms.push_back({node.log_p, node.log_q, node.weight * node.sqrt_one_minus_r2, node.weight * node.r});
        }

        MassIntegrals current{std::vector<double>(count, 0.0), std::vector<double>(count, 0.0), panels};
        parallel_chunks(count, options.threads, kernels::kLaneWidth, [&](std::size_t begin, std::size_t end) {
            for (const auto &node : terms) {
                kernels::accumulate_masses(node, lanes, begin, end, current.perp, current.par, options.isa);
            }
        });

        if (!previous.perp.empty()) {
            double change = 0.0;
            double scale = 0.0;
            for (std::size_t i = 0; i < count; ++i) {
                change += std::abs(current.perp[i] - previous.perp[i]) + std::abs(current.par[i] - previous.par[i]);
                scale += std::hypot(current.perp[i], current.par[i]);
            }
            if (change <= options.tolerance * scale) {
                return current;
            }
            last_change = scale > 0.0 ? change / scale : change;
        }
        previous = std::move(current);
    }
    std::ostringstream msg;
    msg << "radial quadrature did not converge: relative change " << last_change << " after "
        << previous.panels << " panels (tolerance " << options.tolerance << ", prior " << prior.label() << ")";
    throw NumericalError(msg.str());
}

}  // namespace detail

namespace {

void check_block(int n_copies, int two_j) {
    if (n_copies < 1) {
        throw DomainError("number of copies must be positive");
    }
    if (two_j < 0 || two_j > n_copies || (n_copies - two_j) % 2 != 0) {
        throw DomainError("2j must lie in [0, N] with the parity of N");
    }
}

void add_block_lane(kernels::MassLanes &lanes, int n_copies, int two_j) {
    lanes.push_back(log_multiplicity(n_copies, two_j), 0.5 * (n_copies - two_j), 0.5 * (n_copies + two_j),
                    two_j + 1.0);
}

}  // namespace

double BlockTerm::contribution() const {
    return std::hypot(weighted_perp, weighted_par);
}

double log_multiplicity(int n_copies, int two_j) {
    check_block(n_copies, two_j);
    int lower = (n_copies - two_j) / 2;
    return detail::log_binomial(n_copies, lower) + std::log(two_j + 1.0) - std::log(0.5 * (n_copies + two_j) + 1.0);
}

double log_block_trace(int n_copies, int two_j, double r) {
    check_block(n_copies, two_j);
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("purity must lie in [0, 1]");
    }
    if (r == 0.0) {
        return std::log(two_j + 1.0) - n_copies * std::numbers::ln2;
    }
    if (r == 1.0) {
        return two_j == n_copies ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    double log_p = std::log(0.5 * (1.0 - r));
    double log_q = std::log1p(r) - std::numbers::ln2;
    double log_x = log_p - log_q;
    double geom = std::log(-std::expm1((two_j + 1.0) * log_x)) - std::log(-std::expm1(log_x));
    return 0.5 * (n_copies - two_j) * log_p + 0.5 * (n_copies + two_j) * log_q + geom;
}

double block_trace(int n_copies, int two_j, double r) {
    return std::exp(log_block_trace(n_copies, two_j, r));
}

BlockVector v_vector(int n_copies, int two_j, const PriorFamily &prior, const BoundOptions &options) {
    check_block(n_copies, two_j);
    kernels::MassLanes lanes;
    lanes.push_back(0.0, 0.5 * (n_copies - two_j), 0.5 * (n_copies + two_j), two_j + 1.0);
    lanes.pad();
    auto integrals = detail::integrate_masses(prior, lanes, detail::initial_panels(n_copies), options);
    return {integrals.perp[0], integrals.par[0]};
}

JointBoundResult max_fidelity(int n_copies, const PriorFamily &prior, const BoundOptions &options) {
    if (n_copies < 1) {
        throw DomainError("number of copies must be positive");
    }
    kernels::MassLanes lanes;
    for (int two_j = n_copies % 2; two_j <= n_copies; two_j += 2) {
        add_block_lane(lanes, n_copies, two_j);
    }
    const std::size_t blocks = lanes.size();
    lanes.pad();
    auto integrals = detail::integrate_masses(prior, lanes, detail::initial_panels(n_copies), options);

    JointBoundResult result{n_copies, prior, {}, 0.0, integrals.panels};
    result.terms.reserve(blocks);
    for (std::size_t i = 0; i < blocks; ++i) {
        BlockTerm term{};
        term.two_j = n_copies % 2 + 2 * static_cast<int>(i);
        term.log_multiplicity = lanes.log_coeff[i];
        term.weighted_perp = integrals.perp[i];
        term.weighted_par = integrals.par[i];
        auto unweighted = [&](double v) { return v > 0.0 ? std::exp(std::log(v) - term.log_multiplicity) : 0.0; };
        term.v_perp = unweighted(term.weighted_perp);
        term.v_par = unweighted(term.weighted_par);
        double norm = term.contribution();
        term.optimal_guess = norm > 0.0 ? term.weighted_par / norm : static_cast<double>(term.two_j) / n_copies;
        result.f_max += norm;
        result.terms.push_back(term);
    }
    return result;
}

std::vector<Fig1Point> fig1_curve(std::span<const int> n_list, const PriorFamily &prior, const BoundOptions &options) {
    std::vector<Fig1Point> table;
    table.reserve(n_list.size());
    for (int n : n_list) {
        auto bound = max_fidelity(n, prior, options);
        table.push_back({n, bound.f_max, n * (1.0 - bound.f_max)});
    }
    return table;
}

std::vector<int> log_spaced_counts(int n_min, int n_max, int points) {
    if (n_min < 1 || n_max < n_min || points < 1) {
        throw DomainError("need 1 <= n_min <= n_max and at least one point");
    }
    std::vector<int> counts;
    if (points == 1) {
        counts.push_back(n_min);
        return counts;
    }
    double ratio = std::log(static_cast<double>(n_max) / n_min);
    for (int k = 0; k < points; ++k) {
        int n = static_cast<int>(std::lround(n_min * std::exp(ratio * k / (points - 1))));
        if (counts.empty() || n != counts.back()) {
            counts.push_back(n);
        }
    }
    return counts;
}

double richardson_geometric(double g1, double g2, double g3) {
    double denom = g1 + g3 - 2.0 * g2;
    if (denom == 0.0) {
        return g3;
    }
    return (g1 * g3 - g2 * g2) / denom;
}

}  // namespace qpurity
