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

#include "qpurity/separable_sim.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpurity/errors.h"
#include "qpurity/joint_bound.h"
#include "qpurity/parallel.h"

namespace qpurity {

namespace {

constexpr long kBernoulliLimit = 1000;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Angle between unit vectors, accurate for small angles.
double angle_between(const Vec3 &a, const Vec3 &b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

BlochState draw_state(const PriorFamily &prior, const std::optional<double> &fixed_r, TrialRng &rng) {
    double r = fixed_r ? *fixed_r : prior.sample_purity(rng.uniform());
    double u1 = rng.uniform();
    double u2 = rng.uniform();
    return BlochState(r, sample_direction(u1, u2));
}

TrialOutcome make_outcome(const BlochState &state, const Vec3 &estimate, double cos_theta, double theta, double R) {
    double r = state.purity();
    return {state, estimate, cos_theta, theta, R, fidelity(r, R), (R - r) * (R - r)};
}

SimulationSummary summarize(const std::vector<TrialOutcome> &outcomes) {
    const std::size_t n = outcomes.size();
    std::vector<double> column(n);
    auto estimate = [&](auto field) {
        for (std::size_t i = 0; i < n; ++i) {
            column[i] = field(outcomes[i]);
        }
        return mean_estimate(column);
    };
    SimulationSummary s;
    s.trials_used = static_cast<long>(n);
    s.mean_fidelity = estimate([](const TrialOutcome &o) { return o.fidelity; });
    s.mean_mse = estimate([](const TrialOutcome &o) { return o.squared_error; });
    s.mean_bias = estimate([](const TrialOutcome &o) { return o.purity_estimate - o.true_state.purity(); });
    s.mean_one_minus_cos = estimate([](const TrialOutcome &o) {
        double half = 0.5 * o.theta;
        return 2.0 * std::sin(half) * std::sin(half);
    });
    s.theta2_moment = estimate([](const TrialOutcome &o) { return o.theta * o.theta; });
    s.theta4_moment = estimate([](const TrialOutcome &o) { return std::pow(o.theta, 4); });
    return s;
}

template <class Config, class Trial>
std::vector<TrialOutcome> run_trials(const Config &config, Trial trial) {
    std::vector<std::optional<TrialOutcome>> slots(static_cast<std::size_t>(config.trials));
    parallel_chunks(slots.size(), config.threads, 1, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            slots[i] = trial(config, i);
        }
    });
    std::vector<TrialOutcome> outcomes;
    outcomes.reserve(slots.size());
    for (auto &slot : slots) {
        outcomes.push_back(std::move(*slot));
    }
    return outcomes;
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) : engine_(splitmix64(splitmix64(seed) ^ trial)) {
}

double TrialRng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

long TrialRng::binomial(long n, double p_plus) {
    p_plus = std::clamp(p_plus, 0.0, 1.0);
    if (n > kBernoulliLimit) {
        return std::binomial_distribution<long>(n, p_plus)(engine_);
    }
    long plus = 0;
    for (long k = 0; k < n; ++k) {
        plus += uniform() < p_plus ? 1 : 0;
    }
    return plus;
}

int AdaptiveConfig::n0() const {
    return std::max(3, static_cast<int>(std::lround(std::pow(static_cast<double>(n_copies), alpha))));
}

int AdaptiveConfig::n1() const {
    return n_copies - n0();
}

void AdaptiveConfig::validate() const {
    if (n_copies < 4) {
        throw DomainError("adaptive protocol needs N >= 4");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1)");
    }
    if (n1() < 1) {
        throw DomainError("alpha leaves no copies for the projective stage");
    }
    if (trials < 1) {
        throw DomainError("need at least one trial");
    }
    if (fixed_r && !(*fixed_r >= 0.0 && *fixed_r <= 1.0)) {
        throw DomainError("fixed purity must lie in [0, 1]");
    }
}

void GreedyConfig::validate() const {
    if (n_copies < 1) {
        throw DomainError("greedy protocol needs N >= 1");
    }
    if (trials < 1) {
        throw DomainError("need at least one trial");
    }
    if (fixed_r && !(*fixed_r >= 0.0 && *fixed_r <= 1.0)) {
        throw DomainError("fixed purity must lie in [0, 1]");
    }
}

Vec3 tomography_stage(const BlochState &state, int n0, TrialRng &rng) {
    if (n0 < 3) {
        throw DomainError("tomography needs at least three copies");
    }
    const int base = n0 / 3;
    const int rem = n0 % 3;
    const int sizes[3] = {base + (rem > 0 ? 1 : 0), base + (rem > 1 ? 1 : 0), base};
    const Vec3 bloch = state.bloch_vector();
    Vec3 estimate{};
    for (int k = 0; k < 3; ++k) {
        long plus = rng.binomial(sizes[k], 0.5 * (1.0 + bloch[k]));
        estimate[k] = static_cast<double>(2 * plus - sizes[k]) / sizes[k];
    }
    double len = norm(estimate);
    if (len == 0.0) {
        return {0.0, 0.0, 1.0};
    }
    return {estimate[0] / len, estimate[1] / len, estimate[2] / len};
}

double projective_stage(const BlochState &state, const Vec3 &axis, int n1, TrialRng &rng, ClampPolicy clamp) {
    if (n1 < 1) {
        throw DomainError("projective stage needs at least one copy");
    }
    if (!(std::abs(norm(axis) - 1.0) <= 1e-12)) {
        throw DomainError("measurement axis must be a unit vector");
    }
    double c = dot(state.direction(), axis);
    long plus = rng.binomial(n1, 0.5 * (1.0 + state.purity() * c));
    double R = 2.0 * static_cast<double>(plus) / n1 - 1.0;
    switch (clamp) {
        case ClampPolicy::clamp_to_zero:
            R = std::max(0.0, R);
            break;
    }
    return std::min(R, 1.0);
}

TrialOutcome adaptive_trial(const AdaptiveConfig &config, std::uint64_t trial) {
    TrialRng rng(config.seed, trial);
    BlochState state = draw_state(config.prior, config.fixed_r, rng);
    Vec3 axis = tomography_stage(state, config.n0(), rng);
    double R = projective_stage(state, axis, config.n1(), rng, config.clamp);
    return make_outcome(state, axis, dot(state.direction(), axis), angle_between(state.direction(), axis), R);
}

TrialOutcome greedy_trial(const GreedyConfig &config, std::uint64_t trial) {
    TrialRng rng(config.seed, trial);
    BlochState state = draw_state(config.prior, config.fixed_r, rng);
    if (config.fixed_direction) {
        state = BlochState(state.purity(), *config.fixed_direction);
    }
    const Vec3 axis{0.0, 0.0, 1.0};
    long plus = rng.binomial(config.n_copies, 0.5 * (1.0 + state.bloch_vector()[2]));
    double R = std::min(1.0, std::abs(2.0 * static_cast<double>(plus) / config.n_copies - 1.0));
    return make_outcome(state, axis, dot(state.direction(), axis), angle_between(state.direction(), axis), R);
}

SimulationRun simulate_adaptive(const AdaptiveConfig &config) {
    config.validate();
    SimulationRun run;
    run.outcomes = run_trials(config, adaptive_trial);
    run.summary = summarize(run.outcomes);
    SimulationSummary &s = run.summary;
    s.protocol = "adaptive";
    s.n_copies = config.n_copies;
    s.alpha = config.alpha;
    s.n0 = config.n0();
    s.n1 = config.n1();
    s.prior_label = config.prior.label();
    s.seed = config.seed;
    s.fixed_r = config.fixed_r;
    if (config.compare_joint && !config.fixed_r) {
        try {
            BoundOptions options;
            options.threads = config.threads;
            s.joint_f_max = max_fidelity(config.n_copies, config.prior, options).f_max;
        } catch (const NumericalError &) {
            s.joint_f_max.reset();
        }
    }
    return run;
}

SimulationRun simulate_greedy(const GreedyConfig &config) {
    config.validate();
    SimulationRun run;
    run.outcomes = run_trials(config, greedy_trial);
    run.summary = summarize(run.outcomes);
    SimulationSummary &s = run.summary;
    s.protocol = "greedy";
    s.n_copies = config.n_copies;
    s.n1 = config.n_copies;
    s.prior_label = config.prior.label();
    s.seed = config.seed;
    s.fixed_r = config.fixed_r;
    return run;
}

SimulationSummary run_adaptive(const AdaptiveConfig &config) {
    return simulate_adaptive(config).summary;
}

SimulationSummary run_greedy(const GreedyConfig &config) {
    return simulate_greedy(config).summary;
}

PointwiseMse pointwise_mse(double r, AdaptiveConfig config) {
    config.fixed_r = r;
    config.compare_joint = false;
    SimulationSummary s = run_adaptive(config);
    return {s.mean_mse, s.mean_bias};
}

}  // namespace qpurity
