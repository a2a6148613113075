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

#ifndef QPURITY_SEPARABLE_SIM_H
#define QPURITY_SEPARABLE_SIM_H

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qpurity/core.h"
#include "qpurity/priors.h"
#include "qpurity/stats.h"

namespace qpurity {

/// What to do with a negative frequency estimate 2 N+/N1 - 1.
enum class ClampPolicy { clamp_to_zero };

/// Random stream for one trial, derived from (seed, trial index) only.
class TrialRng {
   public:
    TrialRng(std::uint64_t seed, std::uint64_t trial);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Number of +1 outcomes among n independent binary measurements.
    long binomial(long n, double p_plus);

   private:
    std::mt19937_64 engine_;
};

/// Two-stage adaptive protocol: n0 = max(3, round(N^alpha)) copies of
/// three-axis tomography, then the remaining n1 copies projected on the
/// estimated direction.
struct AdaptiveConfig {
    int n_copies;
    double alpha;
    PriorFamily prior;
    long trials;
    std::uint64_t seed;
    ClampPolicy clamp = ClampPolicy::clamp_to_zero;
    unsigned threads = 0;
    /// Fixed true purity (direction still isotropic) instead of prior draws.
    std::optional<double> fixed_r;
    /// Attach the exact joint-measurement bound to the summary.
    bool compare_joint = true;

    int n0() const;
    int n1() const;
    /// Throws DomainError on invalid parameters.
    void validate() const;
};

/// All N copies measured along +z, purity estimated as |2 N+/N - 1|.
struct GreedyConfig {
    int n_copies;
    PriorFamily prior;
    long trials;
    std::uint64_t seed;
    unsigned threads = 0;
    std::optional<double> fixed_r;
    std::optional<Vec3> fixed_direction;

    void validate() const;
};

struct TrialOutcome {
    BlochState true_state;
    Vec3 direction_estimate;
    double cos_theta;
    double theta;
    double purity_estimate;
    double fidelity;
    double squared_error;
};

struct SimulationSummary {
    std::string protocol;
    int n_copies = 0;
    double alpha = 0.0;
    int n0 = 0;
    int n1 = 0;
    std::string prior_label;
    long trials_used = 0;
    std::uint64_t seed = 0;
    std::optional<double> fixed_r;

    MeanEstimate mean_fidelity;
    MeanEstimate mean_mse;
    MeanEstimate mean_bias;
    MeanEstimate mean_one_minus_cos;
    MeanEstimate theta2_moment;
    MeanEstimate theta4_moment;
    /// Exact joint-measurement optimum for the same N and prior, when computed.
    std::optional<double> joint_f_max;
};

struct SimulationRun {
    SimulationSummary summary;
    std::vector<TrialOutcome> outcomes;
};

/// Frequency tomography along x, y, z on n0 copies split as evenly as
/// possible (remainder to x, then y). Returns the normalized estimate, or +z
/// if all three frequencies vanish.
Vec3 tomography_stage(const BlochState &state, int n0, TrialRng &rng);

/// Projective measurement of n1 copies along `axis`; returns
/// max(0, 2 N+/n1 - 1) under clamp-to-zero.
double projective_stage(const BlochState &state, const Vec3 &axis, int n1, TrialRng &rng,
                        ClampPolicy clamp = ClampPolicy::clamp_to_zero);

TrialOutcome adaptive_trial(const AdaptiveConfig &config, std::uint64_t trial);
TrialOutcome greedy_trial(const GreedyConfig &config, std::uint64_t trial);

SimulationRun simulate_adaptive(const AdaptiveConfig &config);
SimulationRun simulate_greedy(const GreedyConfig &config);
SimulationSummary run_adaptive(const AdaptiveConfig &config);
SimulationSummary run_greedy(const GreedyConfig &config);

struct PointwiseMse {
    MeanEstimate mse;
    MeanEstimate bias;
};

/// Mean square error and bias of the adaptive estimate at a fixed purity r.
PointwiseMse pointwise_mse(double r, AdaptiveConfig config);

}  // namespace qpurity

#endif
