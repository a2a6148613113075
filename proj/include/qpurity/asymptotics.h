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

#ifndef QPURITY_ASYMPTOTICS_H
#define QPURITY_ASYMPTOTICS_H

#include <optional>
#include <string>
#include <vector>

namespace qpurity {

/// Quantum Fisher information for the purity, 1 / (1 - r^2). Throws DomainError at r = 1.
double quantum_fisher(double r);

/// Leading large-N optimal fidelity 1 - 1/(2N).
double joint_asymptote(int n_copies);

/// Predicted direction-tomography accuracy <1 - cos Theta> = (3/n0)(1/r^2 - 1/5)
/// for three-axis frequency tomography on n0 copies. Throws DomainError at r = 0.
double tomography_accuracy(double r, double n0);

/// k_lambda = 2^(2-lambda) Gamma(5/2-lambda) Gamma(3/2-lambda) Gamma(lambda-2) / (pi Gamma(1-lambda)),
/// defined for 0 < lambda < 1.
double k_lambda(double lambda);

enum class PredictionKind { joint, adaptive_neg_lambda, adaptive_pos_lambda, hard_sphere };

const char *prediction_kind_name(PredictionKind kind);

struct PredictionTerm {
    std::string name;
    double value;
};

/// A predicted fidelity written as 1 minus a sum of deficit terms.
struct AsymptoticPrediction {
    PredictionKind kind;
    double value;
    std::vector<PredictionTerm> deficit_terms;

    double deficit() const;
};

AsymptoticPrediction joint_prediction(int n_copies);

/// Large-N fidelity of the two-stage adaptive protocol spending n0 = N^alpha
/// copies on direction tomography and n1 = N - n0 on the adapted projection.
///
///   lambda < 0       1 - 1/(2 n1)
///   lambda = 0       1 - 1/(2 n1) - 3 t log(t) / (8 n1)
///   0 < lambda < 1   1 - 1/(2 n1) - 2^(lambda-2) k_lambda t^(2-lambda)
///
/// where t = <Theta^2> defaults to the pure-state value 24/(5 n0). The
/// logarithm is natural. Throws DomainError for lambda >= 1.
AsymptoticPrediction adaptive_prediction(int n_copies, double alpha, double lambda,
                                         std::optional<double> theta2 = std::nullopt);

struct AlphaWindow {
    double lower;
    double upper;
};

/// Exponents alpha for which the adaptive protocol reaches the joint bound:
/// max(1/2, 1/(2 - lambda)) < alpha < 1.
AlphaWindow alpha_window(double lambda);

/// Integrated Cramer-Rao deficit: <1 - f> ~ H Var R / 2 with Var R = 1/(H N), i.e. 1/(2N).
double integrated_cr_deficit(int n_copies);

/// alpha in (0, 1) minimizing the adaptive_prediction deficit (grid + golden section).
double optimal_alpha(int n_copies, double lambda);

}  // namespace qpurity

#endif
