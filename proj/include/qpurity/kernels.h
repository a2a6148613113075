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

#ifndef QPURITY_KERNELS_H
#define QPURITY_KERNELS_H

#include <cstddef>
#include <span>
#include <vector>

namespace qpurity::kernels {

/// Instruction sets with a kernel implementation.
enum class Isa { scalar, avx2 };

const char *isa_name(Isa isa);

/// Best instruction set supported by the running CPU and this build.
Isa detected_isa();

/// Instruction set used by default dispatch. Starts as detected_isa(), or
/// scalar if QPURITY_FORCE_SCALAR is set in the environment.
Isa active_isa();
void set_active_isa(Isa isa);

/// Lane arrays are padded to a multiple of this width.
inline constexpr std::size_t kLaneWidth = 4;

inline std::size_t padded_size(std::size_t n) {
    return (n + kLaneWidth - 1) / kLaneWidth * kLaneWidth;
}

/// Per-lane exponents of a family of probability masses
///
///     mass = exp(log_coeff) * p^exp_p * q^exp_q * (1 - x^span_len) / (1 - x),   x = p / q.
///
/// With span_len = 1 the geometric factor is exactly one. Padding lanes carry
/// log_coeff = -inf and contribute zero.
struct MassLanes {
    std::vector<double> log_coeff;
    std::vector<double> exp_p;
    std::vector<double> exp_q;
    std::vector<double> span_len;

    std::size_t size() const {
        return log_coeff.size();
    }
    void push_back(double coeff, double ep, double eq, double len);
    /// Pads with inert lanes up to a multiple of kLaneWidth.
    void pad();
};

/// One quadrature node as seen by the mass kernels. Requires log_p < log_q.
struct NodeTerms {
    double log_p;
    double log_q;
    double weight_perp;
    double weight_par;
};

/// For lanes [begin, end) (multiples of kLaneWidth):
///     acc_perp[i] += weight_perp * mass_i,  acc_par[i] += weight_par * mass_i.
void accumulate_masses(const NodeTerms &node, const MassLanes &lanes, std::size_t begin, std::size_t end,
                       std::span<double> acc_perp, std::span<double> acc_par, Isa isa);
void accumulate_masses(const NodeTerms &node, const MassLanes &lanes, std::size_t begin, std::size_t end,
                       std::span<double> acc_perp, std::span<double> acc_par);

/// Elementwise exp and log, exposed for equivalence testing. Sizes must be
/// multiples of kLaneWidth.
void exp_batch(std::span<const double> in, std::span<double> out, Isa isa);
void log_batch(std::span<const double> in, std::span<double> out, Isa isa);

namespace scalar {
void accumulate_masses(const NodeTerms &node, const MassLanes &lanes, std::size_t begin, std::size_t end,
                       double *acc_perp, double *acc_par);
void exp_batch(const double *in, double *out, std::size_t n);
void log_batch(const double *in, double *out, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool compiled();
void accumulate_masses(const NodeTerms &node, const MassLanes &lanes, std::size_t begin, std::size_t end,
                       double *acc_perp, double *acc_par);
void exp_batch(const double *in, double *out, std::size_t n);
void log_batch(const double *in, double *out, std::size_t n);
}  // namespace avx2

}  // namespace qpurity::kernels

#endif
