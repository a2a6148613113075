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

#include <cmath>
#include <limits>

#include "qpurity/kernels.h"

namespace qpurity::kernels::scalar {

void accumulate_masses(const NodeTerms &node, const MassLanes &lanes, std::size_t begin, std::size_t end,
                       double *acc_perp, double *acc_par) {
    const double log_x = node.log_p - node.log_q;
    const double log_denom = std::log(-std::expm1(log_x));
    for (std::size_t i = begin; i < end; ++i) {
        double geom = std::log(-std::expm1(lanes.span_len[i] * log_x)) - log_denom;
        double log_mass = lanes.log_coeff[i] + lanes.exp_p[i] * node.log_p + lanes.exp_q[i] * node.log_q + geom;
        double mass = std::exp(log_mass);
        acc_perp[i] += node.weight_perp * mass;
        acc_par[i] += node.weight_par * mass;
    }
}

void exp_batch(const double *in, double *out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::exp(in[i]);
    }
}

void log_batch(const double *in, double *out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::log(in[i]);
    }
}

}  // namespace qpurity::kernels::scalar
