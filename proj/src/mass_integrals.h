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

#ifndef QPURITY_MASS_INTEGRALS_H
#define QPURITY_MASS_INTEGRALS_H

#include <vector>

#include "qpurity/joint_bound.h"
#include "qpurity/kernels.h"
#include "qpurity/priors.h"

namespace qpurity::detail {

struct MassIntegrals {
    std::vector<double> perp;
    std::vector<double> par;
    int panels;
};

/// Integrates  int w(r) (sqrt(1 - r^2), r) mass_i(r) dr  for every lane,
/// doubling the radial panel count until
///     sum_i |delta perp_i| + |delta par_i| <= tolerance * sum_i |(perp_i, par_i)|.
MassIntegrals integrate_masses(const PriorFamily &prior, const kernels::MassLanes &lanes, int initial_panels,
                               const BoundOptions &options);

/// Initial panel count resolving structures of width ~ 1/sqrt(N).
int initial_panels(int n_copies);

double log_binomial(int n, int k);

}  // namespace qpurity::detail

#endif
