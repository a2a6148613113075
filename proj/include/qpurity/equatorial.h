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

#ifndef QPURITY_EQUATORIAL_H
#define QPURITY_EQUATORIAL_H

#include <vector>

#include "qpurity/joint_bound.h"
#include "qpurity/priors.h"

namespace qpurity {

/// Wigner d^{(j)}(pi/2), rows and columns indexed by m = j, j-1, ..., -j.
class WignerDHalfPi {
   public:
    WignerDHalfPi(int two_j, std::vector<double> entries);

    int two_j() const {
        return two_j_;
    }
    int dim() const {
        return two_j_ + 1;
    }
    /// Entry by row/column position (0 <-> m = j).
    double at(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * dim() + col];
    }
    /// Entry by doubled magnetic numbers 2m, 2m'.
    double element(int two_m, int two_m_prime) const;
    /// Largest |sum_col d^2 - 1| over rows.
    double orthogonality_defect() const;

   private:
    int two_j_;
    std::vector<double> entries_;
};

/// Builds d^{(j)}(pi/2) by coupling spin j - 1/2 with spin 1/2 repeatedly,
/// starting from j = 0. Throws NumericalError if a row norm drifts by more
/// than 1e-8.
WignerDHalfPi wigner_d_half_pi(int two_j);

/// Diagonal element [rho_{Nj}(r x)]_{mm} in the z basis of a spin-j block:
///     sum_{m'} d_{mm'}(pi/2)^2 p^{N/2-m'} q^{N/2+m'}.
double equatorial_block_element(int n_copies, int two_j, int two_m, double r);

struct EquatorialTerm {
    int two_j;
    int two_m;
    double log_multiplicity;
    double v_perp;
    double v_par;
    double weighted_perp;  // n_j V_jm
    double weighted_par;
    double optimal_guess;

    double contribution() const;
};

struct EquatorialBoundResult {
    int n_copies;
    PriorFamily prior;
    std::vector<EquatorialTerm> terms;
    double f_max;
    int quadrature_panels;
};

struct EquatorialOptions {
    BoundOptions bound;
    /// Largest N accepted; above it a CapabilityError points to the asymptotic formula.
    int max_copies = 512;
};

/// Optimal fidelity for states known to lie in the equatorial plane, with the
/// radial prior w(r) and a uniform azimuth. Sum over blocks j and U(1) sectors m.
EquatorialBoundResult max_fidelity_equatorial(int n_copies, const PriorFamily &prior,
                                              const EquatorialOptions &options = {});

}  // namespace qpurity

#endif
