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

#ifndef QPURITY_JOINT_BOUND_H
#define QPURITY_JOINT_BOUND_H

#include <span>
#include <vector>

#include "qpurity/kernels.h"
#include "qpurity/priors.h"

namespace qpurity {

/// Controls for the exact bound computations.
struct BoundOptions {
    /// Worker threads; 0 selects hardware concurrency. Results do not depend on it.
    unsigned threads = 0;
    kernels::Isa isa = kernels::active_isa();
    /// Successive panel doublings must agree to this relative accuracy.
    double tolerance = 1e-10;
    int max_panels = 1 << 14;
};

/// Spin-j block data for N copies. two_j encodes 2j.
///
/// v_perp and v_par are the per-block integrals of w(r) sqrt(1 - r^2) T_j(r)
/// and w(r) r T_j(r). For large N they fall below the double range; the
/// multiplicity-weighted values n_j V_j are always representable and are what
/// the bound is assembled from.
struct BlockTerm {
    int two_j;
    double log_multiplicity;
    double v_perp;
    double v_par;
    double weighted_perp;
    double weighted_par;
    double optimal_guess;

    /// n_j |V_j|
    double contribution() const;
};

struct JointBoundResult {
    int n_copies;
    PriorFamily prior;
    std::vector<BlockTerm> terms;
    double f_max;
    int quadrature_panels;
};

/// log n_j = log[ C(N, N/2 - j) (2j + 1) / (N/2 + j + 1) ].
/// Throws DomainError unless 0 <= two_j <= N with the parity of N.
double log_multiplicity(int n_copies, int two_j);

/// Trace of one spin-j block of rho(r z)^{(x)N}:  sum_{m=-j}^{j} p^{N/2-m} q^{N/2+m}
/// with p = (1 - r)/2, q = (1 + r)/2.
double block_trace(int n_copies, int two_j, double r);
double log_block_trace(int n_copies, int two_j, double r);

struct BlockVector {
    double perp;
    double par;
};

/// Prior-weighted integrals (v_perp, v_par) for a single block.
BlockVector v_vector(int n_copies, int two_j, const PriorFamily &prior, const BoundOptions &options = {});

/// Optimal joint-measurement fidelity  F_max = sum_j n_j |V_j|.
JointBoundResult max_fidelity(int n_copies, const PriorFamily &prior, const BoundOptions &options = {});

struct Fig1Point {
    int n_copies;
    double f_max;
    double scaled_deficit;  // N (1 - F_max)
};

std::vector<Fig1Point> fig1_curve(std::span<const int> n_list, const PriorFamily &prior,
                                  const BoundOptions &options = {});

/// Roughly log-spaced integers in [n_min, n_max], deduplicated, ascending.
std::vector<int> log_spaced_counts(int n_min, int n_max, int points);

/// Extrapolated limit of g(N) from three values on a geometric N grid,
/// assuming g(N) = g_inf + c N^-p.
double richardson_geometric(double g1, double g2, double g3);

}  // namespace qpurity

#endif
