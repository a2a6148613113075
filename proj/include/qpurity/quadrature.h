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

#ifndef QPURITY_QUADRATURE_H
#define QPURITY_QUADRATURE_H

#include <functional>
#include <vector>

#include "qpurity/priors.h"

namespace qpurity {

/// Gauss rule on [-1, 1] for the weight (1 - x)^a (1 + x)^b.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Golub-Welsch with Newton polishing. Requires a, b > -1.
GaussRule gauss_jacobi(int order, double a, double b);
GaussRule gauss_legendre(int order);

/// A quadrature node for integrals of the form  int_0^1 w(r) g(r) dr.
///
/// log_p and log_q are log((1 - r)/2) and log((1 + r)/2), computed without
/// cancellation near r = 1.
struct RadialNode {
    double r;
    double sqrt_one_minus_r2;
    double log_p;
    double log_q;
    double weight;  // includes the prior density
};

/// Composite radial rule for a prior.
///
/// Family priors are integrated in s = arccos(r) in `panels` equal panels.
/// The panel touching r = 1 uses Gauss-Jacobi with the endpoint factor
/// s^(1 - 2 lambda) absorbed into the weight, so the (1 - r^2)^(-lambda)
/// singularity is integrated exactly. Tabulated priors use Gauss-Legendre in
/// r on sub-panels of each knot interval.
class RadialRule {
   public:
    static constexpr int kOrder = 16;

    RadialRule(const PriorFamily &prior, int panels, int order = kOrder);

    const std::vector<RadialNode> &nodes() const {
        return nodes_;
    }
    int panels() const {
        return panels_;
    }
    double integrate(const std::function<double(const RadialNode &)> &g) const;

   private:
    int panels_;
    std::vector<RadialNode> nodes_;
};

}  // namespace qpurity

#endif
