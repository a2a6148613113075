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

#ifndef QPURITY_PRIORS_H
#define QPURITY_PRIORS_H

#include <memory>
#include <string>
#include <vector>

#include "qpurity/core.h"

namespace qpurity {

/// Radial prior w(r) over the purity, with isotropic directions.
///
/// The family member with exponent lambda < 1 is
///
///     w(r) = (4/sqrt(pi)) Gamma(5/2 - lambda) / Gamma(1 - lambda) r^2 (1 - r^2)^(-lambda),
///
/// so that r^2 ~ Beta(3/2, 1 - lambda). lambda = 0 is the hard-sphere prior
/// 3 r^2 and lambda = 1/2 the Bures prior (4/pi) r^2 / sqrt(1 - r^2).
///
/// A tabulated prior is piecewise linear in r between user knots and is
/// normalized on construction.
///
/// Instances are immutable and cheap to copy.
class PriorFamily {
   public:
    static PriorFamily with_lambda(double lambda);
    static PriorFamily hard_sphere();
    static PriorFamily bures();
    static PriorFamily tabulated(std::vector<double> knots, std::vector<double> weights);

    bool is_tabulated() const;
    /// Family exponent; NaN for tabulated priors.
    double lambda() const;
    /// Constant in front of r^2 (1 - r^2)^(-lambda); 1 / (raw integral) for tabulated priors.
    double normalization() const;
    const std::vector<double> &knots() const;
    const std::vector<double> &knot_weights() const;

    /// Density at r; diverges at r = 1 when lambda > 0.
    double weight(double r) const;
    double cdf(double r) const;
    /// Integral of r^k w(r) over [0, 1].
    double radial_moment(int k) const;
    /// Inverse CDF at a uniform variate in [0, 1).
    double sample_purity(double uniform) const;

    /// "lambda=<value>" or "tabulated".
    std::string label() const;

   private:
    struct Data;
    explicit PriorFamily(std::shared_ptr<const Data> data);
    std::shared_ptr<const Data> data_;
};

/// Isotropic unit vector from two uniforms: cos(theta) = 2 u1 - 1, phi = 2 pi u2.
Vec3 sample_direction(double u1, double u2);

}  // namespace qpurity

#endif
