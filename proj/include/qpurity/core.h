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

#ifndef QPURITY_CORE_H
#define QPURITY_CORE_H

#include <array>

namespace qpurity {

using Vec3 = std::array<double, 3>;

double dot(const Vec3 &a, const Vec3 &b);
double norm(const Vec3 &a);

/// A qubit state rho = (1 + r n.sigma)/2 in Bloch form.
///
/// The direction of the maximally mixed state (r = 0) is physically
/// undefined; it is carried as +z.
class BlochState {
   public:
    BlochState(double purity, const Vec3 &direction);

    static BlochState from_vector(const Vec3 &bloch_vector);

    double purity() const {
        return purity_;
    }
    const Vec3 &direction() const {
        return direction_;
    }
    Vec3 bloch_vector() const;

   private:
    double purity_;
    Vec3 direction_;
};

/// A true purity together with a guessed purity, both in [0, 1].
struct PurityPair {
    PurityPair(double true_r, double guess_R);

    double true_r;
    double guess_R;
};

/// Scalar purity fidelity r R + sqrt(1 - r^2) sqrt(1 - R^2).
///
/// This is the overlap of the unit 2-vectors (sqrt(1 - a^2), a) for a = r, R.
/// Throws DomainError if either argument is outside [0, 1].
double fidelity(double true_r, double guess_R);
double fidelity(const PurityPair &pair);

/// Geodesic (Bures) distance between purity shells: arccos(fidelity) / 2.
double bures_distance(double true_r, double guess_R);

}  // namespace qpurity

#endif
