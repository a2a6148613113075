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

#include "qpurity/core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpurity/errors.h"

namespace qpurity {

namespace {

void require_purity(double x, const char *name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
    }
}

}  // namespace

double dot(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Vec3 &a) {
    return std::sqrt(dot(a, a));
}

BlochState::BlochState(double purity, const Vec3 &direction) : purity_(purity), direction_(direction) {
    require_purity(purity, "purity");
    double n = norm(direction);
    if (!(std::abs(n - 1.0) <= 1e-12)) {
        throw DomainError("direction must be a unit vector, got norm " + std::to_string(n));
    }
}

BlochState BlochState::from_vector(const Vec3 &v) {
    double r = norm(v);
    if (r == 0.0) {
        return BlochState(0.0, {0.0, 0.0, 1.0});
    }
    Vec3 n{v[0] / r, v[1] / r, v[2] / r};
    return BlochState(r, n);
}

Vec3 BlochState::bloch_vector() const {
    return {purity_ * direction_[0], purity_ * direction_[1], purity_ * direction_[2]};
}

PurityPair::PurityPair(double r, double R) : true_r(r), guess_R(R) {
    require_purity(r, "true purity");
    require_purity(R, "guessed purity");
}

double fidelity(double true_r, double guess_R) {
    require_purity(true_r, "true purity");
    require_purity(guess_R, "guessed purity");
    double f = true_r * guess_R + std::sqrt((1.0 - true_r) * (1.0 + true_r)) *
                                      std::sqrt((1.0 - guess_R) * (1.0 + guess_R));
    return std::min(f, 1.0);
}

double fidelity(const PurityPair &pair) {
    return fidelity(pair.true_r, pair.guess_R);
}

double bures_distance(double true_r, double guess_R) {
    double f = fidelity(true_r, guess_R);
    return 0.5 * std::acos(std::clamp(f, -1.0, 1.0));
}

}  // namespace qpurity
