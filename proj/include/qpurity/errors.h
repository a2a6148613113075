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

#ifndef QPURITY_ERRORS_H
#define QPURITY_ERRORS_H

#include <stdexcept>
#include <string>

namespace qpurity {

/// An argument lies outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its accuracy target.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A request exceeds a configured capability limit (e.g. a size ceiling).
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qpurity

#endif
