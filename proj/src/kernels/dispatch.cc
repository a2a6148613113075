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

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "qpurity/kernels.h"

namespace qpurity::kernels {

#ifndef QPURITY_HAVE_AVX2
namespace avx2 {
bool compiled() {
    return false;
}
void accumulate_masses(const NodeTerms &, const MassLanes &, std::size_t, std::size_t, double *, double *) {
    throw std::logic_error("AVX2 kernels not compiled in");
}
void exp_batch(const double *, double *, std::size_t) {
    throw std::logic_error("AVX2 kernels not compiled in");
}
void log_batch(const double *, double *, std::size_t) {
    throw std::logic_error("AVX2 kernels not compiled in");
}
}  // namespace avx2
#endif

namespace {

Isa initial_isa() {
    const char *force = std::getenv("QPURITY_FORCE_SCALAR");
    if (force != nullptr && force[0] != '\0' && force[0] != '0') {
        return Isa::scalar;
    }
    return detected_isa();
}

std::atomic<Isa> &active() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

void check_range(std::size_t begin, std::size_t end, std::size_t lanes, std::size_t acc) {
    if (begin % kLaneWidth != 0 || end % kLaneWidth != 0 || begin > end || end > lanes || end > acc) {
        throw std::invalid_argument("kernel lane range must be lane-aligned and in bounds");
    }
}

}  // namespace

const char *isa_name(Isa isa) {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

Isa detected_isa() {
#if defined(QPURITY_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return Isa::avx2;
    }
#endif
    return Isa::scalar;
}

Isa active_isa() {
    return active().load(std::memory_order_relaxed);
}

void set_active_isa(Isa isa) {
    if (isa == Isa::avx2 && detected_isa() != Isa::avx2) {
        throw std::invalid_argument("AVX2 kernels are not available on this CPU/build");
    }
    active().store(isa, std::memory_order_relaxed);
}

void MassLanes::push_back(double coeff, double ep, double eq, double len) {
    log_coeff.push_back(coeff);
    exp_p.push_back(ep);
    exp_q.push_back(eq);
    span_len.push_back(len);
}

void MassLanes::pad() {
    while (size() % kLaneWidth != 0) {
        push_back(-std::numeric_limits<double>::infinity(), 0.0, 0.0, 1.0);
    }
}

void accumulate_masses(const NodeTerms &node, const MassLanes &lanes, std::size_t begin, std::size_t end,
                       std::span<double> acc_perp, std::span<double> acc_par, Isa isa) {
    check_range(begin, end, lanes.size(), std::min(acc_perp.size(), acc_par.size()));
    if (isa == Isa::avx2) {
        avx2::accumulate_masses(node, lanes, begin, end, acc_perp.data(), acc_par.data());
    } else {
        scalar::accumulate_masses(node, lanes, begin, end, acc_perp.data(), acc_par.data());
    }
}

void accumulate_masses(const NodeTerms &node, const MassLanes &lanes, std::size_t begin, std::size_t end,
                       std::span<double> acc_perp, std::span<double> acc_par) {
    accumulate_masses(node, lanes, begin, end, acc_perp, acc_par, active_isa());
}

void exp_batch(std::span<const double> in, std::span<double> out, Isa isa) {
    check_range(0, in.size(), in.size(), out.size());
    if (isa == Isa::avx2) {
        avx2::exp_batch(in.data(), out.data(), in.size());
    } else {
        scalar::exp_batch(in.data(), out.data(), in.size());
    }
}

void log_batch(std::span<const double> in, std::span<double> out, Isa isa) {
    check_range(0, in.size(), in.size(), out.size());
    if (isa == Isa::avx2) {
        avx2::log_batch(in.data(), out.data(), in.size());
    } else {
        scalar::log_batch(in.data(), out.data(), in.size());
    }
}

}  // namespace qpurity::kernels
