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

#include "qpurity/equatorial.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mass_integrals.h"
#include "qpurity/errors.h"

namespace qpurity {

namespace {

constexpr double kOrthogonalityLimit = 1e-8;

// d^{(j)} from d^{(j - 1/2)} via |j m> = A_m |j-1/2, m-1/2>|up> + B_m |j-1/2, m+1/2>|down>.
WignerDHalfPi couple_half(const WignerDHalfPi &prev) {
    const int two_j = prev.two_j() + 1;
    const int dim = two_j + 1;
    const double c = std::numbers::sqrt2 / 2.0;  // cos(pi/4) = sin(pi/4)
    std::vector<double> A(dim), B(dim);
    for (int a = 0; a < dim; ++a) {
        A[a] = std::sqrt(static_cast<double>(two_j - a) / two_j);
        B[a] = std::sqrt(static_cast<double>(a) / two_j);
    }
    const int pd = prev.dim();
    auto D = [&](int row, int col) {
        return (row >= 0 && row < pd && col >= 0 && col < pd) ? prev.at(row, col) : 0.0;
    };
    std::vector<double> out(static_cast<std::size_t>(dim) * dim);
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            double v = A[a] * A[b] * D(a, b) - A[a] * B[b] * D(a, b - 1) + B[a] * A[b] * D(a - 1, b) +
                       B[a] * B[b] * D(a - 1, b - 1);
            out[static_cast<std::size_t>(a) * dim + b] = c * v;
        }
    }
    return WignerDHalfPi(two_j, std::move(out));
}

void check_orthogonality(const WignerDHalfPi &d) {
    double defect = d.orthogonality_defect();
    if (!(defect <= kOrthogonalityLimit)) {
        std::ostringstream msg;
        msg << "Wigner d-matrix for 2j=" << d.two_j() << " lost orthogonality (row defect " << defect << ")";
        throw NumericalError(msg.str());
    }
}

// log of p^{N/2-m'} q^{N/2+m'} with i = N/2 + m' successes; exact at r = 0 and r = 1.
double log_sector_mass(int n_copies, int i, double r) {
    if (r == 1.0) {
        return i == n_copies ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    double log_p = std::log(0.5 * (1.0 - r));
    double log_q = std::log1p(r) - std::numbers::ln2;
    return (n_copies - i) * log_p + i * log_q;
}

}  // namespace

WignerDHalfPi::WignerDHalfPi(int two_j, std::vector<double> entries) : two_j_(two_j), entries_(std::move(entries)) {
    if (two_j < 0 || entries_.size() != static_cast<std::size_t>(dim()) * dim()) {
        throw DomainError("Wigner d-matrix needs (2j+1)^2 entries");
    }
}

double WignerDHalfPi::element(int two_m, int two_m_prime) const {
    if (std::abs(two_m) > two_j_ || std::abs(two_m_prime) > two_j_ || (two_j_ - two_m) % 2 != 0 ||
        (two_j_ - two_m_prime) % 2 != 0) {
        throw DomainError("magnetic numbers out of range for this j");
    }
    return at((two_j_ - two_m) / 2, (two_j_ - two_m_prime) / 2);
}

double WignerDHalfPi::orthogonality_defect() const {
    double worst = 0.0;
    for (int a = 0; a < dim(); ++a) {
        double sum = 0.0;
        for (int b = 0; b < dim(); ++b) {
            sum += at(a, b) * at(a, b);
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

WignerDHalfPi wigner_d_half_pi(int two_j) {
    if (two_j < 0) {
        throw DomainError("2j must be nonnegative");
    }
    WignerDHalfPi d(0, {1.0});
    while (d.two_j() < two_j) {
        d = couple_half(d);
    }
    check_orthogonality(d);
    return d;
}

double equatorial_block_element(int n_copies, int two_j, int two_m, double r) {
    log_multiplicity(n_copies, two_j);  // validates N and 2j
    if (std::abs(two_m) > two_j || (two_j - two_m) % 2 != 0) {
        throw DomainError("2m must lie in [-2j, 2j] with the parity of 2j");
    }
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("purity must lie in [0, 1]");
    }
    WignerDHalfPi d = wigner_d_half_pi(two_j);
    double total = 0.0;
    for (int two_mp = -two_j; two_mp <= two_j; two_mp += 2) {
        double dd = d.element(two_m, two_mp);
        int i = (n_copies + two_mp) / 2;
        total += dd * dd * std::exp(log_sector_mass(n_copies, i, r));
    }
    return total;
}

double EquatorialTerm::contribution() const {
    return std::hypot(weighted_perp, weighted_par);
}

EquatorialBoundResult max_fidelity_equatorial(int n_copies, const PriorFamily &prior,
                                              const EquatorialOptions &options) {
    if (n_copies < 1) {
        throw DomainError("number of copies must be positive");
    }
    if (n_copies > options.max_copies) {
        std::ostringstream msg;
        msg << "equatorial bound limited to N <= " << options.max_copies
            << "; use the asymptotic formula 1 - 1/(2N) for larger N";
        throw CapabilityError(msg.str());
    }

    // Prior-weighted integrals of the binomial masses C(N,i) q^i p^(N-i), i = 0..N.
    kernels::MassLanes lanes;
    for (int i = 0; i <= n_copies; ++i) {
        lanes.push_back(detail::log_binomial(n_copies, i), n_copies - i, i, 1.0);
    }
    lanes.pad();
    auto sectors = detail::integrate_masses(prior, lanes, detail::initial_panels(n_copies), options.bound);

    EquatorialBoundResult result{n_copies, prior, {}, 0.0, sectors.panels};
    WignerDHalfPi d(0, {1.0});
    for (int two_j = 0; two_j <= n_copies; ++two_j) {
        if (two_j > 0) {
            d = couple_half(d);
        }
        if ((n_copies - two_j) % 2 != 0) {
            continue;
        }
        check_orthogonality(d);
        const double log_nj = log_multiplicity(n_copies, two_j);
        const int dim = two_j + 1;
        std::vector<double> ratio(dim);
        for (int b = 0; b < dim; ++b) {
            int i = (n_copies + two_j) / 2 - b;
            ratio[b] = std::exp(log_nj - lanes.log_coeff[i]);
        }
        for (int a = 0; a < dim; ++a) {
            EquatorialTerm term{};
            term.two_j = two_j;
            term.two_m = two_j - 2 * a;
            term.log_multiplicity = log_nj;
            for (int b = 0; b < dim; ++b) {
                int i = (n_copies + two_j) / 2 - b;
                double weight = d.at(a, b) * d.at(a, b) * ratio[b];
                term.weighted_perp += weight * sectors.perp[i];
                term.weighted_par += weight * sectors.par[i];
            }
            auto unweighted = [&](double v) { return v > 0.0 ? std::exp(std::log(v) - log_nj) : 0.0; };
            term.v_perp = unweighted(term.weighted_perp);
            term.v_par = unweighted(term.weighted_par);
            double norm = term.contribution();
            term.optimal_guess = norm > 0.0 ? term.weighted_par / norm : static_cast<double>(two_j) / n_copies;
            result.f_max += norm;
            result.terms.push_back(term);
        }
    }
    return result;
}

}  // namespace qpurity
