#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "emax/functional.hpp"
#include "emax/random.hpp"

namespace emax {

// Finite-dimensional surrogate of the weakly-null sequence argument: the
// diagonal oscillatory modes are pairwise orthogonal and their Phi values
// decay like 1/(2 pi^2 k^2), so the infimum of Phi on the sphere is 0 and is
// never attained. (Actual weak convergence is a statement about the
// infinite-dimensional limit; on a fixed grid the quantitative decay is the
// whole content.)

struct RemarkRow {
    int k = 0;
    double phi_k = 0.0;         // computed Phi(f_k)
    double closed_form = 0.0;   // continuum reference 1/(pi^2 k^2 (1/Lx^2 + 1/Ly^2))
    double discrete_form = 0.0; // 1/lambda_kk of the discrete operator
};

/// Normalized sample of sin(k pi x / Lx) * sin(k pi y / Ly) on a rectangle —
/// the (k,k) discrete eigenvector. Needs at least two nodes per half-wave.
inline Field oscillatory_mode(const GridDomain& dom, int k) {
    if (dom.kind != DomainKind::rectangle)
        throw std::invalid_argument("oscillatory_mode: rectangle domain required");
    if (k < 1) throw std::invalid_argument("oscillatory_mode: k must be >= 1");
    if (2 * k > dom.nx || 2 * k > dom.ny)
        throw std::invalid_argument("oscillatory_mode: mode not resolvable on this grid");
    const double lx = dom.hx * (dom.nx + 1);
    const double ly = dom.hy * (dom.ny + 1);
    Field f = make_field(dom);
    for (int p = 0; p < dom.n_interior; ++p) {
        const int c = dom.cell_of[static_cast<std::size_t>(p)];
        const int i = c % dom.nx;
        const int j = c / dom.nx;
        f.values[static_cast<std::size_t>(p)] =
            std::sin(k * std::numbers::pi * dom.x(i) / lx) * std::sin(k * std::numbers::pi * dom.y(j) / ly);
    }
    return normalize(f);
}

namespace detail {

// Closed-form (k,k) eigenvalue of the discrete operator on a rectangle.
inline double discrete_lambda_kk(const GridDomain& dom, int k) {
    const double lx = dom.hx * (dom.nx + 1);
    const double ly = dom.hy * (dom.ny + 1);
    const double sx = std::sin(k * std::numbers::pi * dom.hx / (2.0 * lx));
    const double sy = std::sin(k * std::numbers::pi * dom.hy / (2.0 * ly));
    return 4.0 / (dom.hx * dom.hx) * sx * sx + 4.0 / (dom.hy * dom.hy) * sy * sy;
}

}  // namespace detail

/// Decay table Phi(f_k) for k = 1..k_max on a rectangle, next to the exact
/// discrete value 1/lambda_kk and the continuum reference.
inline std::vector<RemarkRow> remark_table(const GridDomain& dom, int k_max) {
    if (k_max < 1) throw std::invalid_argument("remark_table: k_max must be >= 1");
    const SparseOperator a = assemble(dom);
    const double lx = dom.hx * (dom.nx + 1);
    const double ly = dom.hy * (dom.ny + 1);
    std::vector<RemarkRow> rows;
    rows.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        const Field f = oscillatory_mode(dom, k);
        RemarkRow row;
        row.k = k;
        row.phi_k = phi(a, f).duality_form;
        const double pi2k2 = std::numbers::pi * std::numbers::pi * k * k;
        row.closed_form = 1.0 / (pi2k2 * (1.0 / (lx * lx) + 1.0 / (ly * ly)));
        row.discrete_form = 1.0 / detail::discrete_lambda_kk(dom, k);
        rows.push_back(row);
    }
    return rows;
}

/// True iff Phi(0) = 0 exactly and Phi(f) > 0 for every random probe in the
/// punctured unit ball — f = 0 is the unique minimizer over the ball.
inline bool verify_zero_minimizer(const SparseOperator& a, int n_probes, std::uint64_t seed) {
    if (n_probes < 1) throw std::invalid_argument("verify_zero_minimizer: n_probes must be >= 1");
    const PhiValue at_zero = phi(a, make_field(*a.domain));
    if (at_zero.energy_form != 0.0 || at_zero.duality_form != 0.0) return false;
    std::mt19937_64 rng(seed);
    for (int p = 0; p < n_probes; ++p) {
        const Field d = random_unit_field(*a.domain, rng);
        double radius = uniform01(rng);
        while (radius == 0.0) radius = uniform01(rng);
        const PhiValue v = phi(a, scaled(radius, d));
        if (!(v.duality_form > 0.0) || !(v.energy_form > 0.0)) return false;
    }
    return true;
}

}  // namespace emax
