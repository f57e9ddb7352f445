#pragma once

#include <cmath>

#include "emax/solver.hpp"

namespace emax {

/// Phi(f) reported in its two equivalent forms: the Dirichlet energy of u_f
/// and the duality pairing <f, u_f>. Their difference is the discrete
/// footprint of integration by parts and doubles as a solver health check.
struct PhiValue {
    double energy_form = 0.0;
    double duality_form = 0.0;
    double discrepancy = 0.0;
};

inline PhiValue phi(const SparseOperator& a, const Field& f, double tol = 1e-12, int max_iter = 0) {
    const SolveResult s = solve(a, f, tol, max_iter);
    PhiValue v;
    v.energy_form = energy(a, s.u);
    v.duality_form = inner(f, s.u);
    v.discrepancy = std::fabs(v.energy_form - v.duality_form);
    return v;
}

/// Gradient of Phi at f under the L2 pairing: 2 u_f.
inline Field grad_phi(const SparseOperator& a, const Field& f, double tol = 1e-12, int max_iter = 0) {
    return scaled(2.0, solve(a, f, tol, max_iter).u);
}

/// Central-difference probe of the gradient: returns
/// |(Phi(f+eps h) - Phi(f-eps h)) / (2 eps) - <grad_phi(f), h>|.
/// Phi is quadratic, so the quotient is exact up to solver noise.
inline double directional_derivative_check(const SparseOperator& a, const Field& f, const Field& h,
                                           double eps = 1e-4, double tol = 1e-12, int max_iter = 0) {
    if (!(eps > 0.0)) throw std::invalid_argument("directional_derivative_check: eps must be positive");
    detail::require_same_domain(f, h, "directional_derivative_check");
    const double phi_plus = phi(a, lincomb(1.0, f, eps, h), tol, max_iter).energy_form;
    const double phi_minus = phi(a, lincomb(1.0, f, -eps, h), tol, max_iter).energy_form;
    const double quotient = (phi_plus - phi_minus) / (2.0 * eps);
    return std::fabs(quotient - inner(grad_phi(a, f, tol, max_iter), h));
}

}  // namespace emax
