#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "emax/operator.hpp"

namespace emax {

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

struct solve_nonconvergence_error : nonconvergence_error {
    SolveReport report;

    solve_nonconvergence_error(const std::string& what, SolveReport rep)
        : nonconvergence_error(what, rep.iterations, rep.relative_residual), report(rep) {}
};

struct SolveResult {
    Field u;
    SolveReport report;
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace detail

/// Solves A u = f by Jacobi-preconditioned conjugate gradients from the zero
/// initial guess. Convergence means the true residual satisfies
/// ||A u - f|| <= tol * ||f|| (the h-weights cancel in the ratio, so the
/// Euclidean test equals the discrete-norm test). f = 0 returns u = 0 in
/// 0 iterations. max_iter = 0 selects the default 10 * n_interior.
inline SolveResult solve(const SparseOperator& a, const Field& f, double tol = 1e-12, int max_iter = 0) {
    detail::require_operator_field(a, f, "solve");
    if (!(tol > 0.0) || !(tol < 1.0)) throw std::invalid_argument("solve: tol must lie in (0,1)");
    if (max_iter == 0) max_iter = 10 * a.n;
    if (max_iter < 1) throw std::invalid_argument("solve: max_iter must be >= 1");

    const std::size_t n = static_cast<std::size_t>(a.n);
    SolveResult res;
    res.u = make_field(*a.domain);

    const double b2 = detail::dot(f.values, f.values);
    if (b2 == 0.0) {
        res.report = {0, 0.0, true};
        return res;
    }
    if (!std::isfinite(b2)) throw numerical_breakdown_error("solve: non-finite right-hand side");
    const double bnorm = std::sqrt(b2);

    std::vector<double> inv_diag(n);
    for (int r = 0; r < a.n; ++r) {
        for (int k = a.row_offsets[static_cast<std::size_t>(r)]; k < a.row_offsets[static_cast<std::size_t>(r) + 1]; ++k)
            if (a.col_indices[static_cast<std::size_t>(k)] == r)
                inv_diag[static_cast<std::size_t>(r)] = 1.0 / a.entries[static_cast<std::size_t>(k)];
    }

    std::vector<double>& u = res.u.values;
    std::vector<double> r = f.values;  // residual of the zero guess
    std::vector<double> z(n), p(n), q(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = detail::dot(r, z);
    const double bprec = std::sqrt(detail::dot(f.values, z));

    // The cheap recurrence test can drift from the true residual near machine
    // precision; every time it signals we recompute ||A u - f|| and tighten if
    // the signal was premature.
    double gate = 1.0;
    auto true_relative_residual = [&]() {
        detail::apply_raw(a, u, q);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = q[i] - f.values[i];
            s += d * d;
        }
        return std::sqrt(s) / bnorm;
    };

    for (int it = 1; it <= max_iter; ++it) {
        detail::apply_raw(a, p, q);
        const double pq = detail::dot(p, q);
        if (!std::isfinite(pq) || pq <= 0.0)
            throw numerical_breakdown_error("solve: lost positive definiteness in CG");
        const double alpha = rz / pq;
        for (std::size_t i = 0; i < n; ++i) u[i] += alpha * p[i];
        for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * q[i];
        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_next = detail::dot(r, z);
        if (!std::isfinite(rz_next)) throw numerical_breakdown_error("solve: NaN in CG recurrence");
        if (std::sqrt(std::fabs(rz_next)) <= gate * tol * bprec) {
            const double rel = true_relative_residual();
            if (rel <= tol) {
                res.report = {it, rel, true};
                return res;
            }
            gate *= 0.5;
        }
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }

    SolveReport rep{max_iter, true_relative_residual(), false};
    throw solve_nonconvergence_error("solve: no convergence within max_iter", rep);
}

}  // namespace emax
