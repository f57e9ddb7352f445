#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "emax/functional.hpp"
#include "emax/random.hpp"

namespace emax {

struct EigenPair {
    double lambda = 0.0;
    Field vector;          // unit norm in the discrete L2 inner product
    double residual = 0.0; // ||A v - lambda v||_2
};

/// First k Dirichlet eigenpairs of A by inverse power iteration, deflating
/// against the already-converged vectors every step. lambda is the Rayleigh
/// quotient energy(A, v) on the sphere; pairs come back sorted ascending.
/// k is capped at min(8, n_interior).
inline std::vector<EigenPair> eigen_smallest(const SparseOperator& a, int k, double tol = 1e-9,
                                             int max_iter = 1000, std::uint64_t seed = 1) {
    if (k < 1 || k > std::min(8, a.n))
        throw std::invalid_argument("eigen_smallest: k must lie in [1, min(8, n_interior)]");
    if (!(tol > 0.0) || !(tol < 1.0)) throw std::invalid_argument("eigen_smallest: tol must lie in (0,1)");
    if (max_iter < 1) throw std::invalid_argument("eigen_smallest: max_iter must be >= 1");

    std::mt19937_64 rng(seed);
    std::vector<EigenPair> pairs;
    pairs.reserve(static_cast<std::size_t>(k));

    for (int j = 0; j < k; ++j) {
        Field v = random_unit_field(*a.domain, rng);
        for (const EigenPair& prev : pairs) v = lincomb(1.0, v, -inner(v, prev.vector), prev.vector);
        double vn = norm(v);
        while (!(vn > 1e-8)) {  // start fell into the deflated span; redraw
            v = random_unit_field(*a.domain, rng);
            for (const EigenPair& prev : pairs) v = lincomb(1.0, v, -inner(v, prev.vector), prev.vector);
            vn = norm(v);
        }
        v = scaled(1.0 / vn, v);

        double lambda = 0.0;
        double residual = 0.0;
        bool converged = false;
        for (int it = 1; it <= max_iter; ++it) {
            Field w = solve(a, v, 1e-12).u;
            for (const EigenPair& prev : pairs) w = lincomb(1.0, w, -inner(w, prev.vector), prev.vector);
            const double wn = norm(w);
            if (!(wn > 0.0)) throw numerical_breakdown_error("eigen_smallest: deflated iterate vanished");
            v = scaled(1.0 / wn, w);
            const Field av = apply(a, v);
            lambda = inner(av, v);
            residual = norm(lincomb(1.0, av, -lambda, v));
            if (residual <= tol * lambda) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw nonconvergence_error("eigen_smallest: inverse iteration stalled", max_iter, residual);
        sign_normalize(v);
        pairs.push_back({lambda, std::move(v), residual});
    }

    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const EigenPair& x, const EigenPair& y) { return x.lambda < y.lambda; });
    return pairs;
}

/// |Phi(u_k) * lambda_k - 1| for each pair; for true eigenpairs the product
/// is exactly one.
inline std::vector<double> verify_phi_reduction(const SparseOperator& a, const std::vector<EigenPair>& pairs,
                                                double solver_tol = 1e-12) {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const EigenPair& p : pairs) {
        if (std::fabs(norm(p.vector) - 1.0) > 1e-6)
            throw std::invalid_argument("verify_phi_reduction: eigenvector is not unit norm");
        const PhiValue v = phi(a, p.vector, solver_tol);
        out.push_back(std::fabs(v.duality_form * p.lambda - 1.0));
    }
    return out;
}

}  // namespace emax
