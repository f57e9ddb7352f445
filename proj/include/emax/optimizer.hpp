#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "emax/functional.hpp"
#include "emax/random.hpp"

namespace emax {

enum class AscentMethod { fixed_point, gradient_ascent };

struct AscentConfig {
    AscentMethod method = AscentMethod::fixed_point;
    double step = 0.4;        // gradient-ascent: multiplies the running 1/Phi estimate
    double tol = 1e-12;       // threshold on relative Phi increase and iterate movement
    int max_iter = 50000;
    std::uint64_t seed = 1;
};

struct TraceRecord {
    int iteration;
    double phi;
    double movement;
};

struct MaximizerResult {
    Field f_hat;
    Field u_hat;
    double phi_star = 0.0;
    double lambda_est = 0.0;
    std::vector<TraceRecord> trace;
    double extremality_residual = 0.0;
};

struct ascent_nonconvergence_error : nonconvergence_error {
    std::vector<TraceRecord> trace;

    ascent_nonconvergence_error(const std::string& what, std::vector<TraceRecord> tr, double movement)
        : nonconvergence_error(what, tr.empty() ? 0 : tr.back().iteration, movement), trace(std::move(tr)) {}
};

namespace detail {

constexpr double kAscentSolveTol = 1e-12;
constexpr std::uint64_t kProbeSeedSalt = 0x9e3779b97f4a7c15ULL;

inline double extremality_residual_given(const Field& u_hat, const Field& f_hat, int n_probes,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double pair_fhat = inner(u_hat, f_hat);
    double worst = -std::numeric_limits<double>::infinity();
    for (int p = 0; p < n_probes; ++p) {
        Field d = random_unit_field(*f_hat.domain, rng);
        double radius = uniform01(rng);
        while (radius == 0.0) radius = uniform01(rng);
        const double g = 2.0 * (radius * inner(u_hat, d) - pair_fhat);
        if (g > worst) worst = g;
    }
    return worst;
}

}  // namespace detail

/// Largest first-order variation max_p <2 u_{f_hat}, f_p - f_hat> over random
/// probe fields f_p in the unit ball (random direction, random radius). At a
/// maximizer this is nonpositive up to solver noise.
inline double extremality_residual(const SparseOperator& a, const Field& f_hat, int n_probes,
                                   std::uint64_t seed) {
    if (n_probes < 1) throw std::invalid_argument("extremality_residual: n_probes must be >= 1");
    if (std::fabs(norm(f_hat) - 1.0) > 1e-8)
        throw std::invalid_argument("extremality_residual: f_hat must lie on the unit sphere");
    const Field u_hat = solve(a, f_hat, detail::kAscentSolveTol).u;
    return detail::extremality_residual_given(u_hat, f_hat, n_probes, seed);
}

/// Maximizes Phi over the unit ball starting from f0 (projected onto the
/// sphere). Fixed-point mode iterates f <- normalize(u_f) — the Cauchy-Schwarz
/// equality case turned into inverse power iteration on A^{-1}. Gradient-ascent
/// mode iterates f <- normalize(f + eta * 2 u_f) with eta = step / Phi(f),
/// halving the step whenever a candidate would decrease Phi. Stops once the
/// relative Phi increase and the sign-aligned movement both drop below tol.
inline MaximizerResult maximize(const SparseOperator& a, const AscentConfig& cfg, const Field& f0) {
    if (!(cfg.step > 0.0)) throw std::invalid_argument("maximize: step must be positive");
    if (!(cfg.tol > 0.0) || !(cfg.tol < 1.0)) throw std::invalid_argument("maximize: tol must lie in (0,1)");
    if (cfg.max_iter < 1) throw std::invalid_argument("maximize: max_iter must be >= 1");

    Field f = normalize(f0);
    Field u = solve(a, f, detail::kAscentSolveTol).u;
    double phi_now = inner(f, u);

    std::vector<TraceRecord> trace;
    trace.push_back({0, phi_now, 0.0});

    double step_scale = 1.0;
    bool converged = false;
    for (int it = 1; it <= cfg.max_iter && !converged; ++it) {
        Field cand = make_field(*a.domain);
        Field u_cand = make_field(*a.domain);
        double phi_cand = 0.0;
        if (cfg.method == AscentMethod::fixed_point) {
            cand = normalize(u);
            u_cand = solve(a, cand, detail::kAscentSolveTol).u;
            phi_cand = inner(cand, u_cand);
        } else {
            // Retry with halved steps until the candidate does not decrease Phi.
            for (int halvings = 0;; ++halvings) {
                const double eta = cfg.step * step_scale / phi_now;
                cand = normalize(lincomb(1.0, f, 2.0 * eta, u));
                u_cand = solve(a, cand, detail::kAscentSolveTol).u;
                phi_cand = inner(cand, u_cand);
                if (phi_cand >= phi_now) break;
                step_scale *= 0.5;
                if (halvings >= 64) {  // step is now ~0: we sit on the maximizer
                    cand = f;
                    u_cand = u;
                    phi_cand = phi_now;
                    break;
                }
            }
        }

        const double sigma = inner(cand, f) >= 0.0 ? 1.0 : -1.0;
        const double movement = norm(lincomb(1.0, cand, -sigma, f));
        const double rel_increase = (phi_cand - phi_now) / phi_now;

        f = cand;
        u = u_cand;
        phi_now = phi_cand;
        trace.push_back({it, phi_now, movement});

        if (rel_increase <= cfg.tol && movement <= cfg.tol) converged = true;
    }
    if (!converged)
        throw ascent_nonconvergence_error("maximize: no convergence within max_iter", trace,
                                          trace.back().movement);

    // Reporting convention: largest-magnitude entry positive.
    Field f_signed = f;
    sign_normalize(f_signed);
    const bool flipped = !f.values.empty() && f_signed.values != f.values;
    if (flipped) u = scaled(-1.0, u);

    MaximizerResult res;
    res.f_hat = std::move(f_signed);
    res.u_hat = std::move(u);
    res.phi_star = phi_now;
    res.lambda_est = 1.0 / phi_now;
    res.trace = std::move(trace);
    res.extremality_residual =
        detail::extremality_residual_given(res.u_hat, res.f_hat, 100, cfg.seed ^ detail::kProbeSeedSalt);
    return res;
}

/// Seeded variant: starts from a random field on the unit sphere.
inline MaximizerResult maximize(const SparseOperator& a, const AscentConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    return maximize(a, cfg, random_unit_field(*a.domain, rng));
}

}  // namespace emax
