#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "emax/operator.hpp"

namespace emax {

// The oracle is deliberately small and slow: a dense mirror of the sparse
// operator plus a from-scratch Jacobi eigensolver, used to certify the
// iterative paths on tiny grids.

constexpr int kDenseSizeGuard = 200;

struct DenseMatrix {
    int n = 0;
    std::vector<double> a;  // row-major n*n
    const GridDomain* domain = nullptr;

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
};

/// Dense assembly, entrywise equal to the sparse one.
inline DenseMatrix dense_assemble(const GridDomain& dom) {
    if (dom.n_interior > kDenseSizeGuard)
        throw std::invalid_argument("dense_assemble: domain exceeds the oracle size guard");
    const SparseOperator s = assemble(dom);
    DenseMatrix m;
    m.n = s.n;
    m.domain = &dom;
    m.a.assign(static_cast<std::size_t>(m.n) * static_cast<std::size_t>(m.n), 0.0);
    for (int r = 0; r < s.n; ++r)
        for (int k = s.row_offsets[static_cast<std::size_t>(r)]; k < s.row_offsets[static_cast<std::size_t>(r) + 1]; ++k)
            m.at(r, s.col_indices[static_cast<std::size_t>(k)]) = s.entries[static_cast<std::size_t>(k)];
    return m;
}

struct JacobiResult {
    std::vector<double> eigenvalues;                // ascending
    std::vector<std::vector<double>> eigenvectors;  // [j] is the j-th column, Euclidean-orthonormal
};

namespace detail {

inline double off_diagonal_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j) s += m.at(i, j) * m.at(i, j);
    return std::sqrt(2.0 * s);
}

}  // namespace detail

/// Full spectrum of a symmetric matrix by cyclic Jacobi rotations with the
/// classical threshold strategy; stops once the off-diagonal Frobenius norm
/// falls below tol * ||M||_F. Sweep cap 100.
inline JacobiResult jacobi_eigen(const DenseMatrix& m_in, double tol = 1e-13) {
    if (m_in.n < 1) throw std::invalid_argument("jacobi_eigen: empty matrix");
    if (m_in.n > kDenseSizeGuard) throw std::invalid_argument("jacobi_eigen: matrix exceeds the oracle size guard");
    for (int i = 0; i < m_in.n; ++i)
        for (int j = i + 1; j < m_in.n; ++j)
            if (m_in.at(i, j) != m_in.at(j, i)) throw std::invalid_argument("jacobi_eigen: matrix is not symmetric");

    DenseMatrix m = m_in;
    const int n = m.n;
    std::vector<double> v(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = 1.0;

    double norm_ref = 0.0;
    for (double e : m.a) norm_ref += e * e;
    norm_ref = std::sqrt(norm_ref);
    const double target = tol * (norm_ref > 0.0 ? norm_ref : 1.0);

    bool done = detail::off_diagonal_norm(m) <= target;
    for (int sweep = 1; sweep <= 100 && !done; ++sweep) {
        const double off = detail::off_diagonal_norm(m);
        if (off <= target) {
            done = true;
            break;
        }
        // Rotate only entries above the sweep threshold early on; late sweeps
        // rotate everything nonzero.
        const double thresh = sweep <= 4 ? 0.2 * off * off / (static_cast<double>(n) * n) : 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m.at(p, q);
                if (apq == 0.0 || std::fabs(apq) <= thresh) continue;
                const double theta = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double app = m.at(p, p), aqq = m.at(q, q);
                m.at(p, p) = app - t * apq;
                m.at(q, q) = aqq + t * apq;
                m.at(p, q) = 0.0;
                m.at(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = m.at(i, p), aiq = m.at(i, q);
                    m.at(i, p) = c * aip - s * aiq;
                    m.at(p, i) = m.at(i, p);
                    m.at(i, q) = s * aip + c * aiq;
                    m.at(q, i) = m.at(i, q);
                }
                for (int i = 0; i < n; ++i) {
                    double& vip = v[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(p)];
                    double& viq = v[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(q)];
                    const double tp = vip, tq = viq;
                    vip = c * tp - s * tq;
                    viq = s * tp + c * tq;
                }
            }
        }
        done = detail::off_diagonal_norm(m) <= target;
    }
    if (!done)
        throw nonconvergence_error("jacobi_eigen: sweep cap reached", 100, detail::off_diagonal_norm(m));

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&m](int i, int j) { return m.at(i, i) < m.at(j, j); });

    JacobiResult res;
    res.eigenvalues.reserve(static_cast<std::size_t>(n));
    res.eigenvectors.reserve(static_cast<std::size_t>(n));
    for (int col : order) {
        res.eigenvalues.push_back(m.at(col, col));
        std::vector<double> evec(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) evec[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(col)];
        res.eigenvectors.push_back(std::move(evec));
    }
    return res;
}

/// Euclidean-orthonormal Jacobi eigenvectors rescaled by 1/sqrt(hx*hy) so they
/// are orthonormal in the discrete L2 inner product.
inline std::vector<Field> l2_eigenfields(const JacobiResult& jr, const GridDomain& dom) {
    const double scale = 1.0 / std::sqrt(dom.hx * dom.hy);
    std::vector<Field> out;
    out.reserve(jr.eigenvectors.size());
    for (const std::vector<double>& col : jr.eigenvectors) {
        Field f = make_field(dom);
        for (std::size_t i = 0; i < col.size(); ++i) f.values[i] = scale * col[i];
        sign_normalize(f);
        out.push_back(std::move(f));
    }
    return out;
}

struct BruteMaxResult {
    double phi_star = 0.0;
    Field maximizer;
};

/// Exhaustive certificate: Phi(f) = <f, A^{-1} f> on the sphere is maximized
/// by the eigenvector of the smallest eigenvalue of A, with value 1/lambda_min.
inline BruteMaxResult brute_max(const GridDomain& dom) {
    const DenseMatrix m = dense_assemble(dom);
    const JacobiResult jr = jacobi_eigen(m);
    BruteMaxResult res;
    res.phi_star = 1.0 / jr.eigenvalues.front();
    res.maximizer = l2_eigenfields(jr, dom).front();
    return res;
}

}  // namespace emax
