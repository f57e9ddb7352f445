#pragma once

#include <cstdint>
#include <vector>

#include "emax/grid.hpp"

namespace emax {

/// Discrete -Laplace with eliminated Dirichlet boundary, stored as CSR with
/// sorted column indices. Symmetric positive definite by construction.
struct SparseOperator {
    const GridDomain* domain = nullptr;
    int n = 0;
    std::vector<std::int32_t> row_offsets;
    std::vector<std::int32_t> col_indices;
    std::vector<double> entries;
};

/// 5-point stencil on the masked lattice. Excluded neighbors contribute no
/// off-diagonal (their zero value is eliminated); the diagonal keeps the full
/// 2/hx^2 + 2/hy^2 regardless of the mask.
inline SparseOperator assemble(const GridDomain& dom) {
    if (dom.n_interior < 1) throw std::invalid_argument("assemble: empty domain");
    SparseOperator a;
    a.domain = &dom;
    a.n = dom.n_interior;
    a.row_offsets.reserve(static_cast<std::size_t>(a.n) + 1);
    a.row_offsets.push_back(0);
    const double wx = 1.0 / (dom.hx * dom.hx);
    const double wy = 1.0 / (dom.hy * dom.hy);
    const double diag = 2.0 * wx + 2.0 * wy;
    for (int p = 0; p < a.n; ++p) {
        const int c = dom.cell_of[static_cast<std::size_t>(p)];
        const int i = c % dom.nx;
        const int j = c / dom.nx;
        // neighbor order south, west, diag, east, north: interior indices are
        // monotone in the lattice id, so columns come out sorted.
        if (j > 0 && dom.interior(i, j - 1)) {
            a.col_indices.push_back(dom.index_of[static_cast<std::size_t>(dom.cell(i, j - 1))]);
            a.entries.push_back(-wy);
        }
        if (i > 0 && dom.interior(i - 1, j)) {
            a.col_indices.push_back(dom.index_of[static_cast<std::size_t>(dom.cell(i - 1, j))]);
            a.entries.push_back(-wx);
        }
        a.col_indices.push_back(p);
        a.entries.push_back(diag);
        if (i + 1 < dom.nx && dom.interior(i + 1, j)) {
            a.col_indices.push_back(dom.index_of[static_cast<std::size_t>(dom.cell(i + 1, j))]);
            a.entries.push_back(-wx);
        }
        if (j + 1 < dom.ny && dom.interior(i, j + 1)) {
            a.col_indices.push_back(dom.index_of[static_cast<std::size_t>(dom.cell(i, j + 1))]);
            a.entries.push_back(-wy);
        }
        a.row_offsets.push_back(static_cast<std::int32_t>(a.col_indices.size()));
    }
    return a;
}

namespace detail {

// Raw CSR matvec on plain vectors; per-row accumulation in CSR order keeps
// the summation deterministic.
inline void apply_raw(const SparseOperator& a, const std::vector<double>& x, std::vector<double>& y) {
    for (int r = 0; r < a.n; ++r) {
        double s = 0.0;
        const int lo = a.row_offsets[static_cast<std::size_t>(r)];
        const int hi = a.row_offsets[static_cast<std::size_t>(r) + 1];
        for (int k = lo; k < hi; ++k)
            s += a.entries[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(a.col_indices[static_cast<std::size_t>(k)])];
        y[static_cast<std::size_t>(r)] = s;
    }
}

inline void require_operator_field(const SparseOperator& a, const Field& u, const char* where) {
    if (a.domain == nullptr || u.domain != a.domain || static_cast<int>(u.values.size()) != a.n)
        throw std::invalid_argument(std::string(where) + ": operator/field dimension mismatch");
}

}  // namespace detail

inline Field apply(const SparseOperator& a, const Field& u) {
    detail::require_operator_field(a, u, "apply");
    Field out = make_field(*a.domain);
    detail::apply_raw(a, u.values, out.values);
    return out;
}

/// Discrete Dirichlet energy of u through the operator, inner(A u, u).
inline double energy(const SparseOperator& a, const Field& u) {
    detail::require_operator_field(a, u, "energy");
    return inner(apply(a, u), u);
}

}  // namespace emax
