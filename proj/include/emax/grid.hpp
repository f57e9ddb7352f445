#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "emax/errors.hpp"

namespace emax {

enum class DomainKind { rectangle, disk };

/// Discretized domain: a rectangular lattice of candidate nodes with an
/// interior mask. Only masked-in nodes carry unknowns; every excluded or
/// boundary node is pinned to zero (homogeneous Dirichlet) and not stored.
struct GridDomain {
    DomainKind kind = DomainKind::rectangle;
    int nx = 0;            // lattice extent in x
    int ny = 0;            // lattice extent in y
    double hx = 0.0;       // spacing in x
    double hy = 0.0;       // spacing in y
    double origin_x = 0.0; // coordinates of lattice node (0,0)
    double origin_y = 0.0;

    std::vector<std::uint8_t> mask;     // nx*ny, row-major with x fastest; 1 = interior
    std::vector<std::int32_t> index_of; // lattice cell -> interior index, -1 if excluded
    std::vector<std::int32_t> cell_of;  // interior index -> lattice cell
    int n_interior = 0;

    int cell(int i, int j) const { return j * nx + i; }
    bool interior(int i, int j) const { return mask[static_cast<std::size_t>(cell(i, j))] != 0; }
    double x(int i) const { return origin_x + i * hx; }
    double y(int j) const { return origin_y + j * hy; }
};

namespace detail {

// Builds the lattice <-> interior bijection by scanning cells in lattice order,
// so interior indices are monotone in the lattice id.
inline void finalize_index(GridDomain& dom) {
    const std::size_t cells = static_cast<std::size_t>(dom.nx) * static_cast<std::size_t>(dom.ny);
    dom.index_of.assign(cells, -1);
    dom.cell_of.clear();
    for (std::size_t c = 0; c < cells; ++c) {
        if (dom.mask[c] != 0) {
            dom.index_of[c] = static_cast<std::int32_t>(dom.cell_of.size());
            dom.cell_of.push_back(static_cast<std::int32_t>(c));
        }
    }
    dom.n_interior = static_cast<int>(dom.cell_of.size());
}

}  // namespace detail

/// Rectangle (0,Lx)x(0,Ly) with nx-by-ny interior nodes and spacing Lx/(nx+1).
inline GridDomain make_rectangle(int nx, int ny, double lx, double ly) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("make_rectangle: nx, ny must be >= 1");
    if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("make_rectangle: lengths must be positive");
    GridDomain dom;
    dom.kind = DomainKind::rectangle;
    dom.nx = nx;
    dom.ny = ny;
    dom.hx = lx / (nx + 1);
    dom.hy = ly / (ny + 1);
    dom.origin_x = dom.hx;
    dom.origin_y = dom.hy;
    dom.mask.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 1);
    detail::finalize_index(dom);
    return dom;
}

/// Disk of radius R centered at the origin, approximated by the n-by-n lattice
/// covering [-R,R]^2 with spacing 2R/(n+1); nodes with x^2+y^2 < R^2 are
/// interior, all others act as Dirichlet zeros (staircase boundary).
inline GridDomain make_disk(int n, double radius) {
    if (n < 3) throw std::invalid_argument("make_disk: n must be >= 3");
    if (!(radius > 0.0)) throw std::invalid_argument("make_disk: radius must be positive");
    GridDomain dom;
    dom.kind = DomainKind::disk;
    dom.nx = n;
    dom.ny = n;
    dom.hx = 2.0 * radius / (n + 1);
    dom.hy = dom.hx;
    dom.origin_x = -radius + dom.hx;
    dom.origin_y = -radius + dom.hy;
    dom.mask.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    const double r2 = radius * radius;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double xi = dom.x(i);
            const double yj = dom.y(j);
            if (xi * xi + yj * yj < r2) dom.mask[static_cast<std::size_t>(dom.cell(i, j))] = 1;
        }
    }
    detail::finalize_index(dom);
    if (dom.n_interior < 1) throw std::invalid_argument("make_disk: empty interior");
    return dom;
}

/// Grid function over the interior nodes of a domain.
struct Field {
    const GridDomain* domain = nullptr;
    std::vector<double> values;
};

inline Field make_field(const GridDomain& dom) {
    Field f;
    f.domain = &dom;
    f.values.assign(static_cast<std::size_t>(dom.n_interior), 0.0);
    return f;
}

inline bool all_finite(const Field& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}

namespace detail {

inline void require_same_domain(const Field& f, const Field& g, const char* where) {
    if (f.domain == nullptr || f.domain != g.domain || f.values.size() != g.values.size())
        throw std::invalid_argument(std::string(where) + ": fields live on different domains");
}

}  // namespace detail

/// Discrete L2 pairing <f,g> = hx*hy * sum_i f_i g_i, summed in linear-index
/// order so results are bit-reproducible.
inline double inner(const Field& f, const Field& g) {
    detail::require_same_domain(f, g, "inner");
    double s = 0.0;
    const std::size_t n = f.values.size();
    for (std::size_t i = 0; i < n; ++i) s += f.values[i] * g.values[i];
    return f.domain->hx * f.domain->hy * s;
}

inline double norm(const Field& f) { return std::sqrt(inner(f, f)); }

/// f / ||f||_2. The zero field has no direction to return.
inline Field normalize(const Field& f) {
    const double nf = norm(f);
    if (!(nf > 0.0)) throw degenerate_input_error("normalize: zero field");
    Field out = f;
    const double inv = 1.0 / nf;
    for (double& v : out.values) v *= inv;
    return out;
}

/// a*f + b*g, componentwise.
inline Field lincomb(double a, const Field& f, double b, const Field& g) {
    detail::require_same_domain(f, g, "lincomb");
    Field out = make_field(*f.domain);
    const std::size_t n = f.values.size();
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a * f.values[i] + b * g.values[i];
    return out;
}

inline Field scaled(double a, const Field& f) {
    Field out = f;
    for (double& v : out.values) v *= a;
    return out;
}

/// Flips the sign so the entry of largest magnitude (lowest index on ties)
/// is positive; makes reported eigenvectors/maximizers reproducible.
inline void sign_normalize(Field& f) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double a = std::fabs(f.values[i]);
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (!f.values.empty() && f.values[arg] < 0.0)
        for (double& v : f.values) v = -v;
}

}  // namespace emax
