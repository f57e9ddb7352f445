#pragma once

#include <cstdint>
#include <random>

#include "emax/grid.hpp"

namespace emax {

// Uniform in [0,1) from the top 53 bits of the engine output; avoids the
// implementation-defined distribution classes so streams are portable.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_pm1(std::mt19937_64& rng) { return 2.0 * uniform01(rng) - 1.0; }

/// Random field with entries uniform in [-1,1], normalized onto the unit sphere.
inline Field random_unit_field(const GridDomain& dom, std::mt19937_64& rng) {
    Field f = make_field(dom);
    for (;;) {
        for (double& v : f.values) v = uniform_pm1(rng);
        if (norm(f) > 0.0) break;  // redraw the (measure-zero) zero draw
    }
    return normalize(f);
}

}  // namespace emax
