#pragma once

#include <array>

namespace csdfd {

// Dual weights on the 2-simplex: mu[0], mu[1] >= 0 and mu[0] + mu[1] = 1.
struct SimplexWeights {
    std::array<double, 2> mu{0.5, 0.5};

    double operator[](std::size_t i) const { return mu[i]; }
    bool operator==(const SimplexWeights&) const = default;
};

// Euclidean projection of (raw0, raw1) onto the 2-simplex.
// Throws std::invalid_argument on non-finite input.
SimplexWeights simplex_project(double raw0, double raw1);

}  // namespace csdfd
