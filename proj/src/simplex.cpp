#include "csdfd/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace csdfd {

SimplexWeights simplex_project(double raw0, double raw1) {
    if (!std::isfinite(raw0) || !std::isfinite(raw1)) {
        throw std::invalid_argument("simplex_project: non-finite input");
    }
    // Project onto the line x + y = 1, then clamp the active vertex.
    const double shift = 0.5 * (1.0 - raw0 - raw1);
    const double x = raw0 + shift;
    if (x <= 0.0) return SimplexWeights{{0.0, 1.0}};
    if (x >= 1.0) return SimplexWeights{{1.0, 0.0}};
    return SimplexWeights{{x, 1.0 - x}};
}

}  // namespace csdfd
