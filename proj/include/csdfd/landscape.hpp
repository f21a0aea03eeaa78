#pragma once

#include <array>
#include <functional>
#include <string_view>

namespace csdfd {

enum class LandscapeId { SplitQuadratic, BananaPair };

// A pair of closed-form 2-D losses with analytic gradients, engineered so the
// two gradients disagree near the shared region between their minima. Serves
// as the instrumented stand-in for two-subset training dynamics.
struct ToyLandscape {
    LandscapeId id = LandscapeId::SplitQuadratic;
    std::function<double(double, double)> loss1;
    std::function<double(double, double)> loss2;
    std::function<std::array<double, 2>(double, double)> grad1;
    std::function<std::array<double, 2>(double, double)> grad2;
};

ToyLandscape make_toy_landscape(LandscapeId id);

std::string_view landscape_name(LandscapeId id);
// Throws std::invalid_argument on an unknown name.
LandscapeId parse_landscape(std::string_view name);

}  // namespace csdfd
