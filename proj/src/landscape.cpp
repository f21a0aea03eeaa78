#include "csdfd/landscape.hpp"

#include <stdexcept>
#include <string>

namespace csdfd {

namespace {

// SplitQuadratic: two bowls centered at t1 = +1 and t1 = -1 with opposing
// cross terms, so the gradients point in conflicting directions near the
// origin (at (0,0): g1 = (-2,0), g2 = (2,0), cosine -1).
//   L1 = (t1 - 1)^2 + t2^2 + k t1 t2
//   L2 = (t1 + 1)^2 + t2^2 - k t1 t2
constexpr double kSplitCoupling = 0.8;

// BananaPair: mirrored curved valleys along t2 = t1^2 with minima at
// t1 = +/- 1. The valley stiffness is kept moderate so plain gradient descent
// with small steps is stable.
//   L1 = (1 - t1)^2 + b (t2 - t1^2)^2
//   L2 = (1 + t1)^2 + b (t2 - t1^2)^2
constexpr double kBananaStiffness = 5.0;

}  // namespace

ToyLandscape make_toy_landscape(LandscapeId id) {
    ToyLandscape ls;
    ls.id = id;
    switch (id) {
        case LandscapeId::SplitQuadratic: {
            const double k = kSplitCoupling;
            ls.loss1 = [k](double t1, double t2) {
                return (t1 - 1.0) * (t1 - 1.0) + t2 * t2 + k * t1 * t2;
            };
            ls.loss2 = [k](double t1, double t2) {
                return (t1 + 1.0) * (t1 + 1.0) + t2 * t2 - k * t1 * t2;
            };
            ls.grad1 = [k](double t1, double t2) {
                return std::array<double, 2>{2.0 * (t1 - 1.0) + k * t2, 2.0 * t2 + k * t1};
            };
            ls.grad2 = [k](double t1, double t2) {
                return std::array<double, 2>{2.0 * (t1 + 1.0) - k * t2, 2.0 * t2 - k * t1};
            };
            break;
        }
        case LandscapeId::BananaPair: {
            const double b = kBananaStiffness;
            ls.loss1 = [b](double t1, double t2) {
                const double r = t2 - t1 * t1;
                return (1.0 - t1) * (1.0 - t1) + b * r * r;
            };
            ls.loss2 = [b](double t1, double t2) {
                const double r = t2 - t1 * t1;
                return (1.0 + t1) * (1.0 + t1) + b * r * r;
            };
            ls.grad1 = [b](double t1, double t2) {
                const double r = t2 - t1 * t1;
                return std::array<double, 2>{-2.0 * (1.0 - t1) - 4.0 * b * t1 * r, 2.0 * b * r};
            };
            ls.grad2 = [b](double t1, double t2) {
                const double r = t2 - t1 * t1;
                return std::array<double, 2>{2.0 * (1.0 + t1) - 4.0 * b * t1 * r, 2.0 * b * r};
            };
            break;
        }
    }
    return ls;
}

std::string_view landscape_name(LandscapeId id) {
    switch (id) {
        case LandscapeId::SplitQuadratic: return "SplitQuadratic";
        case LandscapeId::BananaPair: return "BananaPair";
    }
    return "unknown";
}

LandscapeId parse_landscape(std::string_view name) {
    if (name == "SplitQuadratic") return LandscapeId::SplitQuadratic;
    if (name == "BananaPair") return LandscapeId::BananaPair;
    throw std::invalid_argument("unknown landscape '" + std::string(name) + "'");
}

}  // namespace csdfd
