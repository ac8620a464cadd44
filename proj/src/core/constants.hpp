#pragma once

#include "core/errors.hpp"

namespace shearwave {

/// Gravity and surface tension, carried separately from the vorticity data
/// because they vary independently of the shear profile.
struct PhysicalConstants {
    double gravity = 9.81;
    double surface_tension = 0.0;

    PhysicalConstants() = default;
    PhysicalConstants(double g, double sigma) : gravity(g), surface_tension(sigma) { validate(); }

    void validate() const {
        if (!(gravity > 0.0))
            throw InvalidInput("gravity: must be > 0");
        if (!(surface_tension >= 0.0))
            throw InvalidInput("surface_tension: must be >= 0");
    }
};

}  // namespace shearwave
