#pragma once

#include <cstddef>

#include "arz/params.hpp"

namespace arz {

/// Uniform 1-D discretization of the road into cell-centered samples.
struct Grid {
    std::size_t n_cells = 0;
    double dx = 0.0;  // [m]

    double length() const { return static_cast<double>(n_cells) * dx; }
    double cell_center(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dx; }

    /// n_cells = L/dx. Throws ValidationError unless the division is exact to
    /// 1 part in 1e9 and leaves at least 4 cells for the stencils.
    static Grid from_params(const ModelParams& p);

    bool same_as(const Grid& other, double rtol = 1e-12) const;
};

}  // namespace arz
