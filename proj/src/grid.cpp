#include "arz/grid.hpp"

#include <cmath>

#include "arz/errors.hpp"

namespace arz {

Grid Grid::from_params(const ModelParams& p) {
    const double ratio = p.road_length / p.dx;
    const auto n = static_cast<std::size_t>(std::llround(ratio));
    if (n < 4) throw ValidationError("dx", "grid needs at least 4 cells");
    const double covered = static_cast<double>(n) * p.dx;
    if (std::abs(covered - p.road_length) > 1e-9 * p.road_length)
        throw ValidationError("dx", "road_length must be an integer number of cells");
    return Grid{n, p.dx};
}

bool Grid::same_as(const Grid& other, double rtol) const {
    return n_cells == other.n_cells && std::abs(dx - other.dx) <= rtol * std::abs(dx);
}

}  // namespace arz
