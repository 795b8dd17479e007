#pragma once

#include <cstddef>
#include <vector>

namespace arz {

/// Conserved field at one time level: u1[i] = k (density, veh/m),
/// u2[i] = k*(v + p(k)) (veh/s). The solver keeps u1 in [k_floor, k_jam] and
/// the recovered v in [0, v_max] by audited clamping.
struct State {
    std::vector<double> u1;
    std::vector<double> u2;
    double t = 0.0;  // [s]

    std::size_t n() const { return u1.size(); }
};

}  // namespace arz
