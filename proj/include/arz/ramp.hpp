#pragma once

#include <vector>

#include "arz/params.hpp"

namespace arz {

/// Right-continuous step function of time: value(t) is the entry whose
/// breakpoint is the last one at or before t. Empty schedule reads as 0.
struct PiecewiseConstantSchedule {
    std::vector<double> times;   // ascending breakpoints [s]
    std::vector<double> values;  // one per breakpoint [veh/m/s]

    static PiecewiseConstantSchedule constant(double v) { return {{0.0}, {v}}; }
    double value(double t) const;
    bool nonnegative() const;
};

/// Localization and intensity of one entry/exit ramp: the indicator of [a, b]
/// gates the intensities, so a_in(t,x) = g_in(t) on the ramp and 0 elsewhere.
struct RampConfig {
    double a = 0.0;  // ramp start [m]
    double b = 0.0;  // ramp end [m]
    PiecewiseConstantSchedule g_in;   // entry intensity schedule
    PiecewiseConstantSchedule g_out;  // exit intensity schedule

    /// No entries or exits anywhere (Case1/Case2 runs).
    static RampConfig none() { return {}; }

    /// Constant intensities over the whole road [0, L].
    static RampConfig full_road(const ModelParams& p);

    /// Constant intensities over [a, b].
    static RampConfig interval(double a, double b, double g_in, double g_out);

    void validate(double road_length) const;
};

}  // namespace arz
