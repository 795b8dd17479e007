#include "arz/ramp.hpp"

#include <algorithm>

#include "arz/errors.hpp"

namespace arz {

double PiecewiseConstantSchedule::value(double t) const {
    if (times.empty()) return 0.0;
    // last breakpoint at or before t; before the first one, the first value holds
    auto it = std::upper_bound(times.begin(), times.end(), t);
    const auto idx = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin() - 1);
    return values[idx];
}

bool PiecewiseConstantSchedule::nonnegative() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return v >= 0.0; });
}

RampConfig RampConfig::full_road(const ModelParams& p) {
    return interval(0.0, p.road_length, p.a_in_max, p.a_out_max);
}

RampConfig RampConfig::interval(double a, double b, double g_in, double g_out) {
    RampConfig r;
    r.a = a;
    r.b = b;
    r.g_in = PiecewiseConstantSchedule::constant(g_in);
    r.g_out = PiecewiseConstantSchedule::constant(g_out);
    return r;
}

void RampConfig::validate(double road_length) const {
    if (!(a >= 0.0 && a < b && b <= road_length))
        throw ValidationError("ramp", "interval must satisfy 0 <= a < b <= L");
    if (g_in.times.size() != g_in.values.size() || g_out.times.size() != g_out.values.size())
        throw ValidationError("ramp", "schedule breakpoints and values differ in length");
    if (!std::is_sorted(g_in.times.begin(), g_in.times.end()) ||
        !std::is_sorted(g_out.times.begin(), g_out.times.end()))
        throw ValidationError("ramp", "schedule breakpoints must ascend");
    if (!g_in.nonnegative()) throw ValidationError("g_in", "intensities must be nonnegative");
    if (!g_out.nonnegative()) throw ValidationError("g_out", "intensities must be nonnegative");
}

}  // namespace arz
