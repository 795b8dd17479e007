#include "arz/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "arz/errors.hpp"
#include "arz/grid.hpp"
#include "arz/model.hpp"

namespace arz {

namespace {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view v, std::size_t line) {
    double out{};
    const char* begin = v.data();
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("not a number: '" + std::string(v) + "'", line);
    return out;
}

unsigned long parse_ulong(std::string_view v, std::size_t line) {
    unsigned long out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ParseError("not a nonnegative integer: '" + std::string(v) + "'", line);
    return out;
}

bool parse_bool(std::string_view v, std::size_t line) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ParseError("expected true|false, got '" + std::string(v) + "'", line);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto pos = s.find(sep);
        if (pos == std::string_view::npos) {
            parts.push_back(s);
            return parts;
        }
        parts.push_back(s.substr(0, pos));
        s.remove_prefix(pos + 1);
    }
}

std::vector<std::pair<double, double>> load_knots(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open knot file: " + path.string());
    std::vector<std::pair<double, double>> knots;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream fields{std::string(line)};
        double x, f;
        if (!(fields >> x >> f))
            throw ParseError("knot file " + path.string() + ": expected 'x fraction'", line_no);
        knots.emplace_back(x, f);
    }
    if (knots.empty()) throw ParseError("knot file " + path.string() + " is empty");
    return knots;
}

}  // namespace

InitialCondition InitialCondition::riemann(double left_f, double right_f) {
    InitialCondition ic;
    ic.kind = Kind::RiemannStep;
    ic.left_fraction = left_f;
    ic.right_fraction = right_f;
    ic.jump_at = 0.0;
    return ic;
}

InitialCondition InitialCondition::uniform(double f) {
    InitialCondition ic;
    ic.kind = Kind::UniformEquilibrium;
    ic.fraction = f;
    return ic;
}

InitialCondition InitialCondition::custom(std::vector<std::pair<double, double>> knots) {
    InitialCondition ic;
    ic.kind = Kind::Custom;
    ic.knots = std::move(knots);
    return ic;
}

InitialCondition InitialCondition::sine(double base_f, double amplitude_f, int periods) {
    InitialCondition ic;
    ic.kind = Kind::SinePerturbation;
    ic.base_fraction = base_f;
    ic.amplitude_fraction = amplitude_f;
    ic.periods = periods;
    return ic;
}

double InitialCondition::density_at(double x, const ModelParams& p) const {
    switch (kind) {
        case Kind::RiemannStep: {
            const double jump = jump_at > 0.0 ? jump_at : 0.5 * p.road_length;
            return (x < jump ? left_fraction : right_fraction) * p.k_jam;
        }
        case Kind::UniformEquilibrium:
            return fraction * p.k_jam;
        case Kind::Custom: {
            if (x <= knots.front().first) return knots.front().second * p.k_jam;
            if (x >= knots.back().first) return knots.back().second * p.k_jam;
            auto hi = std::upper_bound(knots.begin(), knots.end(), x,
                                       [](double xv, const auto& kn) { return xv < kn.first; });
            const auto lo = hi - 1;
            const double w = (x - lo->first) / (hi->first - lo->first);
            return ((1.0 - w) * lo->second + w * hi->second) * p.k_jam;
        }
        case Kind::SinePerturbation: {
            const double phase = 2.0 * std::numbers::pi * periods * x / p.road_length;
            return (base_fraction + amplitude_fraction * std::sin(phase)) * p.k_jam;
        }
    }
    return 0.0;
}

void InitialCondition::validate(const ModelParams& p) const {
    const double lo = p.k_floor / p.k_jam;
    auto in_range = [&](double f) { return f >= lo && f <= 1.0; };
    switch (kind) {
        case Kind::RiemannStep:
            if (!in_range(left_fraction))
                throw ValidationError("ic.left_fraction", "must lie in [k_floor/k_jam, 1]");
            if (!in_range(right_fraction))
                throw ValidationError("ic.right_fraction", "must lie in [k_floor/k_jam, 1]");
            if (jump_at != 0.0 && !(jump_at > 0.0 && jump_at < p.road_length))
                throw ValidationError("ic.jump_at", "must lie in (0, L)");
            break;
        case Kind::UniformEquilibrium:
            if (!in_range(fraction))
                throw ValidationError("ic.fraction", "must lie in [k_floor/k_jam, 1]");
            break;
        case Kind::Custom: {
            if (knots.empty()) throw ValidationError("ic.knots", "need at least one knot");
            if (!std::is_sorted(knots.begin(), knots.end(),
                                [](const auto& a, const auto& b) { return a.first < b.first; }))
                throw ValidationError("ic.knots", "must be sorted by x");
            for (const auto& [x, f] : knots)
                if (!in_range(f))
                    throw ValidationError("ic.knots", "fractions must lie in [k_floor/k_jam, 1]");
            break;
        }
        case Kind::SinePerturbation:
            if (amplitude_fraction < 0.0)
                throw ValidationError("ic.amplitude", "must be nonnegative");
            if (!in_range(base_fraction - amplitude_fraction) ||
                !in_range(base_fraction + amplitude_fraction))
                throw ValidationError("ic.base_fraction",
                                      "base +/- amplitude must lie in [k_floor/k_jam, 1]");
            if (periods < 1) throw ValidationError("ic.periods", "must be at least 1");
            break;
    }
}

std::string InitialCondition::describe() const {
    switch (kind) {
        case Kind::RiemannStep:
            if (jump_at == 0.0 && left_fraction == 0.46 && right_fraction == 0.10) return "ic1";
            if (jump_at == 0.0 && left_fraction == 0.90 && right_fraction == 0.55) return "ic2";
            return "riemann:" + fmt_g17(left_fraction) + ":" + fmt_g17(right_fraction);
        case Kind::UniformEquilibrium:
            return "uniform:" + fmt_g17(fraction);
        case Kind::Custom:
            return "custom:" + std::to_string(knots.size()) + "-knots";
        case Kind::SinePerturbation:
            return "sine:" + fmt_g17(base_fraction) + ":" + fmt_g17(amplitude_fraction) + ":" +
                   std::to_string(periods);
    }
    return "?";
}

void ScenarioSpec::validate() const {
    params.validate();
    Grid::from_params(params);
    ic.validate(params);
    ramp.validate(params.road_length);
    if (!(horizon_s > 0.0)) throw ValidationError("horizon_s", "must be positive");
    const double steps = horizon_s / params.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9)
        throw ValidationError("horizon_s", "must be an integer number of dt steps");
    if (record_every == 0) throw ValidationError("record_every", "must be at least 1");
    if (initial_speed && (*initial_speed < 0.0 || *initial_speed > params.v_max))
        throw ValidationError("v0_mps", "must lie in [0, v_max]");
}

std::string ScenarioSpec::dump() const {
    std::ostringstream out;
    out << "label = " << label << '\n'
        << "length_m = " << fmt_g17(params.road_length) << '\n'
        << "vmax_mps = " << fmt_g17(params.v_max) << '\n'
        << "kjam_vpm = " << fmt_g17(params.k_jam) << '\n'
        << "kcr_fraction = " << fmt_g17(params.k_cr_fraction) << '\n'
        << "c0_sq = " << fmt_g17(params.c0_sq) << '\n'
        << "phi = " << fmt_g17(params.phi) << '\n'
        << "gamma = " << fmt_g17(params.gamma) << '\n'
        << "dt_s = " << fmt_g17(params.dt) << '\n'
        << "dx_m = " << fmt_g17(params.dx) << '\n'
        << "smoothing_s = " << fmt_g17(params.smoothing_weight) << '\n'
        << "a_in = " << fmt_g17(params.a_in_max) << '\n'
        << "a_out = " << fmt_g17(params.a_out_max) << '\n'
        << "delta_s = " << fmt_g17(params.relaxation_time) << '\n'
        << "courant_target = " << fmt_g17(params.courant_target) << '\n'
        << "k_floor = " << fmt_g17(params.k_floor) << '\n'
        << "case = " << static_cast<int>(params.source_case) << '\n'
        << "source_in_corrector = " << (params.source_in_corrector ? "true" : "false") << '\n'
        << "pressure_law = " << to_string(params.pressure_law) << '\n'
        << "ic = " << ic.describe() << '\n';
    if (initial_speed) out << "v0_mps = " << fmt_g17(*initial_speed) << '\n';
    out << "ramp_a_m = " << fmt_g17(ramp.a) << '\n'
        << "ramp_b_m = " << fmt_g17(ramp.b) << '\n'
        << "boundary = " << to_string(boundary) << '\n'
        << "horizon_s = " << fmt_g17(horizon_s) << '\n'
        << "record_every = " << record_every << '\n'
        << "seed = " << seed << '\n';
    return out.str();
}

State build_initial_state(const ScenarioSpec& spec) {
    const Grid grid = Grid::from_params(spec.params);
    State s;
    s.u1.resize(grid.n_cells);
    s.u2.resize(grid.n_cells);
    s.t = 0.0;
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        const double k = spec.ic.density_at(grid.cell_center(i), spec.params);
        const double v =
            spec.initial_speed ? *spec.initial_speed : equilibrium_speed(k, spec.params);
        const Cons u = conserved_from_primitive(k, v, spec.params);
        s.u1[i] = u.u1;
        s.u2[i] = u.u2;
    }
    return s;
}

State build_ic1(const ModelParams& p) {
    ScenarioSpec spec;
    spec.params = p;
    spec.ic = InitialCondition::ic1();
    return build_initial_state(spec);
}

State build_ic2(const ModelParams& p) {
    ScenarioSpec spec;
    spec.params = p;
    spec.ic = InitialCondition::ic2();
    return build_initial_state(spec);
}

namespace {

ScenarioSpec parse_scenario(std::string_view text,
                            const std::optional<std::filesystem::path>& base_dir) {
    ScenarioSpec spec;
    spec.ramp = RampConfig::interval(0.0, spec.params.road_length, 0.0, 0.0);

    std::optional<double> ramp_a, ramp_b;
    bool ramp_given = false;

    std::size_t line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'key = value'", line_no);
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line_no);
        if (value.empty()) throw ParseError("empty value for key '" + key + "'", line_no);

        auto& p = spec.params;
        if (key == "length_m") p.road_length = parse_double(value, line_no);
        else if (key == "vmax_mps") p.v_max = parse_double(value, line_no);
        else if (key == "kjam_vpm") p.k_jam = parse_double(value, line_no);
        else if (key == "kcr_fraction") p.k_cr_fraction = parse_double(value, line_no);
        else if (key == "c0_sq") p.c0_sq = parse_double(value, line_no);
        else if (key == "phi") p.phi = parse_double(value, line_no);
        else if (key == "gamma") p.gamma = parse_double(value, line_no);
        else if (key == "dt_s") p.dt = parse_double(value, line_no);
        else if (key == "dx_m") p.dx = parse_double(value, line_no);
        else if (key == "smoothing_s") p.smoothing_weight = parse_double(value, line_no);
        else if (key == "a_in") p.a_in_max = parse_double(value, line_no);
        else if (key == "a_out") p.a_out_max = parse_double(value, line_no);
        else if (key == "delta_s") p.relaxation_time = parse_double(value, line_no);
        else if (key == "courant_target") p.courant_target = parse_double(value, line_no);
        else if (key == "k_floor") p.k_floor = parse_double(value, line_no);
        else if (key == "case") {
            const auto c = parse_ulong(value, line_no);
            if (c < 1 || c > 4) throw ParseError("case must be 1|2|3|4", line_no);
            p.source_case = static_cast<SourceCase>(c);
        } else if (key == "source_in_corrector") {
            p.source_in_corrector = parse_bool(value, line_no);
        } else if (key == "pressure_law") {
            if (value == "sonic") p.pressure_law = PressureLaw::SonicPower;
            else if (value == "moutari_rascle") p.pressure_law = PressureLaw::MoutariRascle;
            else throw ParseError("pressure_law must be sonic|moutari_rascle", line_no);
        } else if (key == "ic") {
            if (value == "ic1") spec.ic = InitialCondition::ic1();
            else if (value == "ic2") spec.ic = InitialCondition::ic2();
            else if (value.rfind("uniform:", 0) == 0) {
                spec.ic = InitialCondition::uniform(parse_double(value.substr(8), line_no));
            } else if (value.rfind("custom:", 0) == 0) {
                std::filesystem::path knot_path{std::string(value.substr(7))};
                if (base_dir && knot_path.is_relative()) knot_path = *base_dir / knot_path;
                spec.ic = InitialCondition::custom(load_knots(knot_path));
            } else if (value.rfind("sine:", 0) == 0) {
                const auto parts = split(value.substr(5), ':');
                if (parts.size() != 3)
                    throw ParseError("expected sine:<base_f>:<amplitude_f>:<periods>", line_no);
                spec.ic = InitialCondition::sine(
                    parse_double(trim(parts[0]), line_no), parse_double(trim(parts[1]), line_no),
                    static_cast<int>(parse_ulong(trim(parts[2]), line_no)));
            } else {
                throw ParseError("ic must be ic1|ic2|uniform:<f>|custom:<path>|sine:<b>:<a>:<n>",
                                 line_no);
            }
        } else if (key == "ramp_a_m") {
            ramp_a = parse_double(value, line_no);
            ramp_given = true;
        } else if (key == "ramp_b_m") {
            ramp_b = parse_double(value, line_no);
            ramp_given = true;
        } else if (key == "boundary") {
            if (value == "zero_gradient") spec.boundary = BoundaryMode::ZeroGradient;
            else if (value == "periodic") spec.boundary = BoundaryMode::Periodic;
            else throw ParseError("boundary must be zero_gradient|periodic", line_no);
        } else if (key == "horizon_s") {
            spec.horizon_s = parse_double(value, line_no);
        } else if (key == "record_every") {
            spec.record_every = parse_ulong(value, line_no);
        } else if (key == "v0_mps") {
            spec.initial_speed = parse_double(value, line_no);
        } else if (key == "seed") {
            spec.seed = parse_ulong(value, line_no);
        } else if (key == "label") {
            spec.label = std::string(value);
        } else {
            throw UnknownKeyError(key);
        }
    }

    // Cases with ramp terms default to intensities over the whole road when no
    // interval is given; Cases 1-2 keep a zero-intensity ramp.
    const double L = spec.params.road_length;
    const bool needs_sources = spec.params.source_case == SourceCase::Case3 ||
                               spec.params.source_case == SourceCase::Case4;
    const double a = ramp_a.value_or(0.0);
    const double b = ramp_b.value_or(L);
    if (needs_sources)
        spec.ramp = RampConfig::interval(a, b, spec.params.a_in_max, spec.params.a_out_max);
    else
        spec.ramp = RampConfig::interval(ramp_given ? a : 0.0, ramp_given ? b : L, 0.0, 0.0);

    spec.validate();
    return spec;
}

}  // namespace

ScenarioSpec load_scenario(std::string_view config_text) {
    return parse_scenario(config_text, std::nullopt);
}

ScenarioSpec load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open config: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto spec = parse_scenario(buf.str(), path.has_parent_path()
                                              ? std::optional{path.parent_path()}
                                              : std::nullopt);
    if (spec.label == "scenario") spec.label = path.stem().string();
    return spec;
}

}  // namespace arz
