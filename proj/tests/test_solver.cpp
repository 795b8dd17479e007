#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "arz/analysis.hpp"
#include "arz/errors.hpp"
#include "arz/model.hpp"
#include "arz/scenario.hpp"
#include "arz/solver.hpp"

using namespace arz;

namespace {

const ModelParams table1{};

State uniform_state(double k, double v, const ModelParams& p) {
    const Grid g = Grid::from_params(p);
    State s;
    s.u1.assign(g.n_cells, 0.0);
    s.u2.assign(g.n_cells, 0.0);
    for (std::size_t i = 0; i < g.n_cells; ++i) {
        const Cons u = conserved_from_primitive(k, v, p);
        s.u1[i] = u.u1;
        s.u2[i] = u.u2;
    }
    return s;
}

State sine_state(const ModelParams& p, double base_f = 0.5, double amp_f = 0.05) {
    ScenarioSpec spec;
    spec.params = p;
    spec.ic = InitialCondition::sine(base_f, amp_f, 1);
    return build_initial_state(spec);
}

// Test-local reference MacCormack step, written straight from the two-stage
// formulas with its own flux arithmetic. No clamping, no smoothing.
void reference_maccormack_step(std::vector<double>& u1, std::vector<double>& u2,
                               const ModelParams& p, bool periodic) {
    const std::size_t n = u1.size();
    auto idx = [&](std::ptrdiff_t i) -> std::size_t {
        const auto sn = static_cast<std::ptrdiff_t>(n);
        if (periodic) return static_cast<std::size_t>((i + sn) % sn);
        if (i < 0) return 0;
        if (i >= sn) return n - 1;
        return static_cast<std::size_t>(i);
    };
    auto fluxes = [&](const std::vector<double>& a, const std::vector<double>& b,
                      std::vector<double>& f1, std::vector<double>& f2) {
        for (std::size_t i = 0; i < n; ++i) {
            const double pres = p.c0_sq * std::pow(a[i], p.gamma) - p.phi;
            const double v = b[i] / a[i] - pres;
            f1[i] = a[i] * v;
            f2[i] = v * b[i];
        }
    };

    std::vector<double> f1(n), f2(n), p1(n), p2(n), g1(n), g2(n);
    fluxes(u1, u2, f1, f2);
    const double lam = p.dt / p.dx;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = idx(static_cast<std::ptrdiff_t>(i) + 1);
        p1[i] = u1[i] - lam * (f1[ip] - f1[i]);
        p2[i] = u2[i] - lam * (f2[ip] - f2[i]);
    }
    fluxes(p1, p2, g1, g2);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t im = idx(static_cast<std::ptrdiff_t>(i) - 1);
        u1[i] = 0.5 * (p1[i] + u1[i]) - 0.5 * lam * (g1[i] - g1[im]);
        u2[i] = 0.5 * (p2[i] + u2[i]) - 0.5 * lam * (g2[i] - g2[im]);
    }
}

}  // namespace

TEST_CASE("cfl number") {
    ModelParams p = table1;

    const State fast = uniform_state(p.k_floor, 30.0, p);
    CHECK(cfl_number(fast, p) == doctest::Approx(1.0).epsilon(1e-9));

    const State rest = uniform_state(0.09, 0.0, p);
    CHECK(cfl_number(rest, p) == doctest::Approx(0.4).epsilon(1e-9));

    const State still = uniform_state(p.k_floor, 0.0, p);
    CHECK(cfl_number(still, p) < 1e-3);
}

TEST_CASE("predictor on uniform data") {
    ModelParams p = table1;
    p.source_case = SourceCase::Case1;
    const State eq = uniform_state(0.075, equilibrium_speed(0.075, p), p);

    const StageResult pred = predictor(eq, RampConfig::none(), p, BoundaryMode::ZeroGradient);
    for (std::size_t i = 0; i < eq.n(); ++i) {
        CHECK(pred.state.u1[i] == eq.u1[i]);  // fluxes telescope to zero exactly
        CHECK(pred.state.u2[i] == eq.u2[i]);
    }
    CHECK(pred.clamps.density == 0);
    CHECK(pred.clamps.velocity == 0);

    // with a whole-road ramp the only change is dt * A(k) per cell
    ModelParams p3 = p;
    p3.source_case = SourceCase::Case3;
    const RampConfig ramp = RampConfig::full_road(p3);
    const StageResult withsrc = predictor(eq, ramp, p3, BoundaryMode::ZeroGradient);
    const double a_of_k = source_strength(0.075, 0.003, 0.001, p3);
    for (std::size_t i = 0; i < eq.n(); ++i)
        CHECK(withsrc.state.u1[i] == eq.u1[i] + p3.dt * a_of_k);
}

TEST_CASE("predictor near the step of the ic1 datum matches a hand-coded cell update") {
    ModelParams p = table1;
    p.source_case = SourceCase::Case1;
    const State s = build_ic1(p);

    // cell 19 is the last left-block cell (center 585 m), cell 20 the first
    // right-block cell
    const double kL = 0.46 * p.k_jam, kR = 0.10 * p.k_jam;
    const double vL = 16.2, vR = 27.0;
    const double pL = 80.0 * std::sqrt(kL) - 31.9;
    const double pR = 80.0 * std::sqrt(kR) - 31.9;
    const double u2L = kL * (vL + pL), u2R = kR * (vR + pR);
    const double f1L = kL * vL, f1R = kR * vR;
    const double f2L = vL * u2L, f2R = vR * u2R;

    const double expect_u1 = kL - (p.dt / p.dx) * (f1R - f1L);
    const double expect_u2 = u2L - (p.dt / p.dx) * (f2R - f2L);
    CHECK(expect_u1 > kL);  // downstream outflow is smaller, the cell gains mass

    const StageResult pred = predictor(s, RampConfig::none(), p, BoundaryMode::ZeroGradient);
    CHECK(pred.state.u1[19] == doctest::Approx(expect_u1).epsilon(1e-12));
    CHECK(pred.state.u2[19] == doctest::Approx(expect_u2).epsilon(1e-12));
}

TEST_CASE("predictor reports blow-up as NonFiniteError") {
    ModelParams p = table1;
    p.dt = 1e308;  // overflows the flux difference immediately
    const State s = build_ic1(p);
    CHECK_THROWS_AS(predictor(s, RampConfig::none(), p, BoundaryMode::ZeroGradient),
                    NonFiniteError);
}

TEST_CASE("two-stage update matches an independent textbook implementation") {
    ModelParams p = table1;
    p.source_case = SourceCase::Case1;
    p.smoothing_weight = 0.0;
    const State s0 = sine_state(p);

    std::vector<double> ref1 = s0.u1, ref2 = s0.u2;
    reference_maccormack_step(ref1, ref2, p, true);

    const StageResult pred = predictor(s0, RampConfig::none(), p, BoundaryMode::Periodic);
    const StageResult corr =
        corrector(s0, pred.state, RampConfig::none(), p, BoundaryMode::Periodic);

    for (std::size_t i = 0; i < s0.n(); ++i) {
        CHECK(corr.state.u1[i] == doctest::Approx(ref1[i]).epsilon(1e-12));
        CHECK(corr.state.u2[i] == doctest::Approx(ref2[i]).epsilon(1e-12));
    }

    // the full advance with S = 0 agrees as well (smoothing inactive)
    const AdvanceResult adv = advance(s0, RampConfig::none(), p, BoundaryMode::Periodic);
    for (std::size_t i = 0; i < s0.n(); ++i)
        CHECK(adv.state.u1[i] == doctest::Approx(ref1[i]).epsilon(1e-12));
}

TEST_CASE("corrector keeps the uniform equilibrium fixed point") {
    ModelParams p = table1;
    p.source_case = SourceCase::Case1;
    const State eq = uniform_state(0.075, equilibrium_speed(0.075, p), p);
    const StageResult pred = predictor(eq, RampConfig::none(), p, BoundaryMode::ZeroGradient);
    const StageResult corr =
        corrector(eq, pred.state, RampConfig::none(), p, BoundaryMode::ZeroGradient);
    for (std::size_t i = 0; i < eq.n(); ++i) {
        CHECK(corr.state.u1[i] == eq.u1[i]);
        CHECK(corr.state.u2[i] == eq.u2[i]);
    }
}

TEST_CASE("scheme reduces to scalar advection when the pressure is flat and v is uniform") {
    ModelParams p = table1;
    p.source_case = SourceCase::Case1;
    p.smoothing_weight = 0.0;
    p.gamma = 0.0;
    p.c0_sq = 0.0;  // p(k) = -phi, constant; the momentum equation is slaved to k

    const Grid g = Grid::from_params(p);
    const double v0 = 10.0;
    State s;
    s.u1.resize(g.n_cells);
    s.u2.resize(g.n_cells);
    for (std::size_t i = 0; i < g.n_cells; ++i) {
        const double x = g.cell_center(i);
        const double k = 0.05 + 0.05 * std::exp(-std::pow((x - 600.0) / 150.0, 2));
        s.u1[i] = k;
        s.u2[i] = k * (v0 + pressure(k, p));
    }

    // closed-form two-stage update for k_t + v0 k_x = 0
    const double c = v0 * p.dt / p.dx;
    std::vector<double> kbar(g.n_cells), knext(g.n_cells);
    auto wrap = [&](std::ptrdiff_t i) {
        return static_cast<std::size_t>((i + static_cast<std::ptrdiff_t>(g.n_cells)) %
                                        static_cast<std::ptrdiff_t>(g.n_cells));
    };
    for (std::size_t i = 0; i < g.n_cells; ++i)
        kbar[i] = s.u1[i] - c * (s.u1[wrap(static_cast<std::ptrdiff_t>(i) + 1)] - s.u1[i]);
    for (std::size_t i = 0; i < g.n_cells; ++i)
        knext[i] = 0.5 * (s.u1[i] + kbar[i]) -
                   0.5 * c * (kbar[i] - kbar[wrap(static_cast<std::ptrdiff_t>(i) - 1)]);

    const AdvanceResult adv = advance(s, RampConfig::none(), p, BoundaryMode::Periodic);
    for (std::size_t i = 0; i < g.n_cells; ++i)
        CHECK(adv.state.u1[i] == doctest::Approx(knext[i]).epsilon(1e-12));
}

TEST_CASE("cd smoothing arithmetic") {
    ModelParams p = table1;
    State s;
    s.u1 = {1.0, 2.0, 3.0, 4.0, 5.0};
    s.u2 = {0.0, 2.0, 0.0, 2.0, 0.0};

    SUBCASE("S = 0 returns the input bit-identically") {
        p.smoothing_weight = 0.0;
        const State out = smooth_cd(s, p, BoundaryMode::ZeroGradient);
        for (std::size_t i = 0; i < s.n(); ++i) {
            CHECK(out.u1[i] == s.u1[i]);
            CHECK(out.u2[i] == s.u2[i]);
        }
    }

    SUBCASE("symmetric neighbors leave the midpoint, asymmetric pull it") {
        p.smoothing_weight = 0.01;
        const State out = smooth_cd(s, p, BoundaryMode::ZeroGradient);
        CHECK(out.u1[1] == doctest::Approx(2.0).epsilon(1e-15));  // (1+3)/2 = itself
        // cell 1 of u2 has neighbors (0, 2, 0): 0.99*2 + 0.01*0
        CHECK(out.u2[1] == doctest::Approx(1.98).epsilon(1e-14));
        // cell 2 of u2 has neighbors (2, 0, 2): 0.99*0 + 0.01*2
        CHECK(out.u2[2] == doctest::Approx(0.02).epsilon(1e-14));
        // edges untouched under ZeroGradient
        CHECK(out.u1[0] == s.u1[0]);
        CHECK(out.u1[4] == s.u1[4]);
    }

    SUBCASE("periodic smoothing conserves both component sums") {
        p.smoothing_weight = 0.37;
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> d(0.0, 1.0);
        State r;
        r.u1.resize(16);
        r.u2.resize(16);
        for (std::size_t i = 0; i < 16; ++i) {
            r.u1[i] = d(rng);
            r.u2[i] = d(rng) - 0.5;
        }
        const State out = smooth_cd(r, p, BoundaryMode::Periodic);
        double s1a = 0, s1b = 0, s2a = 0, s2b = 0;
        for (std::size_t i = 0; i < 16; ++i) {
            s1a += r.u1[i];
            s1b += out.u1[i];
            s2a += r.u2[i];
            s2b += out.u2[i];
        }
        CHECK(s1b == doctest::Approx(s1a).epsilon(1e-13));
        CHECK(s2b == doctest::Approx(s2a).epsilon(1e-13));
    }
}

TEST_CASE("boundary copies") {
    State s;
    s.u1 = {1.0, 2.0, 3.0, 4.0};
    s.u2 = {-1.0, -2.0, -3.0, -4.0};

    const State zg = apply_boundary(s, BoundaryMode::ZeroGradient);
    CHECK(zg.u1[0] == 2.0);
    CHECK(zg.u2[0] == -2.0);
    CHECK(zg.u1[3] == 3.0);
    CHECK(zg.u2[3] == -3.0);

    const State pe = apply_boundary(s, BoundaryMode::Periodic);
    for (std::size_t i = 0; i < s.n(); ++i) CHECK(pe.u1[i] == s.u1[i]);

    State uni;
    uni.u1 = {5.0, 5.0, 5.0, 5.0};
    uni.u2 = {1.0, 1.0, 1.0, 1.0};
    const State same = apply_boundary(uni, BoundaryMode::ZeroGradient);
    for (std::size_t i = 0; i < uni.n(); ++i) CHECK(same.u1[i] == uni.u1[i]);
}

TEST_CASE("uniform equilibrium survives 300 steps under case1 and case2") {
    for (const SourceCase sc : {SourceCase::Case1, SourceCase::Case2}) {
        ModelParams p = table1;
        p.source_case = sc;
        const double k0 = 0.075, v0 = equilibrium_speed(0.075, p);
        State s = uniform_state(k0, v0, p);
        const double u2_0 = s.u2[0];
        for (int step = 0; step < 300; ++step)
            s = advance(s, RampConfig::none(), p, BoundaryMode::ZeroGradient).state;
        for (std::size_t i = 0; i < s.n(); ++i) {
            CHECK(std::abs(s.u1[i] - k0) <= 1e-12 * k0);
            CHECK(std::abs(s.u2[i] - u2_0) <= 1e-12 * std::abs(u2_0));
        }
    }
}

TEST_CASE("cfl guard rejects dt = 2 before stepping") {
    ModelParams p = table1;
    p.dt = 2.0;
    const State fast = uniform_state(p.k_floor, 30.0, p);
    try {
        advance(fast, RampConfig::none(), p, BoundaryMode::ZeroGradient);
        FAIL("expected CflViolation");
    } catch (const CflViolation& e) {
        CHECK(e.cfl() == doctest::Approx(2.0).epsilon(1e-6));
    }

    // run() annotates the failing step
    try {
        run(fast, RampConfig::none(), p, BoundaryMode::ZeroGradient, 10.0);
        FAIL("expected CflViolation");
    } catch (const CflViolation& e) {
        CHECK(e.step() == 0);
    }
}

TEST_CASE("periodic case1 step conserves mass") {
    ModelParams p = table1;
    p.smoothing_weight = 0.0;
    p.source_case = SourceCase::Case1;
    const State s = sine_state(p, 0.5, 0.1);
    const double m0 = total_mass(s, p);
    const AdvanceResult adv = advance(s, RampConfig::none(), p, BoundaryMode::Periodic);
    CHECK(std::abs(total_mass(adv.state, p) - m0) <= 1e-12 * m0);
    CHECK(adv.audit.density_clamps == 0);
    CHECK(adv.audit.boundary_flux_mass == 0.0);
}

TEST_CASE("audit books the stage-weighted source mass") {
    ModelParams p = table1;
    p.smoothing_weight = 0.0;
    p.source_case = SourceCase::Case3;
    const RampConfig ramp = RampConfig::full_road(p);
    const State s = uniform_state(0.075, equilibrium_speed(0.075, p), p);

    const AdvanceResult adv = advance(s, ramp, p, BoundaryMode::Periodic);
    const double a_of_k = source_strength(0.075, 0.003, 0.001, p);
    const double expected =
        0.5 * p.dt * p.dx * a_of_k * static_cast<double>(s.n());  // corrector halves it
    CHECK(adv.audit.source_mass_injected == doctest::Approx(expected).epsilon(1e-12));
    CHECK(adv.audit.mass_after - adv.audit.mass_before ==
          doctest::Approx(expected).epsilon(1e-10));

    // the balanced variant samples the provisional state as well
    ModelParams pb = p;
    pb.source_in_corrector = true;
    const AdvanceResult badv = advance(s, ramp, pb, BoundaryMode::Periodic);
    CHECK(badv.audit.source_mass_injected > adv.audit.source_mass_injected);
}

TEST_CASE("record cadence arithmetic") {
    ModelParams p = table1;
    const State s = uniform_state(0.075, equilibrium_speed(0.075, p), p);

    const SimulationRecord r0 = run(s, RampConfig::none(), p, BoundaryMode::ZeroGradient, 0.0);
    CHECK(r0.snapshots.size() == 1);
    CHECK(r0.audits.empty());

    const SimulationRecord r1 =
        run(s, RampConfig::none(), p, BoundaryMode::ZeroGradient, 10.0, 3);
    CHECK(r1.snapshots.size() == 1 + 10 / 3);

    const SimulationRecord r2 =
        run(s, RampConfig::none(), p, BoundaryMode::ZeroGradient, 200.0, 1);
    CHECK(r2.snapshots.size() == 201);
    CHECK(r2.snapshots[100].t == doctest::Approx(100.0));
    CHECK(r2.snapshots[200].t == doctest::Approx(200.0));

    CHECK_THROWS_AS(run(s, RampConfig::none(), p, BoundaryMode::ZeroGradient, 10.5),
                    ValidationError);
}

TEST_CASE("ic1 total variation is non-increasing in the smoothing weight") {
    std::vector<double> tv;
    for (const double S : {0.0, 0.01, 0.05, 0.1}) {
        ModelParams p = table1;
        p.smoothing_weight = S;
        p.source_case = SourceCase::Case1;
        State s = build_ic1(p);
        for (int step = 0; step < 100; ++step)
            s = advance(s, RampConfig::none(), p, BoundaryMode::ZeroGradient).state;
        tv.push_back(total_variation(snapshot_state(s, p)));
    }
    for (std::size_t i = 0; i + 1 < tv.size(); ++i) CHECK(tv[i + 1] <= tv[i] * (1.0 + 1e-12));
}

TEST_CASE("advance composed of the public stages is bitwise identical at S = 0") {
    ModelParams p = table1;
    p.smoothing_weight = 0.0;
    p.source_case = SourceCase::Case1;

    State via_advance = build_ic1(p);
    State composed = build_ic1(p);
    for (int step = 0; step < 20; ++step) {
        via_advance = advance(via_advance, RampConfig::none(), p,
                              BoundaryMode::ZeroGradient).state;

        const StageResult pred =
            predictor(composed, RampConfig::none(), p, BoundaryMode::ZeroGradient);
        const StageResult corr =
            corrector(composed, pred.state, RampConfig::none(), p, BoundaryMode::ZeroGradient);
        composed = apply_boundary(corr.state, BoundaryMode::ZeroGradient);
    }
    for (std::size_t i = 0; i < via_advance.n(); ++i) {
        CHECK(via_advance.u1[i] == composed.u1[i]);
        CHECK(via_advance.u2[i] == composed.u2[i]);
    }
}
