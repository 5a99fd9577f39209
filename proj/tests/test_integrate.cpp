#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"

using namespace svir;
using svir::testing::baseline_inputs;
using svir::testing::make_costate_rhs;
using svir::testing::make_state_rhs;

namespace {

// x' = -x hidden in the S slot, mass shuffled to R to keep states valid.
const StateRhs decay_rhs = [](const SvirState& x, double, double) {
    StateDerivative d;
    d.ds = -x.s;
    d.dr = x.s;
    return d;
};

double decay_endpoint(const TimeGrid& grid) {
    const SvirState x0{1.0, 0.0, 0.0, 0.0};
    const Trajectory traj = rk4_forward(decay_rhs, x0, ControlPath::constant(grid, 0.0, 0.0),
                                        ControlBounds{1.0, 1.0}, grid);
    return traj.states.back().s;
}

SvirState interp_state(const Trajectory& traj, double t) {
    const TimeGrid& g = traj.grid;
    const double pos = t / g.h();
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= g.n_steps) {
        return traj.states.back();
    }
    const double f = pos - static_cast<double>(i);
    const SvirState& a = traj.states[i];
    const SvirState& b = traj.states[i + 1];
    return SvirState{a.s + (b.s - a.s) * f, a.v + (b.v - a.v) * f, a.i + (b.i - a.i) * f,
                     a.r + (b.r - a.r) * f};
}

} // namespace

TEST_CASE("TimeGrid: validation and node layout") {
    CHECK_THROWS_AS((TimeGrid{0.0, 10}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((TimeGrid{1.0, 1}.validate()), std::invalid_argument);
    const TimeGrid g{360.0, 3600};
    g.validate();
    CHECK(g.h() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(g.n_nodes() == 3601);
    CHECK(g.node(0) == 0.0);
    CHECK(g.node(3600) == doctest::Approx(360.0).epsilon(1e-15));
}

TEST_CASE("interp_control: node identity, constancy, midpoint") {
    const TimeGrid g{1.0, 2};
    const ControlBounds bounds{1.0, 0.006};
    ControlPath path = ControlPath::constant(g, 0.25, 0.0);
    path.samples[1].u1 = 0.006;
    // node identity
    CHECK(interp_control(path, 0.5, bounds).u1 == 0.006);
    // midpoint of samples 0 and 0.006
    CHECK(interp_control(path, 0.25, bounds).u1 == doctest::Approx(0.003).epsilon(1e-15));
    // constant component stays constant
    CHECK(interp_control(path, 0.37, bounds).u0 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(interp_control(path, -0.1, bounds), std::invalid_argument);
    CHECK_THROWS_AS(interp_control(path, 1.1, bounds), std::invalid_argument);
}

TEST_CASE("rk4_forward: scalar decay problem hits e^{-1}") {
    const double end = decay_endpoint(TimeGrid{1.0, 10});
    CHECK(std::fabs(end - std::exp(-1.0)) < 1e-6);
}

TEST_CASE("rk4_forward: fourth-order convergence on the decay problem") {
    const double exact = std::exp(-1.0);
    const double err_h = std::fabs(decay_endpoint(TimeGrid{1.0, 10}) - exact);
    const double err_h2 = std::fabs(decay_endpoint(TimeGrid{1.0, 20}) - exact);
    const double ratio = err_h / err_h2;
    CHECK(ratio >= 14.0);
    CHECK(ratio <= 18.0);
}

TEST_CASE("rk4_forward: baseline run conserves mass and peaks in I") {
    const auto in = baseline_inputs();
    const Trajectory traj = rk4_forward(make_state_rhs(in), in.x0,
                                        ControlPath::constant(in.grid, 0.0, 0.0), in.bounds,
                                        in.grid);
    double max_drift = 0.0;
    double min_comp = 1.0;
    std::size_t peak = 0;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const SvirState& x = traj.states[i];
        max_drift = std::max(max_drift, std::fabs(x.s + x.v + x.i + x.r - 1.0));
        min_comp = std::min({min_comp, x.s, x.v, x.i, x.r});
        if (x.i > traj.states[peak].i) {
            peak = i;
        }
    }
    CHECK(max_drift < 1e-9);
    CHECK(min_comp > -1e-9);
    CHECK(traj.states[peak].i > in.x0.i);
    CHECK(peak > 0);
    CHECK(peak < traj.states.size() - 1);
    CHECK(traj.states.back().i < traj.states[peak].i);
}

TEST_CASE("rk4_forward: rejects controls on a different grid") {
    const auto in = baseline_inputs();
    const ControlPath other = ControlPath::constant(TimeGrid{360.0, 1800}, 0.0, 0.0);
    CHECK_THROWS_AS(rk4_forward(make_state_rhs(in), in.x0, other, in.bounds, in.grid),
                    std::invalid_argument);
}

TEST_CASE("rk4_backward: homogeneous system with zero terminal stays zero") {
    const auto in = baseline_inputs();
    const Trajectory traj = rk4_forward(make_state_rhs(in), in.x0,
                                        ControlPath::constant(in.grid, 0.0, 0.0), in.bounds,
                                        in.grid);
    const CostateRhs rhs = [](const SvirState&, const Costate& l, double, double) {
        return Costate{-l.l1, -l.l2, -l.l3};
    };
    const CostatePath lam =
        rk4_backward(rhs, traj, ControlPath::constant(in.grid, 0.0, 0.0), in.bounds);
    for (const Costate& l : lam.samples) {
        CHECK(l.l1 == 0.0);
        CHECK(l.l2 == 0.0);
        CHECK(l.l3 == 0.0);
    }
    CHECK(lam.samples.back().l1 == 0.0);
}

TEST_CASE("rk4_backward: lambda2 vanishes identically when epsilon = 0") {
    auto in = baseline_inputs();
    in.epidemic.epsilon = 0.0;
    const ControlPath u = ControlPath::constant(in.grid, 0.3, in.bounds.u1_max);
    const Trajectory traj = rk4_forward(make_state_rhs(in), in.x0, u, in.bounds, in.grid);
    const CostatePath lam = rk4_backward(make_costate_rhs(in), traj, u, in.bounds);
    for (const Costate& l : lam.samples) {
        CHECK(l.l2 == 0.0);
    }
}

TEST_CASE("rk4_backward: forward re-integration returns to the zero terminal") {
    // Short enough that the forward-in-time instability of the costate system
    // cannot amplify truncation error past the tolerance.
    auto in = baseline_inputs();
    in.grid = TimeGrid{120.0, 1200};
    const ControlPath u = ControlPath::constant(in.grid, 0.0, in.bounds.u1_max);
    const Trajectory traj = rk4_forward(make_state_rhs(in), in.x0, u, in.bounds, in.grid);
    const CostateRhs rhs = make_costate_rhs(in);
    const CostatePath lam = rk4_backward(rhs, traj, u, in.bounds);

    Costate y = lam.samples.front();
    const double h = in.grid.h();
    for (std::size_t i = 0; i < in.grid.n_steps; ++i) {
        const double t = in.grid.node(i);
        const ControlSample ua = interp_control(u, t, in.bounds);
        const ControlSample um = interp_control(u, t + h / 2, in.bounds);
        const ControlSample ub = interp_control(u, t + h, in.bounds);
        const SvirState xa = traj.states[i];
        const SvirState xm = interp_state(traj, t + h / 2);
        const SvirState xb = traj.states[i + 1];
        const Costate k1 = rhs(xa, y, ua.u0, ua.u1);
        const Costate k2 = rhs(
            xm, Costate{y.l1 + h / 2 * k1.l1, y.l2 + h / 2 * k1.l2, y.l3 + h / 2 * k1.l3},
            um.u0, um.u1);
        const Costate k3 = rhs(
            xm, Costate{y.l1 + h / 2 * k2.l1, y.l2 + h / 2 * k2.l2, y.l3 + h / 2 * k2.l3},
            um.u0, um.u1);
        const Costate k4 =
            rhs(xb, Costate{y.l1 + h * k3.l1, y.l2 + h * k3.l2, y.l3 + h * k3.l3}, ub.u0,
                ub.u1);
        y = Costate{y.l1 + h / 6 * (k1.l1 + 2 * k2.l1 + 2 * k3.l1 + k4.l1),
                    y.l2 + h / 6 * (k1.l2 + 2 * k2.l2 + 2 * k3.l2 + k4.l2),
                    y.l3 + h / 6 * (k1.l3 + 2 * k2.l3 + 2 * k3.l3 + k4.l3)};
    }
    CHECK(std::fabs(y.l1) < 1e-8);
    CHECK(std::fabs(y.l2) < 1e-8);
    CHECK(std::fabs(y.l3) < 1e-8);
}

TEST_CASE("trapezoid: exactness and contracts") {
    const TimeGrid g{360.0, 3600};
    CHECK(trapezoid(g, std::vector<double>(g.n_nodes(), 0.04)) ==
          doctest::Approx(14.4).epsilon(1e-12));

    const TimeGrid unit{1.0, 10};
    std::vector<double> linear(unit.n_nodes());
    for (std::size_t i = 0; i < linear.size(); ++i) {
        linear[i] = unit.node(i);
    }
    CHECK(trapezoid(unit, linear) == doctest::Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(trapezoid(unit, std::vector<double>(3, 1.0)), std::invalid_argument);

    // homogeneity of degree 1
    std::vector<double> doubled = linear;
    for (double& v : doubled) {
        v *= 2.0;
    }
    CHECK(trapezoid(unit, doubled) == doctest::Approx(2.0 * trapezoid(unit, linear)));

    // additivity over concatenation: [0,1] in 10 steps equals [0,0.5]+[0.5,1]
    const TimeGrid half{0.5, 5};
    std::vector<double> lo(linear.begin(), linear.begin() + 6);
    std::vector<double> hi(linear.begin() + 5, linear.end());
    CHECK(trapezoid(half, lo) + trapezoid(half, hi) ==
          doctest::Approx(trapezoid(unit, linear)).epsilon(1e-15));
}
