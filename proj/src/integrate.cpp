#include "svir/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace svir {

void TimeGrid::validate() const {
    if (!(t_end > 0.0)) {
        throw std::invalid_argument("t_end: must be strictly positive");
    }
    if (n_steps < 2) {
        throw std::invalid_argument("n_steps: must be at least 2");
    }
}

ControlPath ControlPath::constant(const TimeGrid& grid, double u0, double u1) {
    ControlPath path;
    path.grid = grid;
    path.samples.assign(grid.n_nodes(), ControlSample{u0, u1});
    return path;
}

namespace {

double clamp01(double x, double hi) { return std::clamp(x, 0.0, hi); }

SvirState axpy(const SvirState& x, double a, const StateDerivative& d) {
    return SvirState{x.s + a * d.ds, x.v + a * d.dv, x.i + a * d.di, x.r + a * d.dr};
}

Costate caxpy(const Costate& l, double a, const Costate& d) {
    return Costate{l.l1 + a * d.l1, l.l2 + a * d.l2, l.l3 + a * d.l3};
}

SvirState interp_state(const Trajectory& traj, double t) {
    const double h = traj.grid.h();
    const double pos = t / h;
    std::size_t k = static_cast<std::size_t>(std::max(0.0, std::floor(pos)));
    k = std::min(k, traj.grid.n_steps - 1);
    const double w = std::clamp(pos - static_cast<double>(k), 0.0, 1.0);
    const SvirState& a = traj.states[k];
    const SvirState& b = traj.states[k + 1];
    return SvirState{a.s + w * (b.s - a.s), a.v + w * (b.v - a.v), a.i + w * (b.i - a.i),
                     a.r + w * (b.r - a.r)};
}

void enforce_nonnegativity(SvirState& x, std::size_t node) {
    for (double* c : {&x.s, &x.v, &x.i, &x.r}) {
        if (*c < 0.0) {
            if (*c <= -1e-9) {
                std::ostringstream msg;
                msg << "rk4_forward: compartment " << *c << " below -1e-9 at node " << node;
                throw NumericalError(msg.str());
            }
            *c = 0.0;
        }
    }
}

} // namespace

ControlSample interp_control(const ControlPath& path, double t, const ControlBounds& bounds) {
    const double h = path.grid.h();
    const double span_tol = 1e-9 * std::max(1.0, path.grid.t_end);
    if (t < -span_tol || t > path.grid.t_end + span_tol) {
        throw std::invalid_argument("t: outside the grid span");
    }
    const double pos = std::clamp(t / h, 0.0, static_cast<double>(path.grid.n_steps));
    std::size_t k = static_cast<std::size_t>(std::floor(pos));
    k = std::min(k, path.grid.n_steps - 1);
    const double w = pos - static_cast<double>(k);
    const ControlSample& a = path.samples[k];
    const ControlSample& b = path.samples[k + 1];
    ControlSample out;
    out.u0 = clamp01(a.u0 + w * (b.u0 - a.u0), bounds.u0_max);
    out.u1 = clamp01(a.u1 + w * (b.u1 - a.u1), bounds.u1_max);
    return out;
}

Trajectory rk4_forward(const StateRhs& rhs, const SvirState& x0, const ControlPath& controls,
                       const ControlBounds& bounds, const TimeGrid& grid) {
    grid.validate();
    if (controls.grid != grid || controls.samples.size() != grid.n_nodes()) {
        throw std::invalid_argument("controls: must share the integration grid");
    }

    Trajectory traj;
    traj.grid = grid;
    traj.states.reserve(grid.n_nodes());
    traj.states.push_back(x0);

    const double h = grid.h();
    SvirState x = x0;
    for (std::size_t n = 0; n < grid.n_steps; ++n) {
        const double t = grid.node(n);
        const ControlSample ua = interp_control(controls, t, bounds);
        const ControlSample um = interp_control(controls, t + 0.5 * h, bounds);
        const ControlSample ub = interp_control(controls, t + h, bounds);

        const StateDerivative k1 = rhs(x, ua.u0, ua.u1);
        const StateDerivative k2 = rhs(axpy(x, 0.5 * h, k1), um.u0, um.u1);
        const StateDerivative k3 = rhs(axpy(x, 0.5 * h, k2), um.u0, um.u1);
        const StateDerivative k4 = rhs(axpy(x, h, k3), ub.u0, ub.u1);

        x.s += h / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds);
        x.v += h / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
        x.i += h / 6.0 * (k1.di + 2.0 * k2.di + 2.0 * k3.di + k4.di);
        x.r += h / 6.0 * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
        enforce_nonnegativity(x, n + 1);
        traj.states.push_back(x);
    }
    return traj;
}

CostatePath rk4_backward(const CostateRhs& rhs, const Trajectory& traj,
                         const ControlPath& controls, const ControlBounds& bounds) {
    const TimeGrid& grid = traj.grid;
    grid.validate();
    if (controls.grid != grid || traj.states.size() != grid.n_nodes() ||
        controls.samples.size() != grid.n_nodes()) {
        throw std::invalid_argument("rk4_backward: trajectory and controls must share the grid");
    }

    CostatePath path;
    path.grid = grid;
    path.samples.assign(grid.n_nodes(), Costate{});

    const double h = grid.h();
    Costate l{0.0, 0.0, 0.0}; // transversality
    for (std::size_t n = grid.n_steps; n-- > 0;) {
        const double t = grid.node(n + 1); // marching from t down to t-h
        const SvirState& xa = traj.states[n + 1];
        const SvirState xm = interp_state(traj, t - 0.5 * h);
        const SvirState& xb = traj.states[n];
        const ControlSample ua = interp_control(controls, t, bounds);
        const ControlSample um = interp_control(controls, t - 0.5 * h, bounds);
        const ControlSample ub = interp_control(controls, t - h, bounds);

        const Costate k1 = rhs(xa, l, ua.u0, ua.u1);
        const Costate k2 = rhs(xm, caxpy(l, -0.5 * h, k1), um.u0, um.u1);
        const Costate k3 = rhs(xm, caxpy(l, -0.5 * h, k2), um.u0, um.u1);
        const Costate k4 = rhs(xb, caxpy(l, -h, k3), ub.u0, ub.u1);

        l.l1 -= h / 6.0 * (k1.l1 + 2.0 * k2.l1 + 2.0 * k3.l1 + k4.l1);
        l.l2 -= h / 6.0 * (k1.l2 + 2.0 * k2.l2 + 2.0 * k3.l2 + k4.l2);
        l.l3 -= h / 6.0 * (k1.l3 + 2.0 * k2.l3 + 2.0 * k3.l3 + k4.l3);
        if (!std::isfinite(l.l1) || !std::isfinite(l.l2) || !std::isfinite(l.l3)) {
            std::ostringstream msg;
            msg << "rk4_backward: non-finite costate at node " << n;
            throw NumericalError(msg.str());
        }
        path.samples[n] = l;
    }
    return path;
}

double trapezoid(const TimeGrid& grid, const std::vector<double>& values) {
    if (values.size() != grid.n_nodes()) {
        throw std::invalid_argument("values: need exactly one value per grid node");
    }
    const double h = grid.h();
    double acc = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        acc += values[i];
    }
    return acc * h;
}

} // namespace svir
