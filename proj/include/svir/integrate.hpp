#ifndef SVIR_INTEGRATE_HPP
#define SVIR_INTEGRATE_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "svir/model.hpp"

namespace svir {

// Uniform grid t_i = i*h, i = 0..n_steps, h = t_end/n_steps.
struct TimeGrid {
    double t_end = 0.0;
    std::size_t n_steps = 0;

    double h() const { return t_end / static_cast<double>(n_steps); }
    std::size_t n_nodes() const { return n_steps + 1; }
    double node(std::size_t i) const { return static_cast<double>(i) * h(); }

    void validate() const;
    bool operator==(const TimeGrid& other) const = default;
};

struct ControlSample {
    double u0 = 0.0;
    double u1 = 0.0;
};

struct Trajectory {
    TimeGrid grid;
    std::vector<SvirState> states; // one per node
};

struct ControlPath {
    TimeGrid grid;
    std::vector<ControlSample> samples; // one per node

    static ControlPath constant(const TimeGrid& grid, double u0, double u1);
};

struct CostatePath {
    TimeGrid grid;
    std::vector<Costate> samples; // one per node; terminal node is (0,0,0)
};

using StateRhs = std::function<StateDerivative(const SvirState&, double u0, double u1)>;
using CostateRhs =
    std::function<Costate(const SvirState&, const Costate&, double u0, double u1)>;

// Linear interpolation between bracketing nodes, clamped to the given bounds.
ControlSample interp_control(const ControlPath& path, double t, const ControlBounds& bounds);

// Classical RK4 forward march; control evaluated at t, t+h/2, t+h.
// Compartments in (-1e-9, 0) are clamped to 0 after each step; a larger
// violation raises NumericalError naming the node.
Trajectory rk4_forward(const StateRhs& rhs, const SvirState& x0, const ControlPath& controls,
                       const ControlBounds& bounds, const TimeGrid& grid);

// RK4 from T down to 0 with step -h; terminal condition (0,0,0) held exactly.
// State and control along the march come from node lookup / linear interpolation.
CostatePath rk4_backward(const CostateRhs& rhs, const Trajectory& traj,
                         const ControlPath& controls, const ControlBounds& bounds);

// Composite trapezoid rule over the grid nodes.
double trapezoid(const TimeGrid& grid, const std::vector<double>& values);

} // namespace svir

#endif
