#include "svir/adjoint.hpp"

#include <stdexcept>

namespace svir {

double running_cost(const SvirState& state, double u0, double u1, const EconomicParams& econ) {
    return social_cost(econ.social, u0) + econ.c1 * state.i + econ.c2 * u1 * u1 * state.s;
}

double hamiltonian(const SvirState& state, const Costate& costate, double u0, double u1,
                   const EpidemicParams& p, const EconomicParams& econ) {
    const double beta = transmission_rate(p.beta0, u0);
    const double beta1 = p.epsilon * beta;
    const double ds = -beta * state.s * state.i - u1 * state.s + p.mu - p.mu * state.s;
    const double dv = u1 * state.s - beta1 * state.v * state.i - p.gamma1 * state.v -
                      p.mu * state.v;
    const double di = beta * state.s * state.i + beta1 * state.v * state.i -
                      p.gamma * state.i - p.mu * state.i;
    return running_cost(state, u0, u1, econ) + costate.l1 * ds + costate.l2 * dv +
           costate.l3 * di;
}

Costate costate_rhs(const SvirState& state, const Costate& costate, double u0, double u1,
                    const EpidemicParams& p, const EconomicParams& econ) {
    const double beta = transmission_rate(p.beta0, u0);
    const double eb = p.epsilon * beta;

    Costate d;
    d.l1 = (beta * state.i + u1 + p.mu) * costate.l1 - u1 * costate.l2 -
           beta * state.i * costate.l3 - econ.c2 * u1 * u1;
    d.l2 = (eb * state.i + p.gamma1 + p.mu) * costate.l2 - eb * state.i * costate.l3;
    d.l3 = beta * state.s * costate.l1 + eb * state.v * costate.l2 -
           (beta * state.s + eb * state.v - p.gamma - p.mu) * costate.l3 - econ.c1;
    return d;
}

CostBreakdown cost_functional(const Trajectory& traj, const ControlPath& controls,
                              const EconomicParams& econ) {
    if (traj.grid != controls.grid || traj.states.size() != controls.samples.size()) {
        throw std::invalid_argument("cost_functional: trajectory and controls must share the grid");
    }
    const std::size_t n = traj.grid.n_nodes();
    std::vector<double> social(n), infection(n), vaccination(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ControlSample& u = controls.samples[i];
        const SvirState& x = traj.states[i];
        social[i] = social_cost(econ.social, u.u0);
        infection[i] = econ.c1 * x.i;
        vaccination[i] = econ.c2 * u.u1 * u.u1 * x.s;
    }
    CostBreakdown out;
    out.social = trapezoid(traj.grid, social);
    out.infection = trapezoid(traj.grid, infection);
    out.vaccination = trapezoid(traj.grid, vaccination);
    out.total = out.social + out.infection + out.vaccination;
    return out;
}

} // namespace svir
