#ifndef SVIR_ADJOINT_HPP
#define SVIR_ADJOINT_HPP

#include "svir/control.hpp"
#include "svir/integrate.hpp"
#include "svir/model.hpp"

namespace svir {

struct CostBreakdown {
    double social = 0.0;
    double infection = 0.0;
    double vaccination = 0.0;
    double total = 0.0;
};

// c(u0) + c1*I + c2*u1^2*S.
double running_cost(const SvirState& state, double u0, double u1, const EconomicParams& econ);

// Running cost plus costate-weighted dynamics.
double hamiltonian(const SvirState& state, const Costate& costate, double u0, double u1,
                   const EpidemicParams& p, const EconomicParams& econ);

// -dH/d(S,V,I), evaluated analytically.
Costate costate_rhs(const SvirState& state, const Costate& costate, double u0, double u1,
                    const EpidemicParams& p, const EconomicParams& econ);

// Trapezoid quadrature of the three running-cost components on the shared grid.
CostBreakdown cost_functional(const Trajectory& traj, const ControlPath& controls,
                              const EconomicParams& econ);

} // namespace svir

#endif
