#ifndef SVIR_CONTROL_HPP
#define SVIR_CONTROL_HPP

#include <variant>

#include "svir/model.hpp"

namespace svir {

struct QuadraticCost {
    double b; // weight of b*u0^2
};

struct ExponentialCost {
    double k; // exponent scale of e^{k*u0} - 1
};

using SocialCostModel = std::variant<QuadraticCost, ExponentialCost>;

struct EconomicParams {
    double c1; // infection cost weight
    double c2; // vaccination cost weight
    SocialCostModel social;

    void validate() const;
};

// beta(u0) = beta0 * (1 - u0).
double transmission_rate(double beta0, double u0);

// Running cost of social restrictions; zero at u0 = 0, convex increasing.
double social_cost(const SocialCostModel& model, double u0);

// Derivative of the social cost in u0.
double social_cost_deriv(const SocialCostModel& model, double u0);

// K = S*(l3 - l1) + epsilon*V*(l3 - l2), the switching coefficient of u0.
double switching_K(const SvirState& state, const Costate& costate, double epsilon);

// Pointwise Hamiltonian minimizer in u0, clamped to [0, u0_max].
double optimal_u0(const SocialCostModel& model, const SvirState& state, const Costate& costate,
                  double beta0, double epsilon, const ControlBounds& bounds);

// Pointwise Hamiltonian minimizer in u1: clamp((l1 - l2) / (2*c2), 0, u1_max).
double optimal_u1(const Costate& costate, double c2, const ControlBounds& bounds);

} // namespace svir

#endif
