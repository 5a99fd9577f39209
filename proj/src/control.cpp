#include "svir/control.hpp"

#include <algorithm>
#include <cmath>

namespace svir {

void EconomicParams::validate() const {
    if (!(c1 > 0.0)) {
        throw std::invalid_argument("c1: must be strictly positive");
    }
    if (!(c2 > 0.0)) {
        throw std::invalid_argument("c2: must be strictly positive");
    }
    if (const auto* q = std::get_if<QuadraticCost>(&social)) {
        if (!(q->b > 0.0)) {
            throw std::invalid_argument("b: must be strictly positive");
        }
    } else {
        const auto& e = std::get<ExponentialCost>(social);
        if (!(e.k > 0.0)) {
            throw std::invalid_argument("k: must be strictly positive");
        }
    }
}

double transmission_rate(double beta0, double u0) { return beta0 * (1.0 - u0); }

double social_cost(const SocialCostModel& model, double u0) {
    if (const auto* q = std::get_if<QuadraticCost>(&model)) {
        return q->b * u0 * u0;
    }
    const auto& e = std::get<ExponentialCost>(model);
    return std::expm1(e.k * u0);
}

double social_cost_deriv(const SocialCostModel& model, double u0) {
    if (const auto* q = std::get_if<QuadraticCost>(&model)) {
        return 2.0 * q->b * u0;
    }
    const auto& e = std::get<ExponentialCost>(model);
    return e.k * std::exp(e.k * u0);
}

double switching_K(const SvirState& state, const Costate& costate, double epsilon) {
    return state.s * (costate.l3 - costate.l1) +
           epsilon * state.v * (costate.l3 - costate.l2);
}

double optimal_u0(const SocialCostModel& model, const SvirState& state, const Costate& costate,
                  double beta0, double epsilon, const ControlBounds& bounds) {
    const double pressure = beta0 * state.i * switching_K(state, costate, epsilon);
    if (const auto* q = std::get_if<QuadraticCost>(&model)) {
        return std::clamp(pressure / (2.0 * q->b), 0.0, bounds.u0_max);
    }
    const auto& e = std::get<ExponentialCost>(model);
    // Hamiltonian is nondecreasing in u0 when the pressure is nonpositive.
    if (pressure <= 0.0) {
        return 0.0;
    }
    return std::clamp(std::log(pressure / e.k) / e.k, 0.0, bounds.u0_max);
}

double optimal_u1(const Costate& costate, double c2, const ControlBounds& bounds) {
    return std::clamp((costate.l1 - costate.l2) / (2.0 * c2), 0.0, bounds.u1_max);
}

} // namespace svir
