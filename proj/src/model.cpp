#include "svir/model.hpp"

#include <cmath>
#include <sstream>

namespace svir {

namespace {

void require(bool cond, const std::string& field, const std::string& what) {
    if (!cond) {
        throw std::invalid_argument(field + ": " + what);
    }
}

} // namespace

void EpidemicParams::validate() const {
    require(std::isfinite(beta0) && beta0 > 0.0, "beta0", "must be strictly positive");
    require(std::isfinite(gamma) && gamma > 0.0, "gamma", "must be strictly positive");
    require(std::isfinite(gamma1) && gamma1 > 0.0, "gamma1", "must be strictly positive");
    require(std::isfinite(mu) && mu > 0.0, "mu", "must be strictly positive");
    require(std::isfinite(alpha) && alpha >= 0.0, "alpha", "must be nonnegative");
    require(std::isfinite(epsilon) && epsilon >= 0.0 && epsilon <= 1.0, "epsilon",
            "must lie in [0, 1]");
}

void SvirState::validate() const {
    const double tol = 1e-9;
    require(s >= -tol, "s", "compartment fraction must be nonnegative");
    require(v >= -tol, "v", "compartment fraction must be nonnegative");
    require(i >= -tol, "i", "compartment fraction must be nonnegative");
    require(r >= -tol, "r", "compartment fraction must be nonnegative");
    require(std::fabs(s + v + i + r - 1.0) <= tol, "state",
            "compartment fractions must sum to 1");
}

void ControlBounds::validate() const {
    require(u0_max > 0.0 && u0_max <= 1.0, "u0_max", "must lie in (0, 1]");
    require(u1_max > 0.0 && u1_max <= 1.0, "u1_max", "must lie in (0, 1]");
}

StateDerivative svir_rhs(const SvirState& x, double u0, double u1, const EpidemicParams& p) {
    if (!(u0 >= 0.0 && u0 <= 1.0)) {
        throw std::invalid_argument("u0: control outside [0, 1]");
    }
    if (!(u1 >= 0.0 && u1 <= 1.0)) {
        throw std::invalid_argument("u1: control outside [0, 1]");
    }
    const double beta = p.beta0 * (1.0 - u0);
    const double beta1 = p.epsilon * beta;

    StateDerivative d;
    d.ds = -beta * x.s * x.i - u1 * x.s + p.mu - p.mu * x.s;
    d.dv = u1 * x.s - beta1 * x.v * x.i - p.gamma1 * x.v - p.mu * x.v;
    d.di = beta * x.s * x.i + beta1 * x.v * x.i - p.gamma * x.i - p.mu * x.i;
    // Conservation holds exactly: N == 1 turns the analytic dr into -(ds+dv+di).
    d.dr = -(d.ds + d.dv + d.di);
    return d;
}

StateDerivative basic_svir_rhs(const SvirState& x, const EpidemicParams& p) {
    const double beta = p.beta0;
    const double beta1 = p.epsilon * beta;

    StateDerivative d;
    d.ds = -beta * x.s * x.i - p.alpha * x.s + p.mu - p.mu * x.s;
    d.dv = p.alpha * x.s - beta1 * x.v * x.i - p.gamma1 * x.v - p.mu * x.v;
    d.di = beta * x.s * x.i + beta1 * x.v * x.i - p.gamma * x.i - p.mu * x.i;
    d.dr = -(d.ds + d.dv + d.di);
    return d;
}

double r0_continuous(const EpidemicParams& p) {
    p.validate();
    const double beta = p.beta0;
    const double beta1 = p.epsilon * beta;
    const double first = p.mu * beta / ((p.mu + p.alpha) * (p.mu + p.gamma));
    const double second = p.alpha * p.mu * beta1 /
                          ((p.mu + p.gamma1) * (p.mu + p.alpha) * (p.mu + p.gamma));
    return first + second;
}

SvirState disease_free_equilibrium(const EpidemicParams& p) {
    p.validate();
    SvirState e;
    e.s = p.mu / (p.mu + p.alpha);
    e.v = p.alpha * e.s / (p.gamma1 + p.mu);
    e.i = 0.0;
    e.r = 1.0 - e.s - e.v;
    return e;
}

namespace {

// Stationary S and V as functions of I, eliminated from the basic system.
double stationary_s(double i, const EpidemicParams& p) {
    return p.mu / (p.beta0 * i + p.alpha + p.mu);
}

double stationary_v(double i, const EpidemicParams& p) {
    const double beta1 = p.epsilon * p.beta0;
    return p.alpha * stationary_s(i, p) / (beta1 * i + p.gamma1 + p.mu);
}

// di/dt / I at the eliminated stationary point; root in I locates E+.
double infection_balance(double i, const EpidemicParams& p) {
    const double beta1 = p.epsilon * p.beta0;
    return p.beta0 * stationary_s(i, p) + beta1 * stationary_v(i, p) - (p.gamma + p.mu);
}

} // namespace

std::optional<SvirState> endemic_equilibrium(const EpidemicParams& p) {
    p.validate();
    if (r0_continuous(p) <= 1.0) {
        return std::nullopt;
    }

    double lo = 0.0;
    double hi = 1.0;
    double flo = infection_balance(lo, p);
    double fhi = infection_balance(hi, p);
    if (!(flo > 0.0) || !(fhi < 0.0)) {
        std::ostringstream msg;
        msg << "endemic_equilibrium: root bracket failed, f(0)=" << flo << " f(1)=" << fhi;
        throw NumericalError(msg.str());
    }
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        if (infection_balance(mid, p) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double i = 0.5 * (lo + hi);

    SvirState e;
    e.s = stationary_s(i, p);
    e.v = stationary_v(i, p);
    e.i = i;
    e.r = 1.0 - e.s - e.v - e.i;

    const StateDerivative d = basic_svir_rhs(e, p);
    const double residual = std::max(std::max(std::fabs(d.ds), std::fabs(d.dv)),
                                     std::max(std::fabs(d.di), std::fabs(d.dr)));
    if (residual >= 1e-10) {
        std::ostringstream msg;
        msg << "endemic_equilibrium: residual " << residual << " exceeds 1e-10";
        throw NumericalError(msg.str());
    }
    return e;
}

} // namespace svir
