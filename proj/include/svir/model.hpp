#ifndef SVIR_MODEL_HPP
#define SVIR_MODEL_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace svir {

// Thrown when an integration or root search leaves its validity envelope.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EpidemicParams {
    double beta0;   // baseline transmission rate (1/day)
    double gamma;   // infected recovery rate (1/day)
    double gamma1;  // vaccinee full-immunization rate (1/day)
    double epsilon; // vaccine ineffectiveness, beta1 = epsilon * beta
    double mu;      // birth-death rate (1/day)
    double alpha;   // constant vaccination rate of the basic model (1/day)

    void validate() const;
};

// Compartment fractions of a unit population.
struct SvirState {
    double s = 0.0;
    double v = 0.0;
    double i = 0.0;
    double r = 0.0;

    void validate() const;
};

struct ControlBounds {
    double u0_max = 1.0;
    double u1_max = 1.0;

    void validate() const;
};

// Rates of change; ds+dv+di+dr == 0 exactly by construction.
struct StateDerivative {
    double ds = 0.0;
    double dv = 0.0;
    double di = 0.0;
    double dr = 0.0;
};

// Shadow prices of S, V, I.
struct Costate {
    double l1 = 0.0;
    double l2 = 0.0;
    double l3 = 0.0;
};

// Controlled vector field with beta(u0) = beta0*(1-u0), beta1 = epsilon*beta(u0).
StateDerivative svir_rhs(const SvirState& x, double u0, double u1, const EpidemicParams& p);

// Uncontrolled vector field of the basic model (constant vaccination rate alpha).
StateDerivative basic_svir_rhs(const SvirState& x, const EpidemicParams& p);

// Basic reproduction number of the basic model.
double r0_continuous(const EpidemicParams& p);

// Stationary state with i = 0; always exists.
SvirState disease_free_equilibrium(const EpidemicParams& p);

// Stationary state with i > 0; present iff r0_continuous(p) > 1.
std::optional<SvirState> endemic_equilibrium(const EpidemicParams& p);

} // namespace svir

#endif
