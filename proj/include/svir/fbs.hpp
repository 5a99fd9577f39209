#ifndef SVIR_FBS_HPP
#define SVIR_FBS_HPP

#include <optional>
#include <vector>

#include "svir/adjoint.hpp"

namespace svir {

struct FbsConfig {
    double smoothing_c = 0.99;      // geometric averaging constant, in [0, 1)
    std::size_t max_iterations = 500;
    std::optional<ControlPath> initial_controls; // default: all-zero

    void validate() const;
};

struct FbsReport {
    std::size_t iterations_run = 0;
    std::vector<double> cost_trace; // J per iterate, starting with the initial guess
    ControlPath best_controls;
    Trajectory best_trajectory;
    CostatePath best_costate;
    CostBreakdown best_cost;
};

// Forward-Backward Sweep: forward state solve, backward costate solve,
// pointwise control update with geometric smoothing, stop at the first
// cost increase (or plateau / iteration cap). Returns the best iterate.
FbsReport fbs_solve(const EpidemicParams& p, const EconomicParams& econ,
                    const ControlBounds& bounds, const TimeGrid& grid, const SvirState& x0,
                    const FbsConfig& cfg);

} // namespace svir

#endif
