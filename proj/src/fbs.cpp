#include "svir/fbs.hpp"

#include <cmath>
#include <sstream>

namespace svir {

void FbsConfig::validate() const {
    if (!(smoothing_c >= 0.0 && smoothing_c < 1.0)) {
        throw std::invalid_argument("smoothing_c: must lie in [0, 1)");
    }
    if (max_iterations == 0) {
        throw std::invalid_argument("max_iterations: must be positive");
    }
}

FbsReport fbs_solve(const EpidemicParams& p, const EconomicParams& econ,
                    const ControlBounds& bounds, const TimeGrid& grid, const SvirState& x0,
                    const FbsConfig& cfg) {
    p.validate();
    econ.validate();
    bounds.validate();
    grid.validate();
    x0.validate();
    cfg.validate();

    const StateRhs state_rhs = [&p](const SvirState& x, double u0, double u1) {
        return svir_rhs(x, u0, u1, p);
    };
    const CostateRhs adj_rhs = [&p, &econ](const SvirState& x, const Costate& l, double u0,
                                           double u1) {
        return costate_rhs(x, l, u0, u1, p, econ);
    };

    ControlPath u = cfg.initial_controls ? *cfg.initial_controls
                                         : ControlPath::constant(grid, 0.0, 0.0);
    if (u.grid != grid) {
        throw std::invalid_argument("initial_controls: must share the solver grid");
    }

    auto evaluate = [&](const ControlPath& controls, std::size_t iter) {
        Trajectory traj;
        try {
            traj = rk4_forward(state_rhs, x0, controls, bounds, grid);
        } catch (const NumericalError& e) {
            std::ostringstream msg;
            msg << "fbs_solve: iteration " << iter << ": " << e.what();
            throw NumericalError(msg.str());
        }
        CostBreakdown cost = cost_functional(traj, controls, econ);
        if (!std::isfinite(cost.total)) {
            std::ostringstream msg;
            msg << "fbs_solve: non-finite cost at iteration " << iter;
            throw NumericalError(msg.str());
        }
        return std::pair{std::move(traj), cost};
    };

    auto [traj, cost] = evaluate(u, 0);

    FbsReport report;
    report.cost_trace.push_back(cost.total);
    report.best_controls = u;
    report.best_trajectory = traj;
    report.best_cost = cost;

    for (std::size_t n = 0; n < cfg.max_iterations; ++n) {
        const CostatePath costate = rk4_backward(adj_rhs, traj, u, bounds);

        ControlPath u_next = u;
        // First update replaces the guess wholesale; later updates keep a
        // geometrically shrinking share c^n of the previous iterate.
        const double w = (n == 0) ? 0.0 : std::pow(cfg.smoothing_c, static_cast<double>(n));
        for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
            const double v0 = optimal_u0(econ.social, traj.states[i], costate.samples[i],
                                         p.beta0, p.epsilon, bounds);
            const double v1 = optimal_u1(costate.samples[i], econ.c2, bounds);
            u_next.samples[i].u0 = (1.0 - w) * v0 + w * u.samples[i].u0;
            u_next.samples[i].u1 = (1.0 - w) * v1 + w * u.samples[i].u1;
        }

        auto [traj_next, cost_next] = evaluate(u_next, n + 1);
        report.cost_trace.push_back(cost_next.total);
        report.iterations_run = n + 1;

        if (cost_next.total < report.best_cost.total) {
            report.best_controls = u_next;
            report.best_trajectory = traj_next;
            report.best_cost = cost_next;
        }
        const bool worsened = cost_next.total > cost.total;
        const bool plateau =
            std::fabs(cost_next.total - cost.total) / std::max(1.0, cost.total) < 1e-9;

        u = std::move(u_next);
        traj = std::move(traj_next);
        cost = cost_next;
        if (worsened || plateau) {
            break;
        }
    }

    report.best_costate = rk4_backward(adj_rhs, report.best_trajectory, report.best_controls,
                                       bounds);
    return report;
}

} // namespace svir
