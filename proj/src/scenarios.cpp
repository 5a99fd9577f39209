#include "svir/scenarios.hpp"

#include <stdexcept>

namespace svir {

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::NoControlNoVax: return "none";
    case Strategy::VaxOnly: return "vax";
    case Strategy::FullControl: return "full";
    case Strategy::Optimal: return "optimal";
    }
    return "?";
}

ScenarioResult run_strategy(Strategy strategy, const ScenarioInputs& in) {
    in.epidemic.validate();
    in.economic.validate();
    in.bounds.validate();
    in.grid.validate();
    in.x0.validate();

    ScenarioResult out;
    out.strategy = strategy;

    if (strategy == Strategy::Optimal) {
        FbsReport report = fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0,
                                     in.fbs);
        out.controls = std::move(report.best_controls);
        out.trajectory = std::move(report.best_trajectory);
        out.cost = report.best_cost;
    } else {
        double u0 = 0.0, u1 = 0.0;
        switch (strategy) {
        case Strategy::NoControlNoVax: break;
        case Strategy::VaxOnly: u1 = in.bounds.u1_max; break;
        case Strategy::FullControl: u0 = in.bounds.u0_max; u1 = in.bounds.u1_max; break;
        case Strategy::Optimal: break;
        }
        out.controls = ControlPath::constant(in.grid, u0, u1);
        const StateRhs rhs = [&in](const SvirState& x, double a, double b) {
            return svir_rhs(x, a, b, in.epidemic);
        };
        out.trajectory = rk4_forward(rhs, in.x0, out.controls, in.bounds, in.grid);
        out.cost = cost_functional(out.trajectory, out.controls, in.economic);
    }

    out.final_state = out.trajectory.states.back();
    EpidemicParams basic = in.epidemic;
    basic.alpha = in.bounds.u1_max;
    out.r0 = r0_continuous(basic);
    return out;
}

std::array<ScenarioResult, 4> cost_table(const ScenarioInputs& in) {
    return {run_strategy(Strategy::NoControlNoVax, in), run_strategy(Strategy::VaxOnly, in),
            run_strategy(Strategy::FullControl, in), run_strategy(Strategy::Optimal, in)};
}

std::vector<SweepEntry> sweep(const std::string& param, const std::vector<double>& values,
                              const ScenarioInputs& base) {
    for (double v : values) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("values: sweep values must be positive");
        }
    }

    std::vector<SweepEntry> out;
    out.reserve(values.size());
    for (double v : values) {
        ScenarioInputs in = base;
        if (param == "c2") {
            in.economic.c2 = v;
        } else if (param == "c1") {
            in.economic.c1 = v;
        } else if (param == "b") {
            in.economic.social = QuadraticCost{v};
        } else if (param == "k") {
            in.economic.social = ExponentialCost{v};
        } else if (param == "u1_max") {
            in.bounds.u1_max = v;
        } else if (param == "u0_max") {
            in.bounds.u0_max = v;
        } else {
            throw std::invalid_argument("param: unknown sweep parameter '" + param + "'");
        }

        SweepEntry entry;
        entry.value = v;
        try {
            entry.report = fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0,
                                     in.fbs);
            entry.ok = true;
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace svir
