#ifndef SVIR_SCENARIOS_HPP
#define SVIR_SCENARIOS_HPP

#include <array>
#include <string>
#include <vector>

#include "svir/fbs.hpp"

namespace svir {

enum class Strategy {
    NoControlNoVax, // u == (0, 0)
    VaxOnly,        // u == (0, u1_max)
    FullControl,    // u == (u0_max, u1_max)
    Optimal,        // via fbs_solve
};

const char* strategy_name(Strategy s);

struct ScenarioResult {
    Strategy strategy = Strategy::NoControlNoVax;
    ControlPath controls;
    Trajectory trajectory;
    CostBreakdown cost;
    SvirState final_state;
    double r0 = 0.0; // with the basic-model rate alpha = u1_max
};

struct ScenarioInputs {
    EpidemicParams epidemic;
    EconomicParams economic;
    ControlBounds bounds;
    TimeGrid grid;
    SvirState x0;
    FbsConfig fbs;
};

ScenarioResult run_strategy(Strategy strategy, const ScenarioInputs& in);

// All four strategies, ordered none, vax, full, optimal.
std::array<ScenarioResult, 4> cost_table(const ScenarioInputs& in);

struct SweepEntry {
    double value = 0.0;
    bool ok = false;
    FbsReport report;   // valid when ok
    std::string error;  // set when a solve failed
};

// Independent optimal solves with one parameter overridden per value.
// Recognized names: c2, b, k, u1_max, u0_max, c1. Per-value failures are
// recorded in the entry without aborting the sweep.
std::vector<SweepEntry> sweep(const std::string& param, const std::vector<double>& values,
                              const ScenarioInputs& base);

} // namespace svir

#endif
