#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "test_helpers.hpp"

using namespace svir;
using svir::testing::baseline_inputs;
using svir::testing::baseline_exp_inputs;

TEST_CASE("fbs_solve: degenerate horizon with negligible infection cost") {
    auto in = baseline_inputs();
    in.economic.c1 = 1e-12; // running cost is then essentially the control costs alone
    in.grid = TimeGrid{36.0, 360};
    const FbsReport report = fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0,
                                       in.fbs);
    CHECK(report.best_cost.total < 1e-10);
    for (const ControlSample& s : report.best_controls.samples) {
        CHECK(s.u0 <= 1e-6);
        CHECK(s.u1 <= 1e-6);
    }
}

TEST_CASE("fbs_solve: baseline quadratic optimum") {
    const auto in = baseline_inputs();
    const FbsReport report = fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0,
                                       in.fbs);
    CHECK(std::fabs(report.best_cost.total - 2.5362) / 2.5362 < 0.05);
    CHECK(report.iterations_run < in.fbs.max_iterations);

    // qualitative shape: restrictions start at the cap, vaccination pinned
    // at the cap on at least 70% of nodes
    CHECK(report.best_controls.samples.front().u0 >= 0.9 * in.bounds.u0_max);
    std::size_t pinned = 0;
    for (const ControlSample& s : report.best_controls.samples) {
        if (s.u1 >= 0.99 * in.bounds.u1_max) {
            ++pinned;
        }
    }
    CHECK(static_cast<double>(pinned) >=
          0.7 * static_cast<double>(report.best_controls.samples.size()));
}

TEST_CASE("fbs_solve: exponential model beats every benchmark") {
    const auto in = baseline_exp_inputs();
    const FbsReport report = fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0,
                                       in.fbs);
    for (const Strategy s :
         {Strategy::NoControlNoVax, Strategy::VaxOnly, Strategy::FullControl}) {
        CHECK(report.best_cost.total < run_strategy(s, in).cost.total);
    }
}

TEST_CASE("fbs_solve: cost trace decreases strictly until the stopping witness") {
    const auto in = baseline_inputs();
    const FbsReport report = fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0,
                                       in.fbs);
    REQUIRE(report.cost_trace.size() >= 2);
    for (std::size_t i = 0; i + 2 < report.cost_trace.size(); ++i) {
        CHECK(report.cost_trace[i] > report.cost_trace[i + 1]);
    }
    CHECK(report.best_cost.total ==
          *std::min_element(report.cost_trace.begin(), report.cost_trace.end()));
    for (double j : report.cost_trace) {
        CHECK(std::isfinite(j));
    }
}

TEST_CASE("fbs_solve: bounds respected at every node") {
    const auto in = baseline_inputs();
    const FbsReport report = fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0,
                                       in.fbs);
    for (const ControlSample& s : report.best_controls.samples) {
        CHECK(s.u0 >= 0.0);
        CHECK(s.u0 <= in.bounds.u0_max);
        CHECK(s.u1 >= 0.0);
        CHECK(s.u1 <= in.bounds.u1_max);
    }
}

TEST_CASE("fbs_solve: deterministic, bit-identical reruns") {
    const auto in = baseline_inputs();
    const FbsReport a = fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0, in.fbs);
    const FbsReport b = fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0, in.fbs);
    REQUIRE(a.cost_trace.size() == b.cost_trace.size());
    for (std::size_t i = 0; i < a.cost_trace.size(); ++i) {
        CHECK(a.cost_trace[i] == b.cost_trace[i]);
    }
    CHECK(a.best_cost.total == b.best_cost.total);
    for (std::size_t i = 0; i < a.best_controls.samples.size(); ++i) {
        CHECK(a.best_controls.samples[i].u0 == b.best_controls.samples[i].u0);
        CHECK(a.best_controls.samples[i].u1 == b.best_controls.samples[i].u1);
    }
}

TEST_CASE("fbs_solve: starting point does not matter on the baseline") {
    auto in = baseline_inputs();
    const FbsReport from_zero = fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0,
                                          in.fbs);
    in.fbs.initial_controls =
        ControlPath::constant(in.grid, in.bounds.u0_max, in.bounds.u1_max);
    const FbsReport from_full = fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0,
                                          in.fbs);
    CHECK(std::fabs(from_zero.best_cost.total - from_full.best_cost.total) /
              from_zero.best_cost.total <
          0.01);
}

TEST_CASE("fbs_solve: transversality and costate consistency of the report") {
    const auto in = baseline_inputs();
    const FbsReport report = fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0,
                                       in.fbs);
    const Costate& terminal = report.best_costate.samples.back();
    CHECK(terminal.l1 == 0.0);
    CHECK(terminal.l2 == 0.0);
    CHECK(terminal.l3 == 0.0);
    CHECK(report.best_costate.samples.size() == in.grid.n_nodes());
    CHECK(report.best_trajectory.states.size() == in.grid.n_nodes());
}

TEST_CASE("fbs config and input validation") {
    const auto in = baseline_inputs();
    FbsConfig bad;
    bad.smoothing_c = 1.0;
    CHECK_THROWS_AS(fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0, bad),
                    std::invalid_argument);
    bad = FbsConfig{};
    bad.max_iterations = 0;
    CHECK_THROWS_AS(fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0, bad),
                    std::invalid_argument);
    bad = FbsConfig{};
    bad.initial_controls = ControlPath::constant(TimeGrid{360.0, 1800}, 0.0, 0.0);
    CHECK_THROWS_AS(fbs_solve(in.epidemic, in.economic, in.bounds, in.grid, in.x0, bad),
                    std::invalid_argument);
}
