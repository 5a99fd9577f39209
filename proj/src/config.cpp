#include "svir/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace svir {

namespace {

using nlohmann::json;

double get_number(const json& obj, const std::string& scope, const std::string& key) {
    if (!obj.contains(key)) {
        throw std::invalid_argument(scope + "." + key + ": missing required field");
    }
    if (!obj[key].is_number()) {
        throw std::invalid_argument(scope + "." + key + ": expected a number");
    }
    return obj[key].get<double>();
}

const json& get_object(const json& root, const std::string& key) {
    if (!root.contains(key)) {
        throw std::invalid_argument(key + ": missing required section");
    }
    if (!root[key].is_object()) {
        throw std::invalid_argument(key + ": expected an object");
    }
    return root[key];
}

} // namespace

void ExperimentConfig::validate() const {
    inputs.epidemic.validate();
    inputs.economic.validate();
    inputs.bounds.validate();
    inputs.grid.validate();
    inputs.x0.validate();
    inputs.fbs.validate();
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }

    if (get_number(root, "config", "schema_version") != 1.0) {
        throw std::invalid_argument("schema_version: unsupported value, expected 1");
    }

    ExperimentConfig cfg;

    const json& epi = get_object(root, "epidemic");
    cfg.inputs.epidemic.beta0 = get_number(epi, "epidemic", "beta0");
    cfg.inputs.epidemic.gamma = get_number(epi, "epidemic", "gamma");
    cfg.inputs.epidemic.gamma1 = get_number(epi, "epidemic", "gamma1");
    cfg.inputs.epidemic.epsilon = get_number(epi, "epidemic", "epsilon");
    cfg.inputs.epidemic.mu = get_number(epi, "epidemic", "mu");

    const json& bounds = get_object(root, "bounds");
    cfg.inputs.bounds.u0_max = get_number(bounds, "bounds", "u0_max");
    cfg.inputs.bounds.u1_max = get_number(bounds, "bounds", "u1_max");

    // The basic-model vaccination rate defaults to the control cap, which is
    // what the reported reproduction number uses.
    cfg.inputs.epidemic.alpha = epi.contains("alpha") ? get_number(epi, "epidemic", "alpha")
                                                      : cfg.inputs.bounds.u1_max;

    const json& econ = get_object(root, "economic");
    cfg.inputs.economic.c1 = get_number(econ, "economic", "c1");
    cfg.inputs.economic.c2 = get_number(econ, "economic", "c2");
    const json& social = get_object(econ, "social_cost");
    if (!social.contains("model") || !social["model"].is_string()) {
        throw std::invalid_argument("economic.social_cost.model: expected a string");
    }
    const std::string model = social["model"].get<std::string>();
    if (model == "quadratic") {
        cfg.inputs.economic.social = QuadraticCost{get_number(social, "social_cost", "b")};
    } else if (model == "exponential") {
        cfg.inputs.economic.social = ExponentialCost{get_number(social, "social_cost", "k")};
    } else {
        throw std::invalid_argument(
            "economic.social_cost.model: must be 'quadratic' or 'exponential'");
    }

    const json& grid = get_object(root, "grid");
    cfg.inputs.grid.t_end = get_number(grid, "grid", "t_end");
    if (grid.contains("n_steps")) {
        const double n = get_number(grid, "grid", "n_steps");
        if (n < 2.0 || n != std::floor(n)) {
            throw std::invalid_argument("grid.n_steps: expected an integer >= 2");
        }
        cfg.inputs.grid.n_steps = static_cast<std::size_t>(n);
    } else if (grid.contains("h")) {
        const double h = get_number(grid, "grid", "h");
        if (!(h > 0.0)) {
            throw std::invalid_argument("grid.h: must be strictly positive");
        }
        cfg.inputs.grid.n_steps =
            static_cast<std::size_t>(std::llround(cfg.inputs.grid.t_end / h));
    } else {
        throw std::invalid_argument("grid: needs either n_steps or h");
    }

    const json& x0 = get_object(root, "initial_state");
    cfg.inputs.x0.s = get_number(x0, "initial_state", "s");
    cfg.inputs.x0.v = get_number(x0, "initial_state", "v");
    cfg.inputs.x0.i = get_number(x0, "initial_state", "i");
    cfg.inputs.x0.r = get_number(x0, "initial_state", "r");

    if (root.contains("fbs")) {
        const json& fbs = get_object(root, "fbs");
        if (fbs.contains("smoothing_c")) {
            cfg.inputs.fbs.smoothing_c = get_number(fbs, "fbs", "smoothing_c");
        }
        if (fbs.contains("max_iterations")) {
            const double m = get_number(fbs, "fbs", "max_iterations");
            if (m < 1.0 || m != std::floor(m)) {
                throw std::invalid_argument("fbs.max_iterations: expected a positive integer");
            }
            cfg.inputs.fbs.max_iterations = static_cast<std::size_t>(m);
        }
        if (fbs.contains("initial_controls")) {
            const std::string start = fbs["initial_controls"].get<std::string>();
            if (start == "zero") {
                cfg.full_control_start = false;
            } else if (start == "full") {
                cfg.full_control_start = true;
            } else {
                throw std::invalid_argument("fbs.initial_controls: must be 'zero' or 'full'");
            }
        }
    }
    if (cfg.full_control_start) {
        cfg.inputs.fbs.initial_controls = ControlPath::constant(
            cfg.inputs.grid, cfg.inputs.bounds.u0_max, cfg.inputs.bounds.u1_max);
    }

    if (root.contains("output_dir")) {
        if (!root["output_dir"].is_string()) {
            throw std::invalid_argument("output_dir: expected a string");
        }
        cfg.output_dir = root["output_dir"].get<std::string>();
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot open file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json social;
    if (const auto* q = std::get_if<QuadraticCost>(&cfg.inputs.economic.social)) {
        social = {{"model", "quadratic"}, {"b", q->b}};
    } else {
        social = {{"model", "exponential"},
                  {"k", std::get<ExponentialCost>(cfg.inputs.economic.social).k}};
    }

    json root = {
        {"schema_version", 1},
        {"epidemic",
         {{"beta0", cfg.inputs.epidemic.beta0},
          {"gamma", cfg.inputs.epidemic.gamma},
          {"gamma1", cfg.inputs.epidemic.gamma1},
          {"epsilon", cfg.inputs.epidemic.epsilon},
          {"mu", cfg.inputs.epidemic.mu},
          {"alpha", cfg.inputs.epidemic.alpha}}},
        {"economic",
         {{"c1", cfg.inputs.economic.c1},
          {"c2", cfg.inputs.economic.c2},
          {"social_cost", social}}},
        {"bounds",
         {{"u0_max", cfg.inputs.bounds.u0_max}, {"u1_max", cfg.inputs.bounds.u1_max}}},
        {"grid",
         {{"t_end", cfg.inputs.grid.t_end},
          {"n_steps", static_cast<std::uint64_t>(cfg.inputs.grid.n_steps)}}},
        {"initial_state",
         {{"s", cfg.inputs.x0.s},
          {"v", cfg.inputs.x0.v},
          {"i", cfg.inputs.x0.i},
          {"r", cfg.inputs.x0.r}}},
        {"fbs",
         {{"smoothing_c", cfg.inputs.fbs.smoothing_c},
          {"max_iterations", static_cast<std::uint64_t>(cfg.inputs.fbs.max_iterations)},
          {"initial_controls", cfg.full_control_start ? "full" : "zero"}}},
        {"output_dir", cfg.output_dir},
    };
    return root.dump(2) + "\n";
}

} // namespace svir
