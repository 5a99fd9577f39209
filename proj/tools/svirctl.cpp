#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "svir/config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt10(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

// Write-temp-then-rename so concurrent runs never observe partial files.
void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out << content;
    }
    fs::rename(tmp, path);
}

std::string trajectory_csv(const svir::ScenarioResult& res) {
    std::string csv = "t,S,V,I,R,u0,u1\n";
    const auto& grid = res.trajectory.grid;
    for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
        const auto& x = res.trajectory.states[i];
        const auto& u = res.controls.samples[i];
        csv += fmt10(grid.node(i)) + "," + fmt10(x.s) + "," + fmt10(x.v) + "," + fmt10(x.i) +
               "," + fmt10(x.r) + "," + fmt10(u.u0) + "," + fmt10(u.u1) + "\n";
    }
    return csv;
}

json cost_json(const svir::ScenarioResult& res) {
    const auto& c = res.cost;
    const double total = c.total > 0.0 ? c.total : 1.0;
    return json{
        {"strategy", svir::strategy_name(res.strategy)},
        {"social", c.social},
        {"infection", c.infection},
        {"vaccination", c.vaccination},
        {"total", c.total},
        {"percentages",
         {{"social", 100.0 * c.social / total},
          {"infection", 100.0 * c.infection / total},
          {"vaccination", 100.0 * c.vaccination / total}}},
        {"r0", res.r0},
        {"final_state",
         {{"s", res.final_state.s},
          {"v", res.final_state.v},
          {"i", res.final_state.i},
          {"r", res.final_state.r}}},
    };
}

fs::path resolve_out_dir(const svir::ExperimentConfig& cfg, const std::string& out_flag) {
    if (!out_flag.empty()) {
        return out_flag;
    }
    if (const char* env = std::getenv("SVIR_OUTPUT_DIR")) {
        if (*env) {
            return env;
        }
    }
    return cfg.output_dir;
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    bool print_config = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config JSON")->required();
    cmd->add_option("--out", opts.out_dir, "output directory (overrides config and env)");
    cmd->add_flag("--print-config", opts.print_config,
                  "echo the canonical config and exit without running");
}

svir::Strategy parse_strategy(const std::string& name) {
    if (name == "none") return svir::Strategy::NoControlNoVax;
    if (name == "vax") return svir::Strategy::VaxOnly;
    if (name == "full") return svir::Strategy::FullControl;
    if (name == "optimal") return svir::Strategy::Optimal;
    throw std::invalid_argument("strategy: must be one of none|vax|full|optimal");
}

int cmd_simulate(const CommonOpts& opts, const std::string& strategy_name) {
    const svir::ExperimentConfig cfg = svir::load_config(opts.config_path);
    if (opts.print_config) {
        std::cout << svir::serialize_config(cfg);
        return 0;
    }
    const svir::Strategy strategy = parse_strategy(strategy_name);
    const svir::ScenarioResult res = svir::run_strategy(strategy, cfg.inputs);
    const fs::path dir = resolve_out_dir(cfg, opts.out_dir);
    write_file_atomic(dir / "trajectory.csv", trajectory_csv(res));
    write_file_atomic(dir / "cost.json", cost_json(res).dump(2) + "\n");
    std::cout << "total cost " << fmt10(res.cost.total) << " -> " << (dir / "cost.json").string()
              << "\n";
    return 0;
}

int cmd_table(const CommonOpts& opts) {
    const svir::ExperimentConfig cfg = svir::load_config(opts.config_path);
    if (opts.print_config) {
        std::cout << svir::serialize_config(cfg);
        return 0;
    }
    const auto rows = svir::cost_table(cfg.inputs);

    std::string csv = "strategy,total,social,social_pct,infection,infection_pct,"
                      "vaccination,vaccination_pct\n";
    json jrows = json::array();
    for (const auto& r : rows) {
        const double total = r.cost.total > 0.0 ? r.cost.total : 1.0;
        csv += std::string(svir::strategy_name(r.strategy)) + "," + fmt10(r.cost.total) + "," +
               fmt10(r.cost.social) + "," + fmt10(100.0 * r.cost.social / total) + "," +
               fmt10(r.cost.infection) + "," + fmt10(100.0 * r.cost.infection / total) + "," +
               fmt10(r.cost.vaccination) + "," + fmt10(100.0 * r.cost.vaccination / total) +
               "\n";
        jrows.push_back(cost_json(r));
    }
    const fs::path dir = resolve_out_dir(cfg, opts.out_dir);
    write_file_atomic(dir / "table.csv", csv);
    write_file_atomic(dir / "table.json", jrows.dump(2) + "\n");
    std::cout << csv;
    return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& param,
              const std::vector<double>& values) {
    const svir::ExperimentConfig cfg = svir::load_config(opts.config_path);
    if (opts.print_config) {
        std::cout << svir::serialize_config(cfg);
        return 0;
    }
    if (values.empty()) {
        throw std::invalid_argument("values: empty sweep value list");
    }
    const auto entries = svir::sweep(param, values, cfg.inputs);
    const fs::path dir = resolve_out_dir(cfg, opts.out_dir);

    std::string combined = "param_value,t,u0,u1\n";
    for (const auto& e : entries) {
        const fs::path sub = dir / (param + "_" + fmt10(e.value));
        if (!e.ok) {
            write_file_atomic(sub / "error.txt", e.error + "\n");
            std::cerr << param << "=" << fmt10(e.value) << " failed: " << e.error << "\n";
            continue;
        }
        svir::ScenarioResult res;
        res.strategy = svir::Strategy::Optimal;
        res.controls = e.report.best_controls;
        res.trajectory = e.report.best_trajectory;
        res.cost = e.report.best_cost;
        res.final_state = res.trajectory.states.back();
        svir::EpidemicParams basic = cfg.inputs.epidemic;
        basic.alpha = cfg.inputs.bounds.u1_max;
        res.r0 = svir::r0_continuous(basic);

        write_file_atomic(sub / "trajectory.csv", trajectory_csv(res));
        write_file_atomic(sub / "cost.json", cost_json(res).dump(2) + "\n");
        for (std::size_t i = 0; i < res.controls.grid.n_nodes(); ++i) {
            combined += fmt10(e.value) + "," + fmt10(res.controls.grid.node(i)) + "," +
                        fmt10(res.controls.samples[i].u0) + "," +
                        fmt10(res.controls.samples[i].u1) + "\n";
        }
    }
    write_file_atomic(dir / "controls.csv", combined);
    std::cout << "sweep over " << param << " (" << entries.size() << " values) -> "
              << (dir / "controls.csv").string() << "\n";
    return 0;
}

int cmd_analyze(const CommonOpts& opts) {
    const svir::ExperimentConfig cfg = svir::load_config(opts.config_path);
    if (opts.print_config) {
        std::cout << svir::serialize_config(cfg);
        return 0;
    }
    const svir::EpidemicParams& p = cfg.inputs.epidemic;
    const double r0 = svir::r0_continuous(p);
    const svir::SvirState dfe = svir::disease_free_equilibrium(p);
    const auto endemic = svir::endemic_equilibrium(p);

    json out = {
        {"r0", r0},
        {"disease_free_equilibrium",
         {{"s", dfe.s}, {"v", dfe.v}, {"i", dfe.i}, {"r", dfe.r}}},
        {"endemic_equilibrium", nullptr},
    };
    if (endemic) {
        out["endemic_equilibrium"] = {
            {"s", endemic->s}, {"v", endemic->v}, {"i", endemic->i}, {"r", endemic->r}};
    }
    const fs::path dir = resolve_out_dir(cfg, opts.out_dir);
    write_file_atomic(dir / "analysis.json", out.dump(2) + "\n");
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal social-restriction and vaccination policies for the controlled "
                 "SVIR model"};
    app.require_subcommand(1);

    CommonOpts sim_opts;
    std::string strategy = "optimal";
    CLI::App* sim = app.add_subcommand("simulate", "run one strategy, write trajectory + cost");
    add_common(sim, sim_opts);
    sim->add_option("--strategy", strategy, "none|vax|full|optimal")
        ->check(CLI::IsMember({"none", "vax", "full", "optimal"}));

    CommonOpts table_opts;
    CLI::App* table = app.add_subcommand("table", "four-strategy cost comparison");
    add_common(table, table_opts);

    CommonOpts sweep_opts;
    std::string param;
    std::vector<double> values;
    CLI::App* sweep = app.add_subcommand("sweep", "optimal solves over a parameter range");
    add_common(sweep, sweep_opts);
    sweep->add_option("--param", param, "c2|b|k|u1_max|u0_max|c1")->required();
    sweep->add_option("--values", values, "comma-separated values")->required()->delimiter(',');

    CommonOpts analyze_opts;
    CLI::App* analyze =
        app.add_subcommand("analyze", "reproduction number and equilibria of the basic model");
    add_common(analyze, analyze_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) {
            return cmd_simulate(sim_opts, strategy);
        }
        if (table->parsed()) {
            return cmd_table(table_opts);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_opts, param, values);
        }
        if (analyze->parsed()) {
            return cmd_analyze(analyze_opts);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const svir::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
