// spinrus: exact simulation and analysis of measurement-induced symmetric
// state generation on complete bipartite and star spin networks.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "spinrus/commands.hpp"

namespace {

using namespace spinrus;

// Shared flag set; a flag overrides the config file only when actually given.
struct CommonOpts {
    std::string config_path;
    std::string topology;
    int n_supplementary = 0;
    int m_target = 0;
    double coupling = 0.0;
    double anisotropy = 0.0;
    double field_uniform = 0.0;
    double field_center_extra = 0.0;
    int target_k = 0;
    std::vector<double> window;
    int grid_points = 0;
    int max_rounds = 0;
    std::uint64_t trajectories = 0;
    std::uint64_t seed = 0;
    std::string out, out_trajectories, out_summary, out_report;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("-N,--n-supplementary", n_supplementary, "supplementary spin count");
        cmd->add_option("-M,--m-target", m_target, "target spin count");
        cmd->add_option("--topology", topology, "bipartite or star");
        cmd->add_option("-J,--coupling", coupling, "coupling strength");
        cmd->add_option("--lambda,--anisotropy", anisotropy, "z-coupling anisotropy");
        cmd->add_option("-B,--field-uniform", field_uniform, "field on every spin");
        cmd->add_option("--b0,--field-center-extra", field_center_extra,
                        "extra field on the supplementary register");
        cmd->add_option("--target-k", target_k, "target symmetric index");
        cmd->add_option("--window", window, "time window lo hi")->expected(2);
        cmd->add_option("--grid", grid_points, "grid points");
        cmd->add_option("--max-rounds", max_rounds, "maximum measurement rounds");
        cmd->add_option("--trajectories", trajectories, "ensemble size");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--out", out, "output file");
        cmd->add_option("--out-trajectories", out_trajectories, "trajectory JSONL file");
        cmd->add_option("--out-summary", out_summary, "summary JSON file");
        cmd->add_option("--out-report", out_report, "report JSON file");
    }

    RunConfig merge(const CLI::App* cmd) const {
        RunConfig cfg;
        if (cmd->count("--config") != 0) cfg = load_config_file(config_path);
        if (cmd->count("--topology") != 0) {
            cfg.network.topology = topology_from_string(topology);
        }
        if (cmd->count("-N") != 0) cfg.network.n_supplementary = n_supplementary;
        if (cmd->count("-M") != 0) cfg.network.m_target = m_target;
        if (cmd->count("-J") != 0) cfg.network.coupling = coupling;
        if (cmd->count("--lambda") != 0) cfg.network.anisotropy = anisotropy;
        if (cmd->count("-B") != 0) cfg.network.field_uniform = field_uniform;
        if (cmd->count("--b0") != 0) cfg.network.field_center_extra = field_center_extra;
        if (cmd->count("--target-k") != 0) cfg.target_k = target_k;
        if (cmd->count("--window") != 0) {
            cfg.window_lo = window[0];
            cfg.window_hi = window[1];
        }
        if (cmd->count("--grid") != 0) cfg.grid_points = grid_points;
        if (cmd->count("--max-rounds") != 0) cfg.max_rounds = max_rounds;
        if (cmd->count("--trajectories") != 0) cfg.trajectories = trajectories;
        if (cmd->count("--seed") != 0) cfg.master_seed = seed;
        if (cmd->count("--out") != 0) cfg.output = out;
        if (cmd->count("--out-trajectories") != 0) cfg.output_trajectories = out_trajectories;
        if (cmd->count("--out-summary") != 0) cfg.output_summary = out_summary;
        if (cmd->count("--out-report") != 0) cfg.output_report = out_report;
        return cfg;
    }
};

int dispatch(const std::string& name, const CLI::App* cmd, const CommonOpts& opts, int n_max,
             const std::string& model_name) {
    const RunConfig cfg = opts.merge(cmd);
    if (name == "pt" || name == "rus" || name == "validate") {
        for (const std::string& warning : cfg.network.warnings()) {
            std::cerr << "warning: " << warning << "\n";
        }
    }
    if (name == "pt") {
        cmd_pt(cfg);
        return 0;
    }
    if (name == "figure2") {
        cmd_figure2(n_max, cfg.output.empty() ? "figure2.csv" : cfg.output);
        return 0;
    }
    if (name == "rus") {
        cmd_rus(cfg);
        return 0;
    }
    if (name == "wstate") {
        cmd_wstate(cfg.network.m_target, w_model_from_string(model_name), cfg);
        return 0;
    }
    if (name == "validate") {
        return cmd_validate(cfg.network.n_supplementary, cfg.network.m_target, cfg);
    }
    throw ConfigError("unknown command " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric-state generation on spin networks"};
    app.require_subcommand(1);

    CLI::App* pt = app.add_subcommand("pt", "first-round success probability curve");
    CLI::App* figure2 =
        app.add_subcommand("figure2", "first-round maximum sweep over even N");
    CLI::App* rus = app.add_subcommand("rus", "repeat-until-success ensemble");
    CLI::App* wstate = app.add_subcommand("wstate", "W-state schedule report");
    CLI::App* validate = app.add_subcommand("validate", "cross-representation checks");

    CommonOpts pt_opts, fig_opts, rus_opts, w_opts, val_opts;
    pt_opts.attach(pt);
    fig_opts.attach(figure2);
    rus_opts.attach(rus);
    w_opts.attach(wstate);
    val_opts.attach(validate);

    int n_max = 0;
    figure2->add_option("n_max", n_max, "largest even N")->required();
    std::string model_name;
    wstate->add_option("--model", model_name,
                       "xx_outer | xx_local_unitary | xxz_tuned | xx_center_field")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const struct {
        const char* name;
        CLI::App* cmd;
        CommonOpts* opts;
    } table[] = {{"pt", pt, &pt_opts},
                 {"figure2", figure2, &fig_opts},
                 {"rus", rus, &rus_opts},
                 {"wstate", wstate, &w_opts},
                 {"validate", validate, &val_opts}};

    try {
        for (const auto& entry : table) {
            if (entry.cmd->parsed()) {
                return dispatch(entry.name, entry.cmd, *entry.opts, n_max, model_name);
            }
        }
        return 2;
    } catch (const spinrus::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const spinrus::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
