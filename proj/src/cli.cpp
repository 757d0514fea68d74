#include "macrolab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "macrolab/harness.hpp"

namespace macrolab {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    file << text;
    if (!file.flush()) throw std::runtime_error("failed writing output file: " + path);
}

struct CommonFlags {
    int dense_cap = 0;
    std::uint64_t seed = 1;
    int restarts = -1;
    double tol = 1e-10;
    int threads = 0;
    int exact_max_n = 20;
};

void add_optimizer_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--seed", f.seed, "Base seed");
    cmd->add_option("--restarts", f.restarts, "Random optimizer starts (-1: default budget)")->check(CLI::Range(-1, 100000));
    cmd->add_option("--tol", f.tol, "Optimizer tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--exact-max-n", f.exact_max_n, "Largest n that gets the full optimizer");
}

void apply_dense_cap(const CommonFlags& f) {
    if (f.dense_cap != 0) set_dense_cap(f.dense_cap);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Macroscopicity and geometric entanglement of pure qubit states", "macrolab"};
    app.require_subcommand(1);
    CommonFlags common;

    auto dense_cap_flag = [&](CLI::App* cmd) {
        cmd->add_option("--dense-cap", common.dense_cap, "Largest qubit count for dense state vectors")
            ->check(CLI::Range(1, 30));
    };

    CLI::App* state_cmd = app.add_subcommand("state", "Evaluate a named state");
    NamedStateSpec spec;
    int n = 0;
    state_cmd->add_option("--kind", spec.kind, "ghz|w|dicke|bell-product|xi|ghz-ones|phi-c|product")
        ->required()
        ->check(CLI::IsMember({"ghz", "w", "dicke", "bell-product", "xi", "ghz-ones", "phi-c", "product"}));
    state_cmd->add_option("--n", n, "Number of qubits (N1 for ghz-ones)")->required()->check(CLI::Range(2, 1000));
    state_cmd->add_option("--k", spec.k, "Dicke excitations, or N2 for ghz-ones");
    state_cmd->add_option("--theta", spec.theta, "Xi-state theta in [0, pi/4]");
    state_cmd->add_option("--epsilon", spec.epsilon, "Xi-state epsilon in [0, pi]");
    add_optimizer_flags(state_cmd, common);
    dense_cap_flag(state_cmd);

    CLI::App* scan_cmd = app.add_subcommand("scan", "Run an experiment from a config file or flags");
    std::string config_path, experiment, out_path, format, summary_path;
    std::vector<int> n_values;
    std::vector<std::string> k_values;
    int samples = 1;
    scan_cmd->add_option("--config", config_path, "JSON experiment config");
    scan_cmd->add_option("--experiment", experiment,
                         "named-state|xi-scan|eta-bounds|physical-scan|chain-scan|haar-scan|symmetric-scan");
    scan_cmd->add_option("--n", n_values, "Qubit counts");
    scan_cmd->add_option("--k", k_values, "Gate counts: integers, n, n-1 or n^p");
    auto* samples_opt = scan_cmd->add_option("--samples", samples, "Samples per cell")->check(CLI::PositiveNumber);
    scan_cmd->add_option("--out", out_path, "Per-sample output path (default: standard output)");
    scan_cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    scan_cmd->add_option("--summary", summary_path, "Summary CSV path");
    scan_cmd->add_option("--threads", common.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
    add_optimizer_flags(scan_cmd, common);
    dense_cap_flag(scan_cmd);

    CLI::App* bounds_cmd = app.add_subcommand("bounds", "Overlap-constrained macroscopicity bounds over an eta grid");
    std::string mode = "both";
    std::vector<int> bound_n;
    int eta_points = 64;
    double eta = 0.0;
    std::string bounds_out, bounds_format = "csv";
    bounds_cmd->add_option("--mode", mode, "general|symmetric|both")->check(CLI::IsMember({"general", "symmetric", "both"}));
    bounds_cmd->add_option("--n", bound_n, "Qubit counts")->required()->check(CLI::Range(2, 1000));
    auto* grid_opt = bounds_cmd->add_option("--eta-grid", eta_points, "Number of eta values")->check(CLI::Range(2, 100000));
    auto* eta_opt = bounds_cmd->add_option("--eta", eta, "Single eta value")->excludes(grid_opt);
    bounds_cmd->add_option("--out", bounds_out, "Output path (default: standard output)");
    bounds_cmd->add_option("--format", bounds_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    dense_cap_flag(bounds_cmd);

    CLI::App* version_cmd = app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        app.exit(e, out, err);
        err << app.help();
        return 2;
    }

    try {
        apply_dense_cap(common);
        if (*version_cmd) {
            out << "macrolab " << kVersion << '\n';
            return 0;
        }
        if (*state_cmd) {
            ExperimentConfig config;
            config.seed = common.seed;
            config.restarts = common.restarts;
            config.tol = common.tol;
            config.exact_max_n = common.exact_max_n;
            config.experiment = Experiment::NamedState;
            config.n_values = {n};
            config.state = spec;
            config.validate();
            const SampleRow row = evaluate_named_state(n, spec, config);
            out << "n=" << row.n << '\n'
                << "m_tilde=" << fmt(row.m_tilde) << '\n'
                << "m_norm=" << fmt(row.m_norm) << '\n'
                << "e_g=" << fmt(row.e_g) << '\n'
                << "m_tilde_lower=" << fmt(row.m_tilde_lower) << '\n'
                << "m_tilde_upper=" << fmt(row.m_tilde_upper) << '\n';
            return 0;
        }
        if (*scan_cmd) {
            ExperimentConfig config;
            if (!config_path.empty()) {
                config = load_config(config_path);
            } else if (experiment.empty()) {
                err << "scan: either --config or --experiment is required\n" << scan_cmd->help();
                return 2;
            }
            if (!experiment.empty()) config.experiment = parse_experiment(experiment);
            if (!n_values.empty()) config.n_values = n_values;
            if (!k_values.empty()) config.k_values = k_values;
            if (samples_opt->count() > 0) config.samples = samples;
            if (scan_cmd->get_option("--seed")->count() > 0) config.seed = common.seed;
            if (scan_cmd->get_option("--restarts")->count() > 0) config.restarts = common.restarts;
            if (scan_cmd->get_option("--tol")->count() > 0) config.tol = common.tol;
            if (scan_cmd->get_option("--exact-max-n")->count() > 0) config.exact_max_n = common.exact_max_n;
            if (scan_cmd->get_option("--threads")->count() > 0) config.threads = common.threads;
            if (!out_path.empty()) config.output_path = out_path;
            if (!format.empty()) config.format = format;
            config.validate();

            const ExperimentResult result = run_experiment(config);
            std::ostringstream rows;
            if (config.format == "json") write_json(rows, result.rows);
            else write_csv(rows, result.rows);
            write_output(config.output_path, rows.str(), out);
            std::ostringstream summary;
            write_summary_csv(summary, result.summary);
            if (!summary_path.empty()) write_output(summary_path, summary.str(), out);
            else if (!config.output_path.empty()) out << summary.str();
            return 0;
        }
        if (*bounds_cmd) {
            std::vector<BoundMode> modes;
            if (mode != "symmetric") modes.push_back(BoundMode::General);
            if (mode != "general") modes.push_back(BoundMode::Symmetric);
            std::vector<BoundsRow> rows;
            if (eta_opt->count() > 0) {
                for (BoundMode m : modes) {
                    for (int bn : bound_n) {
                        const EtaMaxBound b = eta_max_bound(bn, eta, m);
                        rows.push_back({m, bn, eta, -std::log2(eta), b.m_tilde, b.m_norm});
                    }
                }
            } else {
                rows = bounds_curves(bound_n, modes, eta_points);
            }
            std::ostringstream text;
            if (bounds_format == "json") write_bounds_json(text, rows);
            else write_bounds_csv(text, rows);
            write_output(bounds_out, text.str(), out);
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace macrolab
