// consim — headless conspiracy-dissemination simulator.
//
// Subcommands:
//   generate   write a network as a canonical edge-list CSV
//   run        run one simulation, write the collective-thought trajectory
//   batch      run a reproducible Monte-Carlo batch, write results CSV
//   analyze    correlate two columns of a results CSV
//
// Every subcommand is deterministic given its flags; all errors print a
// single `error: <category>: <detail>` line to stderr and exit nonzero.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include "consim/consim.hpp"

namespace {

/// Problems with how the tool was invoked (bad column names and the like),
/// distinct from parameter errors raised by the library.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TopologyFlags {
    std::string topology;
    std::size_t n = 100;
    std::size_t ws_k = 4;
    double ws_beta = 0.1;
    std::size_t ba_m = 2;
};

void add_topology_flags(CLI::App* cmd, TopologyFlags& flags, bool required) {
    auto* opt = cmd->add_option("--topology", flags.topology, "Network model: ws or ba")
                    ->check(CLI::IsMember({"ws", "ba"}));
    if (required) opt->required();
    cmd->add_option("--n", flags.n, "Number of nodes / agents");
    cmd->add_option("--ws-k", flags.ws_k, "WS ring-lattice neighbors per node (even)");
    cmd->add_option("--ws-beta", flags.ws_beta, "WS rewiring probability in [0,1]");
    cmd->add_option("--ba-m", flags.ba_m, "BA edges attached per new node");
}

struct SimFlags {
    TopologyFlags topo;
    std::size_t n_conspirators = 4;
    double p_interaction = 0.5;
    double epsilon = 0.01;
    std::size_t max_steps = 100000;
    std::uint64_t seed = 1;
    std::vector<consim::NodeId> conspirators;
    std::string config_path;
};

void add_sim_flags(CLI::App* cmd, SimFlags& flags) {
    add_topology_flags(cmd, flags.topo, /*required=*/false);
    cmd->add_option("--n-conspirators", flags.n_conspirators, "Number of conspirator agents");
    cmd->add_option("--p-interaction", flags.p_interaction, "Exchange probability in [0,1]");
    cmd->add_option("--epsilon", flags.epsilon, "Convergence threshold on collective-thought");
    cmd->add_option("--max-steps", flags.max_steps, "Step cap per run");
    cmd->add_option("--seed", flags.seed, "Master seed (64-bit)");
    cmd->add_option("--conspirators", flags.conspirators,
                    "Explicit conspirator node ids (overrides random placement)")
        ->delimiter(',');
    cmd->add_option("--config", flags.config_path, "Flat key=value config file; flags override");
}

/// Folds the flags the user actually passed into a ConfigOverrides layer.
consim::ConfigOverrides overrides_from_flags(const CLI::App* cmd, const SimFlags& flags) {
    consim::ConfigOverrides o;
    if (cmd->count("--topology")) o.topology = flags.topo.topology;
    if (cmd->count("--n")) o.n = flags.topo.n;
    if (cmd->count("--ws-k")) o.ws_k = flags.topo.ws_k;
    if (cmd->count("--ws-beta")) o.ws_beta = flags.topo.ws_beta;
    if (cmd->count("--ba-m")) o.ba_m = flags.topo.ba_m;
    if (cmd->count("--n-conspirators")) o.n_conspirators = flags.n_conspirators;
    if (cmd->count("--p-interaction")) o.p_interaction = flags.p_interaction;
    if (cmd->count("--epsilon")) o.epsilon = flags.epsilon;
    if (cmd->count("--max-steps")) o.max_steps = flags.max_steps;
    if (cmd->count("--seed")) o.master_seed = flags.seed;
    if (cmd->count("--conspirators")) o.conspirator_ids = flags.conspirators;
    return o;
}

consim::ExperimentConfig resolve_config(const CLI::App* cmd, const SimFlags& flags) {
    consim::ConfigOverrides file_overrides;
    if (!flags.config_path.empty()) {
        file_overrides = consim::load_config_file(flags.config_path);
    }
    return consim::build_experiment_config(file_overrides, overrides_from_flags(cmd, flags));
}

void write_file_or_throw(const std::string& path, const auto& writer) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw consim::IoError("cannot open output file '" + path + "'");
    writer(out);
    out.flush();
    if (!out) throw consim::IoError("failed writing '" + path + "'");
}

int cmd_generate(const TopologyFlags& flags, std::uint64_t seed, const std::string& out_path) {
    consim::TopologyParams topology;
    if (flags.topology == "ws") {
        topology = consim::WsParams{flags.n, flags.ws_k, flags.ws_beta};
    } else {
        topology = consim::BaParams{flags.n, flags.ba_m};
    }
    consim::Rng rng(seed);
    const consim::Network network = consim::generate_topology(topology, rng);
    write_file_or_throw(out_path, [&](std::ostream& out) { consim::write_edge_csv(out, network); });

    const bool connected = consim::is_connected(network);
    const double mpl = connected && network.node_count >= 2
                           ? consim::mean_path_length(network)
                           : std::numeric_limits<double>::quiet_NaN();
    std::cout << "nodes=" << network.node_count << " edges=" << network.edge_count()
              << " connected=" << (connected ? "true" : "false")
              << " mean_path_length=" << consim::format_double(mpl) << '\n';
    return 0;
}

int cmd_run(const consim::ExperimentConfig& config, const std::string& out_path) {
    config.validate();
    const std::uint64_t run_seed = consim::derive_seed(config.sim.master_seed, 0);

    consim::Network network;
    bool connected = false;
    for (std::size_t attempt = 0; attempt < config.connect_retry_limit; ++attempt) {
        consim::Rng gen_rng(consim::substream_seed(run_seed, consim::kNetworkStreamTagBase + attempt));
        network = consim::generate_topology(config.sim.topology, gen_rng);
        if (consim::is_connected(network)) {
            connected = true;
            break;
        }
    }
    if (!connected) {
        throw consim::RunError("no connected network after " +
                               std::to_string(config.connect_retry_limit) + " attempts");
    }

    consim::Rng sim_rng(consim::substream_seed(run_seed, consim::kSimStreamTag));
    consim::SimState state = consim::init_sim(std::move(network), config.sim, sim_rng);
    const consim::ConvergenceResult result =
        consim::run_to_convergence(state, config.sim, sim_rng, /*record_trajectory=*/true);

    write_file_or_throw(out_path, [&](std::ostream& out) {
        consim::write_trajectory_csv(out, result.trajectory);
    });
    std::cout << "converged=" << (result.converged ? "true" : "false") << " steps=" << result.steps
              << " final=" << consim::format_double(result.final_collective_thought) << '\n';
    return 0;
}

int cmd_batch(const consim::ExperimentConfig& config) {
    const consim::BatchResult batch = consim::run_batch(config);
    std::cout << "wrote " << config.output_path << " runs=" << batch.records.size()
              << " excluded_non_converged=" << batch.excluded_non_converged
              << " failed_generation=" << batch.failed_runs << '\n';
    if (batch.mpl_report && batch.centrality_report) {
        std::cout << consim::format_report_line(*batch.mpl_report) << '\n';
        std::cout << consim::format_report_line(*batch.centrality_report) << '\n';
    } else {
        std::cout << "correlation unavailable: " << batch.report_note << '\n';
    }
    return 0;
}

int cmd_analyze(const std::string& in_path, const std::string& x_column,
                const std::string& y_column, const std::string& scatter_path) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw consim::IoError("cannot read input file '" + in_path + "'");

    std::string line;
    if (!std::getline(in, line)) throw consim::IoError("empty input file '" + in_path + "'");
    const auto header_cells = consim::split_csv_line(line);
    std::unordered_map<std::string, std::size_t> columns;
    for (std::size_t i = 0; i < header_cells.size(); ++i) {
        columns.emplace(std::string(header_cells[i]), i);
    }
    for (const std::string& name : {x_column, y_column, std::string("converged")}) {
        if (columns.find(name) == columns.end()) {
            throw UsageError("column '" + name + "' not found in '" + in_path + "'");
        }
    }
    const std::size_t xi = columns.at(x_column);
    const std::size_t yi = columns.at(y_column);
    const std::size_t ci = columns.at("converged");

    std::vector<double> xs, ys;
    std::size_t excluded = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = consim::split_csv_line(line);
        if (cells.size() != header_cells.size()) {
            throw consim::IoError("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(header_cells.size()) + " columns");
        }
        if (!consim::parse_bool(cells[ci])) {
            ++excluded;
            continue;
        }
        xs.push_back(consim::parse_double(cells[xi]));
        ys.push_back(consim::parse_double(cells[yi]));
    }

    if (excluded > 0) {
        std::cout << "excluded_non_converged=" << excluded << '\n';
    }
    if (xs.size() < 3) {
        throw std::domain_error("fewer than 3 converged records (" + std::to_string(xs.size()) +
                                ")");
    }
    const consim::CorrelationReport report =
        consim::make_correlation_report(xs, ys, x_column, y_column);
    std::cout << consim::format_report_line(report) << '\n';

    if (!scatter_path.empty()) {
        write_file_or_throw(scatter_path, [&](std::ostream& out) {
            out << x_column << ',' << y_column << '\n';
            for (std::size_t i = 0; i < xs.size(); ++i) {
                out << consim::format_double(xs[i]) << ',' << consim::format_double(ys[i]) << '\n';
            }
        });
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Agent-based conspiracy dissemination simulator"};
    app.set_version_flag("--version", CONSIM_VERSION_STRING);
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "Generate a network, write an edge-list CSV");
    TopologyFlags gen_flags;
    add_topology_flags(generate, gen_flags, /*required=*/true);
    std::uint64_t gen_seed = 1;
    std::string gen_out = "edges.csv";
    generate->add_option("--seed", gen_seed, "Generator seed");
    generate->add_option("--out", gen_out, "Edge-list output path");

    // run
    auto* run = app.add_subcommand("run", "Run one simulation, write the trajectory CSV");
    SimFlags run_flags;
    add_sim_flags(run, run_flags);
    std::string run_out = "trajectory.csv";
    run->add_option("--out", run_out, "Trajectory output path");

    // batch
    auto* batch = app.add_subcommand("batch", "Run a Monte-Carlo batch, write the results CSV");
    SimFlags batch_flags;
    add_sim_flags(batch, batch_flags);
    std::size_t batch_runs = 1000;
    std::size_t batch_workers = 0;
    std::size_t batch_retry = 100;
    bool batch_traj = false;
    std::string batch_out;
    batch->add_option("--runs", batch_runs, "Number of runs in the batch");
    batch->add_option("--workers", batch_workers, "Worker threads (0 = auto)");
    batch->add_option("--connect-retry-limit", batch_retry, "WS regeneration cap per run");
    batch->add_flag("--record-trajectories", batch_traj,
                    "Write per-run trajectories next to the results file");
    batch->add_option("--out", batch_out, "Results output path");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Correlate two columns of a results CSV");
    std::string an_in, an_x, an_y, an_scatter;
    analyze->add_option("--in", an_in, "Results CSV path")->required();
    analyze->add_option("--x", an_x, "X column name")->required();
    analyze->add_option("--y", an_y, "Y column name")->required();
    analyze->add_option("--scatter", an_scatter, "Write the (x, y) pairs to this CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (generate->parsed()) {
            return cmd_generate(gen_flags, gen_seed, gen_out);
        }
        if (run->parsed()) {
            return cmd_run(resolve_config(run, run_flags), run_out);
        }
        if (batch->parsed()) {
            consim::ConfigOverrides flag_overrides = overrides_from_flags(batch, batch_flags);
            if (batch->count("--runs")) flag_overrides.runs = batch_runs;
            if (batch->count("--workers")) flag_overrides.workers = batch_workers;
            if (batch->count("--connect-retry-limit")) flag_overrides.connect_retry_limit = batch_retry;
            if (batch->count("--record-trajectories")) flag_overrides.record_trajectories = batch_traj;
            if (batch->count("--out")) flag_overrides.output_path = batch_out;
            consim::ConfigOverrides file_overrides;
            if (!batch_flags.config_path.empty()) {
                file_overrides = consim::load_config_file(batch_flags.config_path);
            }
            return cmd_batch(consim::build_experiment_config(file_overrides, flag_overrides));
        }
        if (analyze->parsed()) {
            return cmd_analyze(an_in, an_x, an_y, an_scatter);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: usage: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: parameter: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: domain: " << e.what() << '\n';
        return 3;
    } catch (const consim::IoError& e) {
        std::cerr << "error: io: " << e.what() << '\n';
        return 4;
    } catch (const consim::NumericError& e) {
        std::cerr << "error: numeric: " << e.what() << '\n';
        return 5;
    } catch (const consim::RunError& e) {
        std::cerr << "error: run: " << e.what() << '\n';
        return 6;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 7;
    }
    return 0;
}
