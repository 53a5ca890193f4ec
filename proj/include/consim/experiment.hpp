#pragma once

// Reproducible Monte-Carlo batches: generate network -> measure covariates
// -> simulate to convergence -> record -> persist.
//
// Every run derives a private seed from (master_seed, run_id), so batches
// are order-free and embarrassingly parallel: the results file is
// byte-identical no matter how many workers execute it.

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "consim/csv.hpp"
#include "consim/dynamics.hpp"
#include "consim/errors.hpp"
#include "consim/metrics.hpp"
#include "consim/rng.hpp"
#include "consim/stats.hpp"

namespace consim {

struct ExperimentConfig {
    SimConfig sim;
    std::size_t runs = 1000;
    std::size_t connect_retry_limit = 100;  ///< WS regeneration cap per run
    std::string output_path = "results.csv";
    bool record_trajectories = false;
    std::size_t workers = 0;  ///< 0 = hardware concurrency

    void validate() const {
        if (runs < 1) throw std::invalid_argument("config: runs must be >= 1");
        if (connect_retry_limit < 1) {
            throw std::invalid_argument("config: connect_retry_limit must be >= 1");
        }
        if (sim.n < 2) throw std::invalid_argument("config: n must be >= 2");
        if (sim.n_conspirators == 0 || sim.n_conspirators >= sim.n) {
            throw std::invalid_argument("config: need 0 < n_conspirators < n");
        }
        if (!(sim.p_interaction >= 0.0 && sim.p_interaction <= 1.0)) {
            throw std::invalid_argument("config: p_interaction must lie in [0, 1]");
        }
        if (!(sim.epsilon > 0.0)) throw std::invalid_argument("config: epsilon must be positive");
        if (const auto* ws = std::get_if<WsParams>(&sim.topology)) {
            if (ws->n != sim.n) throw std::invalid_argument("config: topology n differs from n");
        } else if (std::get<BaParams>(sim.topology).n != sim.n) {
            throw std::invalid_argument("config: topology n differs from n");
        }
    }
};

/// One completed run's measurements plus the parameters that produced it.
struct RunRecord {
    std::size_t run_id = 0;
    std::uint64_t run_seed = 0;
    std::string topology;  // "ws" | "ba"
    std::size_t n = 0;
    std::size_t n_conspirators = 0;
    double p_interaction = 0.0;
    double epsilon = 0.0;
    double mean_path_length = 0.0;
    double conspirator_centrality_sum = 0.0;
    double initial_collective_thought = 0.0;
    std::size_t convergence_steps = 0;
    bool converged = false;

    bool operator==(const RunRecord&) const = default;
};

inline constexpr std::string_view kResultsHeader =
    "run_id,run_seed,topology,n,n_conspirators,p_interaction,epsilon,mean_path_length,"
    "conspirator_centrality_sum,initial_collective_thought,convergence_steps,converged";

/// Substream tags hung off each run seed. Network generation burns one tag
/// per connectivity retry so a regenerated graph sees a fresh stream.
inline constexpr std::uint64_t kSimStreamTag = 0;
inline constexpr std::uint64_t kNetworkStreamTagBase = 1;

/// Executes a single run: derive the run seed, generate the network
/// (regenerating a disconnected WS graph up to connect_retry_limit times),
/// measure mean path length and the conspirator centrality sum with the
/// conspirators already placed, then run to convergence.
inline RunRecord run_one(std::size_t run_id, const ExperimentConfig& config,
                         std::vector<double>* trajectory_out = nullptr) {
    const std::uint64_t run_seed = derive_seed(config.sim.master_seed, run_id);

    Network network;
    bool connected = false;
    for (std::size_t attempt = 0; attempt < config.connect_retry_limit; ++attempt) {
        Rng gen_rng(substream_seed(run_seed, kNetworkStreamTagBase + attempt));
        network = generate_topology(config.sim.topology, gen_rng);
        if (is_connected(network)) {
            connected = true;
            break;
        }
    }
    if (!connected) {
        throw RunError("run " + std::to_string(run_id) + ": no connected network after " +
                       std::to_string(config.connect_retry_limit) + " attempts");
    }

    Rng sim_rng(substream_seed(run_seed, kSimStreamTag));
    SimState state = init_sim(std::move(network), config.sim, sim_rng);

    std::vector<NodeId> conspirators;
    conspirators.reserve(config.sim.n_conspirators);
    for (std::size_t i = 0; i < state.roles.size(); ++i) {
        if (state.roles[i] == AgentRole::Conspirator) {
            conspirators.push_back(static_cast<NodeId>(i));
        }
    }

    RunRecord record;
    record.run_id = run_id;
    record.run_seed = run_seed;
    record.topology = topology_name(config.sim.topology);
    record.n = config.sim.n;
    record.n_conspirators = config.sim.n_conspirators;
    record.p_interaction = config.sim.p_interaction;
    record.epsilon = config.sim.epsilon;
    record.mean_path_length = mean_path_length(state.network);
    const CentralityVector centrality = eigenvector_centrality(state.network);
    record.conspirator_centrality_sum = conspirator_centrality_sum(centrality, conspirators);
    record.initial_collective_thought = collective_thought(state);

    ConvergenceResult result =
        run_to_convergence(state, config.sim, sim_rng, trajectory_out != nullptr);
    record.convergence_steps = result.steps;
    record.converged = result.converged;
    if (trajectory_out != nullptr) *trajectory_out = std::move(result.trajectory);
    return record;
}

inline void write_record_row(std::ostream& out, const RunRecord& r) {
    out << r.run_id << ',' << r.run_seed << ',' << r.topology << ',' << r.n << ','
        << r.n_conspirators << ',' << format_double(r.p_interaction) << ','
        << format_double(r.epsilon) << ',' << format_double(r.mean_path_length) << ','
        << format_double(r.conspirator_centrality_sum) << ','
        << format_double(r.initial_collective_thought) << ',' << r.convergence_steps << ','
        << (r.converged ? "true" : "false") << '\n';
}

inline void write_results_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << kResultsHeader << '\n';
    for (const RunRecord& r : records) write_record_row(out, r);
}

inline std::vector<RunRecord> read_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kResultsHeader) {
        throw IoError("results csv: missing or unexpected header");
    }
    std::vector<RunRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 12) {
            throw IoError("results csv: expected 12 columns, got " +
                          std::to_string(cells.size()));
        }
        RunRecord r;
        r.run_id = static_cast<std::size_t>(parse_u64(cells[0]));
        r.run_seed = parse_u64(cells[1]);
        r.topology = std::string(cells[2]);
        r.n = static_cast<std::size_t>(parse_u64(cells[3]));
        r.n_conspirators = static_cast<std::size_t>(parse_u64(cells[4]));
        r.p_interaction = parse_double(cells[5]);
        r.epsilon = parse_double(cells[6]);
        r.mean_path_length = parse_double(cells[7]);
        r.conspirator_centrality_sum = parse_double(cells[8]);
        r.initial_collective_thought = parse_double(cells[9]);
        r.convergence_steps = static_cast<std::size_t>(parse_u64(cells[10]));
        r.converged = parse_bool(cells[11]);
        records.push_back(std::move(r));
    }
    return records;
}

struct BatchResult {
    std::vector<RunRecord> records;           ///< completed runs, ordered by run_id
    std::size_t failed_runs = 0;              ///< generation failures, excluded
    std::size_t excluded_non_converged = 0;   ///< kept in the file, not in correlations
    std::optional<CorrelationReport> mpl_report;
    std::optional<CorrelationReport> centrality_report;
    std::string report_note;  ///< why the reports are absent, if they are
};

/// Runs the whole batch on a worker pool, writes the results CSV (rows in
/// run_id order regardless of completion order) and computes the two
/// correlation reports over the converged runs: mean_path_length vs
/// convergence_steps and conspirator_centrality_sum vs convergence_steps.
inline BatchResult run_batch(const ExperimentConfig& config) {
    config.validate();

    std::ofstream out(config.output_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open output file '" + config.output_path + "'");
    }

    std::filesystem::path trajectory_dir;
    if (config.record_trajectories) {
        trajectory_dir = config.output_path + ".traj";
        std::error_code ec;
        std::filesystem::create_directories(trajectory_dir, ec);
        if (ec) throw IoError("cannot create trajectory directory '" + trajectory_dir.string() + "'");
    }

    std::vector<std::optional<RunRecord>> slots(config.runs);
    std::vector<std::vector<double>> trajectories(config.record_trajectories ? config.runs : 0);
    std::atomic<std::size_t> next_run{0};
    std::atomic<std::size_t> failed{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const auto worker = [&] {
        for (;;) {
            const std::size_t run_id = next_run.fetch_add(1);
            if (run_id >= config.runs) return;
            try {
                std::vector<double> trajectory;
                auto* traj_ptr = config.record_trajectories ? &trajectory : nullptr;
                slots[run_id] = run_one(run_id, config, traj_ptr);
                if (config.record_trajectories) trajectories[run_id] = std::move(trajectory);
            } catch (const RunError&) {
                failed.fetch_add(1);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::size_t worker_count = config.workers;
    if (worker_count == 0) {
        worker_count = std::max(1u, std::thread::hardware_concurrency());
    }
    worker_count = std::min(worker_count, config.runs);

    if (worker_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (std::size_t i = 0; i < worker_count; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    BatchResult batch;
    batch.failed_runs = failed.load();
    batch.records.reserve(config.runs);
    for (auto& slot : slots) {
        if (slot) batch.records.push_back(std::move(*slot));
    }

    write_results_csv(out, batch.records);
    out.flush();
    if (!out) throw IoError("failed writing '" + config.output_path + "'");

    if (config.record_trajectories) {
        for (const RunRecord& r : batch.records) {
            const auto path = trajectory_dir / ("run_" + std::to_string(r.run_id) + ".csv");
            std::ofstream traj_out(path, std::ios::binary | std::ios::trunc);
            if (!traj_out) throw IoError("cannot open trajectory file '" + path.string() + "'");
            write_trajectory_csv(traj_out, trajectories[r.run_id]);
        }
    }

    for (const RunRecord& r : batch.records) {
        if (!r.converged) ++batch.excluded_non_converged;
    }

    try {
        batch.mpl_report = correlate(
            batch.records, [](const RunRecord& r) { return r.mean_path_length; },
            [](const RunRecord& r) { return static_cast<double>(r.convergence_steps); },
            "mean_path_length", "convergence_steps");
        batch.centrality_report = correlate(
            batch.records, [](const RunRecord& r) { return r.conspirator_centrality_sum; },
            [](const RunRecord& r) { return static_cast<double>(r.convergence_steps); },
            "conspirator_centrality_sum", "convergence_steps");
    } catch (const std::domain_error& e) {
        batch.mpl_report.reset();
        batch.centrality_report.reset();
        batch.report_note = e.what();
    }
    return batch;
}

}  // namespace consim
