#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heda/accounting.hpp"
#include "heda/engine.hpp"
#include "heda/types.hpp"

// Run artifacts, parameter sweeps and replay verification of exported logs.
namespace heda::experiment {

inline constexpr const char* kResidualHeader = "time_s,node_id,residual_j,active";
inline constexpr const char* kSummaryHeader =
    "seed,r_sense,r_tx,routing,final_total_residual_incl,final_total_residual_excl,disconnect_time_s,delivered,"
    "dropped,lost,partition_time_s";
inline constexpr const char* kTimeseriesHeader =
    "time_s,total_residual_incl,total_residual_excl,active_count,individual_j,local_j,global_j,battery_j,sink_j";
inline constexpr const char* kDeactivationHeader = "time_s,node_id,deficit_j";
inline constexpr const char* kSweepHeader =
    "r_sense,r_tx,routing,seed,final_total_residual_incl,final_total_residual_excl,disconnect_time_s,"
    "partition_time_s,generated,delivered,dropped,lost,in_flight,verified,verify_worst_relative,error";
inline constexpr const char* kAggregateHeader =
    "r_sense,r_tx,routing,runs,failures,mean_residual_incl,std_residual_incl,mean_residual_excl,std_residual_excl,"
    "median_disconnect_s,mean_delivered";
inline constexpr const char* kNeighborHeader = "seed,r_tx,max_neighbors,mean_neighbors";

/// Seconds, or "inf" for an instant never reached.
std::string format_time(double t);

struct Summary {
    std::uint64_t seed = 0;
    double r_sense = 0;
    double r_tx = 0;
    RoutingPolicy routing = RoutingPolicy::Selective;
    double residual_incl = 0;
    double residual_excl = 0;
    double disconnect_time = engine::kNever;
    double partition_time = engine::kNever;
    std::uint64_t generated = 0, delivered = 0, dropped = 0, lost = 0, in_flight = 0;
};

Summary summarize(const engine::RunResult& run);

void write_residuals(std::ostream& out, const engine::RunResult& run);
void write_summary(std::ostream& out, const Summary& summary);
void write_constraints(std::ostream& out, const engine::RunResult& run);
void write_timeseries(std::ostream& out, const engine::RunResult& run);
void write_deactivations(std::ostream& out, const engine::RunResult& run);

/// Writes residual_energy.csv, summary.csv, events.log, constraints.csv, timeseries.csv
/// and deactivations.csv into `dir`, creating it. Throws IoError.
void write_run(const engine::RunResult& run, const std::filesystem::path& dir);

/// Last-sample residual per node from a residual_energy.csv stream. Throws ParseError.
std::vector<double> read_final_residuals(std::istream& in, std::size_t node_count);

/// Replays an events.log against a config, plus the final residuals when given.
accounting::VerifyReport verify_files(const std::filesystem::path& events, const std::filesystem::path& config,
                                      const std::optional<std::filesystem::path>& residuals);

/// Exports the run's ledger and final residuals as text, parses them back and replays.
accounting::VerifyReport verify_run(const engine::RunResult& run);

struct SweepSpec {
    SimConfig base;
    std::vector<double> r_sense{30, 40, 50, 60};
    std::vector<double> r_tx{130, 160, 190, 220};
    std::vector<RoutingPolicy> routing{RoutingPolicy::Selective, RoutingPolicy::Random};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    bool verify = true;        // replay every cell's exported log
    bool write_cells = false;  // full run artifacts per cell under cells/
};

/// Keys: base (config object), r_sense, r_tx, routing, seeds, verify, write_cells.
/// Throws ParseError or ConstraintError.
SweepSpec load_sweep_spec(std::string_view document);
SweepSpec load_sweep_spec_file(const std::filesystem::path& path);

struct Cell {
    double r_sense = 0;
    double r_tx = 0;
    RoutingPolicy routing = RoutingPolicy::Selective;
    std::uint64_t seed = 0;
};

std::vector<Cell> expand(const SweepSpec& spec);
SimConfig cell_config(const SweepSpec& spec, const Cell& cell);

struct CellResult {
    Cell cell;
    Summary summary;
    bool ok = false;
    std::string error;
    bool verified = false;
    double verify_worst = 0;
};

struct CellStats {
    double r_sense = 0;
    double r_tx = 0;
    RoutingPolicy routing = RoutingPolicy::Selective;
    std::size_t runs = 0;
    std::size_t failures = 0;
    double mean_incl = 0, std_incl = 0;
    double mean_excl = 0, std_excl = 0;
    double median_disconnect = engine::kNever;
    double mean_delivered = 0;
};

/// Mean and sample standard deviation per (r_sense, r_tx, routing). Independent of input order.
std::vector<CellStats> aggregate(std::vector<CellResult> results);

struct NeighborRow {
    std::uint64_t seed = 0;
    double r_tx = 0;
    std::uint32_t max_neighbors = 0;
    double mean_neighbors = 0;
};

std::vector<NeighborRow> neighbor_report(const SweepSpec& spec);

struct SweepResult {
    std::vector<CellResult> cells;  // in expand() order
    std::vector<CellStats> stats;
    std::vector<NeighborRow> neighbors;
};

/// Runs every cell on up to `jobs` threads. A failing cell is recorded, not fatal.
/// With `out` set, writes sweep.csv, sweep_aggregate.csv, neighbors.csv (and cells/ when asked).
SweepResult run_sweep(const SweepSpec& spec, unsigned jobs, const std::optional<std::filesystem::path>& out);

void write_sweep(std::ostream& out, const std::vector<CellResult>& cells);
void write_aggregate(std::ostream& out, const std::vector<CellStats>& stats);
void write_neighbors(std::ostream& out, const std::vector<NeighborRow>& rows);

}  // namespace heda::experiment
