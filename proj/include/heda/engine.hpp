#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "heda/accounting.hpp"
#include "heda/ledger.hpp"
#include "heda/rng.hpp"
#include "heda/types.hpp"

// Deployment generation and the deterministic discrete-event loop.
namespace heda::engine {

/// Sensors uniform over the area, sinks uniform over sink_region. Same seed, same positions.
/// Throws ConstraintError("empty network") or ("sink_region outside area").
Deployment deploy(const SimConfig& config, std::uint64_t seed);

struct SensingEvent {
    std::int64_t tick = 0;
    Point location{};
    bool operator==(const SensingEvent&) const = default;
};

/// Environment events at field-wide rate g_sense, on the tick grid, uniform over the area.
/// At most one event per tick: the arrival process is the Bernoulli thinning of a
/// Poisson process with p = g_sense * tick per tick.
std::vector<SensingEvent> generate_events(const SimConfig& config, Rng& rng);

/// Active sensors within r_sense of the event, ascending ids.
std::vector<NodeId> detecting_nodes(const Deployment& deployment, std::span<const char> active, Point location,
                                    double r_sense);

inline constexpr double kNever = std::numeric_limits<double>::infinity();

struct Sample {
    double time = 0;
    double total_incl = 0;  // every node's residual, inactive ones frozen
    double total_excl = 0;  // active nodes only
    std::uint32_t active_count = 0;
    accounting::ConstituentTotals cumulative{};  // network-wide raw joules per constituent
    std::size_t ledger_cursor = 0;               // ledger entries charged so far
    std::vector<double> residual;
    std::vector<char> active;
};

/// Builds one time-series row from node states.
Sample sample_metrics(std::span<const NodeState> nodes, double t);

struct Deactivation {
    double time = 0;
    NodeId node = 0;
    double deficit = 0;
};

struct PacketCounts {
    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped_void = 0;  // greedy forwarding found no sender edge
    std::uint64_t dropped_dead = 0;  // holder or receiver ran out of energy
    std::uint64_t lost = 0;          // congestion loss survived no retransmission
    std::uint64_t in_flight = 0;     // still queued at the horizon

    std::uint64_t dropped() const { return dropped_void + dropped_dead; }
};

struct RunResult {
    SimConfig config;
    std::uint64_t seed = 0;
    Deployment deployment;
    std::vector<Sample> samples;
    std::vector<LedgerEntry> ledger;
    std::vector<accounting::ConstraintRow> constraints;
    std::vector<Deactivation> deactivations;
    std::vector<EnergyBreakdown> totals;  // cumulative per node
    PacketCounts packets;
    double disconnect_time = kNever;  // first instant no active sensor has a path to a sink
    double partition_time = kNever;   // first instant active sensors and sinks are not one component
    std::uint32_t max_neighbors_at_start = 0;

    const Sample& final_sample() const { return samples.back(); }
};

/// Runs the configured scenario with a deployment and event stream derived from `seed`.
RunResult run(const SimConfig& config, std::uint64_t seed);

/// Runs a fixed deployment and event stream; `seed` drives collision, routing and loss draws.
RunResult run(const SimConfig& config, std::uint64_t seed, Deployment deployment,
              std::vector<SensingEvent> events);

/// Largest sensor neighbor count at r_tx with every node active.
std::uint32_t max_neighbor_count(const Deployment& deployment, double r_tx);

}  // namespace heda::engine
