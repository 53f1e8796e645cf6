#pragma once

#include <span>
#include <vector>

#include "heda/radio.hpp"
#include "heda/rng.hpp"
#include "heda/types.hpp"

// Network-wide topology and routing energy, greedy geographic next-hop policies,
// and the connectivity bound.
namespace heda::global {

/// Link target in the unified id space: sensors are [0, node_count), sink s is node_count + s.
struct Target {
    NodeId id = 0;
    double distance = 0;
    bool operator==(const Target&) const = default;
};

/// Immutable snapshot between rebuilds. Sender edges only point at strictly nearer-to-sink
/// targets; receiver edges are their reverse.
struct Topology {
    std::size_t node_count = 0;
    std::size_t sink_count = 0;
    double r_tx = 0;
    std::vector<char> active;
    std::vector<std::vector<Target>> sender;      // sorted by id
    std::vector<std::vector<NodeId>> receiver;    // per sensor, sorted by id
    std::vector<std::uint32_t> accessible;        // a_i: in-range active sensors and sinks
    std::vector<double> accessible_d2;            // sum of squared distances to those
    std::vector<double> sink_distance;            // d_iD, nearest sink
    std::vector<std::uint32_t> hops;              // h_iD, kUnreachable when no path
    std::uint32_t active_count = 0;               // n(t)

    bool is_sink(NodeId id) const { return id >= node_count; }
    /// True while at least one active sensor has a finite hop count.
    bool any_path() const;
};

/// `active` holds one flag per sensor; empty means all active. Throws ConstraintError without sinks.
Topology build_topology(const Deployment& deployment, std::span<const char> active, double r_tx);

/// Topology establishment cost of one node: sum over accessible nodes of tx(d_iA, b_topo) + rx(b_topo).
double topology_energy(const Topology& topo, const Deployment& deployment, NodeId node, double b_topo,
                       const radio::RadioParams& radio);

struct ScoredCandidate {
    Target target;
    double score = 0;
};

/// Highest score, ties to the smallest id. Throws VoidError on an empty list.
Target argmax(std::span<const ScoredCandidate> candidates);

/// Packets forwarded by `node` in the trailing window (ticks in (now - window, now]).
std::uint32_t busy_degree(const NodeState& node, std::int64_t now_tick, std::int64_t window_ticks);

struct RoutingDecision {
    std::uint64_t packet = 0;
    NodeId origin = 0;
    Target chosen;
    RoutingPolicy policy = RoutingPolicy::Selective;
    std::vector<ScoredCandidate> candidates;
};

/// Scores every sender-edge target with w_e * residual/initial - w_b * busy / max(1, max busy).
/// Sinks score as full, idle nodes. `busy` has one entry per sensor.
std::vector<ScoredCandidate> selective_scores(NodeId node, const Topology& topo, std::span<const NodeState> states,
                                              std::span<const std::uint32_t> busy, double w_e, double w_b);

/// Throws VoidError when the node has no sender edge.
Target next_hop_selective(NodeId node, const Topology& topo, std::span<const NodeState> states,
                          std::span<const std::uint32_t> busy, double w_e, double w_b);

/// Uniform over sender-edge targets. Throws VoidError when there are none.
Target next_hop_random(NodeId node, const Topology& topo, Rng& rng);

struct Transfer {
    double distance = 0;
    double bits = 0;
};

/// Global-constituent activity of one node over an interval.
struct GlobalTick {
    std::vector<Transfer> topo_links;    // accessible nodes at (re)build, with b_topo
    std::vector<Transfer> forwarded;     // data packets sent
    double received_bits = 0;            // data bits received for forwarding
    std::vector<Transfer> overhead;      // periodic control broadcasts
    double overhead_rx_bits = 0;
    std::vector<Transfer> loss_retx;     // retransmissions after congestion loss
};

struct Result {
    double total = 0;
    double topo = 0, rout = 0, global = 0, pktls = 0;
    Check has_path = Check::False;              // e(rout) > 0
    Check routing_dominates = Check::Degenerate;  // e(rout) > e(topo) + e(global) + e(pktls)
};

Result global_energy(const GlobalTick& tick, const SimConfig& config);

/// The two global feasibility checks from already-computed sub-energies.
Result evaluate(double topo, double rout, double global, double pktls);

/// Bottleneck edge of the Euclidean MST over sensors and sinks: the smallest r_tx
/// for which the undirected proximity graph (links with d^2 <= r_tx^2) is connected.
/// Needs >= 2 points.
double min_connectivity_radius(const Deployment& deployment);

/// Whether active sensors plus all sinks form one connected component at r_tx.
bool proximity_connected(const Deployment& deployment, std::span<const char> active, double r_tx);

}  // namespace heda::global
