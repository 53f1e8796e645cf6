#pragma once

#include <span>
#include <vector>

#include "heda/rng.hpp"
#include "heda/types.hpp"

// Neighborhood maintenance energy: monitoring, security, local protocol,
// collision retransmission, overhearing and idle listening.
namespace heda::local {

struct Neighbor {
    NodeId id = 0;
    double distance = 0;
    bool operator==(const Neighbor&) const = default;
};

/// Active sensor nodes within r_tx of the owner (sorted by id). Sinks in range are
/// kept apart: they are valid link targets but do not count as neighbors.
struct NeighborSet {
    NodeId owner = 0;
    std::vector<Neighbor> members;
    std::vector<Neighbor> sinks;

    std::size_t count() const { return members.size(); }
    const Neighbor* find(NodeId id) const;
    const Neighbor* find_sink(std::uint32_t sink) const;
};

/// `active` has one flag per sensor node; an empty span means all active.
NeighborSet neighbors(const Deployment& deployment, std::span<const char> active, NodeId node, double r_tx);

struct Exchange {
    NodeId neighbor = 0;
    double bits = 0;
};

struct Retransmission {
    NodeId peer = 0;       // neighbor id, or sink index when to_sink
    bool to_sink = false;
    double bits = 0;
};

struct LocalTick {
    std::vector<Exchange> mon;
    std::vector<Exchange> sec;
    std::vector<Exchange> proto;
    std::vector<Retransmission> retransmissions;
    double b_ohear = 0;
    double idle_time = 0;
    double net_dens = 0;  // active nodes per m^2
};

struct Result {
    double total = 0;
    double mon = 0, sec = 0, local = 0, coll = 0, ohear = 0, idle = 0;
    Check has_neighbor = Check::False;         // n_i >= 1
    Check protocol_bound = Check::Degenerate;  // e(local) < e(idle) + e(coll) + e(ohear)
};

/// Throws ConstraintError if an exchange names a non-neighbor or a field is negative.
Result local_energy(const NeighborSet& nset, const LocalTick& tick, const SimConfig& config);

/// min(1, kappa * n_i * g_tx * net_dens)
double collision_probability(std::size_t n_i, double g_tx, double net_dens, double kappa);

/// Consecutive collisions of one transmission, capped at max_retries.
std::uint32_t collision_outcome(std::size_t n_i, double g_tx, double net_dens, double kappa,
                                std::uint32_t max_retries, Rng& rng);

struct OverhearCharge {
    NodeId node = 0;
    double bits = 0;
    bool operator==(const OverhearCharge&) const = default;
};

/// Every active node in range of the sender other than the intended receiver.
std::vector<OverhearCharge> overhearing_charges(const NeighborSet& sender_set, NodeId receiver, double bits);
std::vector<OverhearCharge> overhearing_charges(NodeId sender, NodeId receiver, double bits,
                                                const Deployment& deployment, std::span<const char> active,
                                                double r_tx);

}  // namespace heda::local
