#include "heda/local.hpp"

#include <algorithm>
#include <cmath>

#include "heda/radio.hpp"

namespace heda::local {

namespace {

const Neighbor* find_in(const std::vector<Neighbor>& list, NodeId id)
{
    auto it = std::lower_bound(list.begin(), list.end(), id,
                               [](const Neighbor& n, NodeId value) { return n.id < value; });
    return it != list.end() && it->id == id ? &*it : nullptr;
}

bool is_active(std::span<const char> active, std::size_t i) { return active.empty() || active[i]; }

void require_bits(double bits)
{
    if (!std::isfinite(bits) || bits < 0)
        throw ConstraintError("exchange bits must be >= 0");
}

}  // namespace

const Neighbor* NeighborSet::find(NodeId id) const { return find_in(members, id); }
const Neighbor* NeighborSet::find_sink(std::uint32_t sink) const { return find_in(sinks, sink); }

NeighborSet neighbors(const Deployment& d, std::span<const char> active, NodeId node, double r_tx)
{
    NeighborSet set;
    set.owner = node;
    const Point self = d.nodes.at(node);
    const double r2 = r_tx * r_tx;
    for (NodeId j = 0; j < d.nodes.size(); ++j) {
        if (j == node || !is_active(active, j))
            continue;
        const double d2 = squared_distance(self, d.nodes[j]);
        if (d2 <= r2)
            set.members.push_back({j, std::sqrt(d2)});
    }
    for (std::uint32_t s = 0; s < d.sinks.size(); ++s) {
        const double d2 = squared_distance(self, d.sinks[s]);
        if (d2 <= r2)
            set.sinks.push_back({s, std::sqrt(d2)});
    }
    return set;
}

Result local_energy(const NeighborSet& nset, const LocalTick& tick, const SimConfig& config)
{
    const auto radio = radio::params(config);
    Result r;
    auto exchanges = [&](const std::vector<Exchange>& list) {
        double sum = 0.0;
        for (const auto& ex : list) {
            require_bits(ex.bits);
            const Neighbor* n = nset.find(ex.neighbor);
            if (!n)
                throw ConstraintError("exchange names a non-neighbor (node " + std::to_string(ex.neighbor) + ")");
            sum += radio::tx_energy(n->distance, ex.bits, radio) + radio::rx_energy(ex.bits, radio);
        }
        return sum;
    };
    r.mon = exchanges(tick.mon);
    r.sec = exchanges(tick.sec);
    r.local = exchanges(tick.proto);
    for (const auto& re : tick.retransmissions) {
        require_bits(re.bits);
        const Neighbor* n = re.to_sink ? nset.find_sink(re.peer) : nset.find(re.peer);
        if (!n)
            throw ConstraintError("retransmission names a node out of range");
        r.coll += radio::tx_energy(n->distance, re.bits, radio);
    }
    require_bits(tick.b_ohear);
    if (!std::isfinite(tick.idle_time) || tick.idle_time < 0)
        throw ConstraintError("idle_time must be >= 0");
    r.ohear = radio::rx_energy(tick.b_ohear, radio);
    r.idle = config.power(UnitKind::TransceiverDsp, UnitState::Idle) * tick.idle_time;
    r.total = r.mon + r.sec + r.local + r.coll + r.ohear + r.idle;
    r.has_neighbor = check(nset.count() >= 1);
    // e(local) < rest  <=>  rest > e(local)
    r.protocol_bound = strictly_greater(r.idle + r.coll + r.ohear, r.local);
    return r;
}

double collision_probability(std::size_t n_i, double g_tx, double net_dens, double kappa)
{
    return std::min(1.0, kappa * static_cast<double>(n_i) * g_tx * net_dens);
}

std::uint32_t collision_outcome(std::size_t n_i, double g_tx, double net_dens, double kappa,
                                std::uint32_t max_retries, Rng& rng)
{
    const double p = collision_probability(n_i, g_tx, net_dens, kappa);
    if (p <= 0.0)
        return 0;
    std::uint32_t retries = 0;
    while (retries < max_retries && rng.bernoulli(p))
        ++retries;
    return retries;
}

std::vector<OverhearCharge> overhearing_charges(const NeighborSet& sender_set, NodeId receiver, double bits)
{
    std::vector<OverhearCharge> out;
    out.reserve(sender_set.members.size());
    for (const auto& n : sender_set.members)
        if (n.id != receiver)
            out.push_back({n.id, bits});
    return out;
}

std::vector<OverhearCharge> overhearing_charges(NodeId sender, NodeId receiver, double bits,
                                                const Deployment& deployment, std::span<const char> active,
                                                double r_tx)
{
    return overhearing_charges(neighbors(deployment, active, sender, r_tx), receiver, bits);
}

}  // namespace heda::local
