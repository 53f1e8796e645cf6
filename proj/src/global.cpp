#include "heda/global.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace heda::global {

namespace {

bool is_active(std::span<const char> active, std::size_t i) { return active.empty() || active[i]; }

std::vector<Point> all_points(const Deployment& d)
{
    std::vector<Point> pts = d.nodes;
    pts.insert(pts.end(), d.sinks.begin(), d.sinks.end());
    return pts;
}

}  // namespace

bool Topology::any_path() const
{
    for (std::size_t i = 0; i < node_count; ++i)
        if (active[i] && hops[i] != kUnreachable)
            return true;
    return false;
}

Topology build_topology(const Deployment& d, std::span<const char> active, double r_tx)
{
    if (d.sinks.empty())
        throw ConstraintError("deployment needs at least one sink");
    const std::size_t n = d.nodes.size();
    Topology t;
    t.node_count = n;
    t.sink_count = d.sinks.size();
    t.r_tx = r_tx;
    t.active.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        t.active[i] = is_active(active, i) ? 1 : 0;
    t.sender.resize(n);
    t.receiver.resize(n);
    t.accessible.assign(n, 0);
    t.accessible_d2.assign(n, 0.0);
    t.sink_distance.assign(n, std::numeric_limits<double>::infinity());
    t.hops.assign(n, kUnreachable);

    for (std::size_t i = 0; i < n; ++i) {
        for (const Point& s : d.sinks)
            t.sink_distance[i] = std::min(t.sink_distance[i], distance(d.nodes[i], s));
        if (t.active[i])
            ++t.active_count;
    }

    const double r2 = r_tx * r_tx;
    for (NodeId i = 0; i < n; ++i) {
        if (!t.active[i])
            continue;
        for (NodeId j = 0; j < n; ++j) {
            if (j == i || !t.active[j])
                continue;
            const double d2 = squared_distance(d.nodes[i], d.nodes[j]);
            if (d2 > r2)
                continue;
            ++t.accessible[i];
            t.accessible_d2[i] += d2;
            if (t.sink_distance[j] < t.sink_distance[i]) {
                t.sender[i].push_back({j, std::sqrt(d2)});
                t.receiver[j].push_back(i);
            }
        }
        for (std::size_t s = 0; s < d.sinks.size(); ++s) {
            const double d2 = squared_distance(d.nodes[i], d.sinks[s]);
            if (d2 > r2)
                continue;
            ++t.accessible[i];
            t.accessible_d2[i] += d2;
            if (t.sink_distance[i] > 0.0)
                t.sender[i].push_back({static_cast<NodeId>(n + s), std::sqrt(d2)});
        }
    }

    // Multi-source BFS from the sinks over reversed sender edges.
    std::vector<std::vector<NodeId>> into_sink(d.sinks.size());
    for (NodeId i = 0; i < n; ++i)
        for (const Target& tg : t.sender[i])
            if (t.is_sink(tg.id))
                into_sink[tg.id - n].push_back(i);
    std::deque<NodeId> queue;
    for (const auto& feeders : into_sink)
        for (NodeId i : feeders)
            if (t.hops[i] == kUnreachable) {
                t.hops[i] = 1;
                queue.push_back(i);
            }
    while (!queue.empty()) {
        const NodeId j = queue.front();
        queue.pop_front();
        for (NodeId i : t.receiver[j])
            if (t.hops[i] == kUnreachable) {
                t.hops[i] = t.hops[j] + 1;
                queue.push_back(i);
            }
    }
    return t;
}

double topology_energy(const Topology& topo, const Deployment& d, NodeId node, double b_topo,
                       const radio::RadioParams& radio)
{
    // Per-link sum, kept separate from the cached aggregate so the two can cross-check.
    double sum = 0.0;
    const double r2 = topo.r_tx * topo.r_tx;
    for (NodeId j = 0; j < d.nodes.size(); ++j) {
        if (j == node || !topo.active[j])
            continue;
        const double d2 = squared_distance(d.nodes[node], d.nodes[j]);
        if (d2 <= r2)
            sum += radio::tx_energy_sq(d2, b_topo, radio) + radio::rx_energy(b_topo, radio);
    }
    for (const Point& s : d.sinks) {
        const double d2 = squared_distance(d.nodes[node], s);
        if (d2 <= r2)
            sum += radio::tx_energy_sq(d2, b_topo, radio) + radio::rx_energy(b_topo, radio);
    }
    return sum;
}

Target argmax(std::span<const ScoredCandidate> candidates)
{
    if (candidates.empty())
        throw VoidError("no sender edge");
    const ScoredCandidate* best = &candidates.front();
    for (const auto& c : candidates.subspan(1))
        if (c.score > best->score || (c.score == best->score && c.target.id < best->target.id))
            best = &c;
    return best->target;
}

std::uint32_t busy_degree(const NodeState& node, std::int64_t now_tick, std::int64_t window_ticks)
{
    std::uint32_t count = 0;
    for (auto it = node.busy_events.rbegin(); it != node.busy_events.rend(); ++it) {
        if (*it <= now_tick - window_ticks)
            break;
        if (*it <= now_tick)
            ++count;
    }
    return count;
}

std::vector<ScoredCandidate> selective_scores(NodeId node, const Topology& topo, std::span<const NodeState> states,
                                              std::span<const std::uint32_t> busy, double w_e, double w_b)
{
    const auto& targets = topo.sender.at(node);
    std::uint32_t max_busy = 0;
    for (const Target& tg : targets)
        if (!topo.is_sink(tg.id))
            max_busy = std::max(max_busy, busy[tg.id]);
    const double norm = std::max(1.0, static_cast<double>(max_busy));
    std::vector<ScoredCandidate> scored;
    scored.reserve(targets.size());
    for (const Target& tg : targets) {
        double fraction = 1.0;
        double load = 0.0;
        if (!topo.is_sink(tg.id)) {
            const NodeState& s = states[tg.id];
            fraction = s.initial > 0 ? s.residual / s.initial : 0.0;
            load = static_cast<double>(busy[tg.id]) / norm;
        }
        scored.push_back({tg, w_e * fraction - w_b * load});
    }
    return scored;
}

Target next_hop_selective(NodeId node, const Topology& topo, std::span<const NodeState> states,
                          std::span<const std::uint32_t> busy, double w_e, double w_b)
{
    const auto scored = selective_scores(node, topo, states, busy, w_e, w_b);
    return argmax(scored);
}

Target next_hop_random(NodeId node, const Topology& topo, Rng& rng)
{
    const auto& targets = topo.sender.at(node);
    if (targets.empty())
        throw VoidError("no sender edge");
    return targets[rng.index(targets.size())];
}

Result evaluate(double topo, double rout, double global, double pktls)
{
    Result r;
    r.topo = topo;
    r.rout = rout;
    r.global = global;
    r.pktls = pktls;
    r.total = topo + rout + global + pktls;
    r.has_path = check(rout > 0.0);
    r.routing_dominates = strictly_greater(rout, topo + global + pktls);
    return r;
}

Result global_energy(const GlobalTick& tick, const SimConfig& config)
{
    const auto radio = radio::params(config);
    double topo = 0, rout = 0, global = 0, pktls = 0;
    for (const auto& l : tick.topo_links)
        topo += radio::tx_energy(l.distance, l.bits, radio) + radio::rx_energy(l.bits, radio);
    for (const auto& f : tick.forwarded)
        rout += radio::tx_energy(f.distance, f.bits, radio);
    rout += radio::rx_energy(tick.received_bits, radio);
    for (const auto& o : tick.overhead)
        global += radio::tx_energy(o.distance, o.bits, radio);
    global += radio::rx_energy(tick.overhead_rx_bits, radio);
    for (const auto& l : tick.loss_retx)
        pktls += radio::tx_energy(l.distance, l.bits, radio);
    return evaluate(topo, rout, global, pktls);
}

namespace {

// Smallest r with r * r >= d2, so that the in-range test d2 <= r * r admits the link.
double covering_radius(double d2)
{
    double r = std::sqrt(d2);
    while (r * r < d2)
        r = std::nextafter(r, std::numeric_limits<double>::infinity());
    for (double lower = std::nextafter(r, 0.0); r > 0 && lower * lower >= d2; lower = std::nextafter(r, 0.0))
        r = lower;
    return r;
}

}  // namespace

double min_connectivity_radius(const Deployment& d)
{
    const auto pts = all_points(d);
    if (pts.size() < 2)
        throw ConstraintError("min_connectivity_radius needs at least 2 points");
    // Dense Prim; the bottleneck of the MST is the answer.
    const std::size_t n = pts.size();
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<char> in_tree(n, 0);
    best[0] = 0.0;
    double bottleneck2 = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t u = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!in_tree[i] && (u == n || best[i] < best[u]))
                u = i;
        in_tree[u] = 1;
        bottleneck2 = std::max(bottleneck2, best[u]);
        for (std::size_t v = 0; v < n; ++v)
            if (!in_tree[v])
                best[v] = std::min(best[v], squared_distance(pts[u], pts[v]));
    }
    return covering_radius(bottleneck2);
}

bool proximity_connected(const Deployment& d, std::span<const char> active, double r_tx)
{
    std::vector<Point> pts;
    for (std::size_t i = 0; i < d.nodes.size(); ++i)
        if (is_active(active, i))
            pts.push_back(d.nodes[i]);
    pts.insert(pts.end(), d.sinks.begin(), d.sinks.end());
    if (pts.size() <= 1)
        return true;
    const double r2 = r_tx * r_tx;
    std::vector<char> seen(pts.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < pts.size(); ++v)
            if (!seen[v] && squared_distance(pts[u], pts[v]) <= r2) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
    }
    return reached == pts.size();
}

}  // namespace heda::global
