#include "heda/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <tuple>

#include "heda/global.hpp"
#include "heda/individual.hpp"
#include "heda/local.hpp"
#include "heda/peripheral.hpp"
#include "heda/radio.hpp"

namespace heda::engine {

Deployment deploy(const SimConfig& config, std::uint64_t seed)
{
    if (config.node_count == 0)
        throw ConstraintError("empty network");
    const Rect& r = config.sink_region;
    if (r.x_min < 0 || r.y_min < 0 || r.x_max > config.area_width || r.y_max > config.area_height ||
        r.x_min > r.x_max || r.y_min > r.y_max)
        throw ConstraintError("sink_region outside area");
    validate(config);

    Rng rng(seed, Stream::Deployment);
    Deployment d;
    d.seed = seed;
    d.nodes.reserve(config.node_count);
    for (std::uint32_t i = 0; i < config.node_count; ++i) {
        const double x = rng.uniform(0.0, config.area_width);
        const double y = rng.uniform(0.0, config.area_height);
        d.nodes.push_back({x, y});
    }
    for (std::uint32_t s = 0; s < config.sink_count; ++s) {
        const double x = rng.uniform(r.x_min, r.x_max);
        const double y = rng.uniform(r.y_min, r.y_max);
        d.sinks.push_back({x, y});
    }
    return d;
}

namespace {

std::int64_t to_ticks(double seconds, double tick) { return std::llround(seconds / tick); }

std::int64_t period_ticks(double seconds, double tick) { return std::max<std::int64_t>(1, to_ticks(seconds, tick)); }

}  // namespace

std::vector<SensingEvent> generate_events(const SimConfig& config, Rng& rng)
{
    std::vector<SensingEvent> events;
    const double p = config.g_sense * config.tick;
    if (p <= 0)
        return events;
    const std::int64_t horizon = to_ticks(config.horizon, config.tick);
    const double log_miss = p < 1 ? std::log1p(-p) : 0.0;
    std::int64_t t = 0;
    while (true) {
        // Geometric gap between successes of the per-tick Bernoulli trial.
        std::int64_t gap = 1;
        if (p < 1) {
            const double u = rng.uniform();
            const double g = std::floor(std::log1p(-u) / log_miss);
            if (g >= static_cast<double>(horizon))
                break;
            gap += static_cast<std::int64_t>(g);
        }
        t += gap;
        if (t > horizon)
            break;
        const double x = rng.uniform(0.0, config.area_width);
        const double y = rng.uniform(0.0, config.area_height);
        events.push_back({t, {x, y}});
    }
    return events;
}

std::vector<NodeId> detecting_nodes(const Deployment& d, std::span<const char> active, Point location, double r_sense)
{
    std::vector<NodeId> out;
    const double r2 = r_sense * r_sense;
    for (NodeId i = 0; i < d.nodes.size(); ++i)
        if ((active.empty() || active[i]) && squared_distance(d.nodes[i], location) <= r2)
            out.push_back(i);
    return out;
}

Sample sample_metrics(std::span<const NodeState> nodes, double t)
{
    Sample s;
    s.time = t;
    s.residual.reserve(nodes.size());
    s.active.reserve(nodes.size());
    for (const auto& n : nodes) {
        s.total_incl += n.residual;
        if (n.active) {
            s.total_excl += n.residual;
            ++s.active_count;
        }
        s.residual.push_back(n.residual);
        s.active.push_back(n.active ? 1 : 0);
    }
    return s;
}

std::uint32_t max_neighbor_count(const Deployment& deployment, double r_tx)
{
    std::uint32_t best = 0;
    for (NodeId i = 0; i < deployment.nodes.size(); ++i)
        best = std::max<std::uint32_t>(best, local::neighbors(deployment, {}, i, r_tx).count());
    return best;
}

namespace {

enum class Phase : std::uint8_t { Sense, Send, Global, Flush, Sample };

struct Event {
    std::int64_t tick;
    Phase phase;
    std::uint64_t seq;
    std::uint64_t ref;
};

struct Later {
    bool operator()(const Event& a, const Event& b) const
    {
        return std::tie(a.tick, a.phase, a.seq) > std::tie(b.tick, b.phase, b.seq);
    }
};

struct UnitActivity {
    std::int64_t busy_ticks = 0;
    std::int64_t episodes = 0;
    std::int64_t last_tick = -2;  // survives interval boundaries
};

struct Packet {
    std::uint64_t id;
    std::int64_t enqueued;
};

// What a node has accrued since its last interval flush.
struct Pending {
    std::array<UnitActivity, kUnitCount> units;
    individual::Workload work;
    double retx_d2 = 0;
    double retx_count = 0;
    double b_ohear = 0;
    EnergyBreakdown interval;
    std::int64_t start = 0;

    void reset(std::int64_t now)
    {
        for (auto& u : units) {
            u.busy_ticks = 0;
            u.episodes = 0;
        }
        work = {};
        retx_d2 = 0;
        retx_count = 0;
        b_ohear = 0;
        interval = {};
        start = now;
    }
};

class Simulation {
public:
    Simulation(const SimConfig& config, std::uint64_t seed, Deployment deployment, std::vector<SensingEvent> events)
        : c_(config),
          radio_(radio::params(config)),
          events_(std::move(events)),
          collision_rng_(seed, Stream::Collision),
          routing_rng_(seed, Stream::Routing),
          loss_rng_(seed, Stream::Loss)
    {
        validate(c_);
        if (deployment.nodes.size() != c_.node_count)
            throw ConstraintError("deployment does not match node_count");
        if (deployment.sinks.empty())
            throw ConstraintError("no sinks");
        out_.config = c_;
        out_.seed = seed;
        out_.deployment = std::move(deployment);
        horizon_ = to_ticks(c_.horizon, c_.tick);
        monitor_ = period_ticks(c_.monitor_period, c_.tick);
        global_ = period_ticks(c_.global_period, c_.tick);
        sample_ = period_ticks(c_.sample_period, c_.tick);
        window_ = period_ticks(c_.busy_window, c_.tick);

        const std::size_t n = c_.node_count;
        nodes_.resize(n);
        for (NodeId i = 0; i < n; ++i) {
            nodes_[i].id = i;
            nodes_[i].position = dep().nodes[i];
            nodes_[i].residual = c_.e_initial;
            nodes_[i].initial = c_.e_initial;
        }
        active_.assign(n, 1);
        active_count_ = static_cast<std::uint32_t>(n);
        pending_.resize(n);
        queues_.resize(n);
        scheduled_.assign(n, 0);
        busy_.assign(n, 0);
        nsets_.resize(n);
        out_.totals.resize(n);
    }

    RunResult run()
    {
        take_sample(0);
        rebuild_topology(0);
        out_.max_neighbors_at_start = 0;
        for (const auto& s : nsets_)
            out_.max_neighbors_at_start = std::max<std::uint32_t>(out_.max_neighbors_at_start, s.count());
        for (NodeId i = 0; i < c_.node_count; ++i)
            if (active_[i])
                charge_topology(i, 0, {CauseKind::TopologyBuild, 0});
        process_deaths(0);

        for (std::size_t e = 0; e < events_.size(); ++e)
            if (events_[e].tick >= 1 && events_[e].tick <= horizon_)
                push(events_[e].tick, Phase::Sense, e);
        for (std::int64_t t = global_; t <= horizon_; t += global_)
            push(t, Phase::Global, 0);
        for (std::int64_t t = monitor_; t <= horizon_; t += monitor_)
            push(t, Phase::Flush, 0);
        if (horizon_ % monitor_ != 0)
            push(horizon_, Phase::Flush, 0);
        for (std::int64_t t = sample_; t <= horizon_; t += sample_)
            push(t, Phase::Sample, 0);

        while (!queue_.empty()) {
            const Event ev = queue_.top();
            queue_.pop();
            if (active_count_ == 0 && ev.phase != Phase::Sample)
                continue;
            switch (ev.phase) {
            case Phase::Sense: on_sense(ev.tick, events_[ev.ref]); break;
            case Phase::Send: on_send(ev.tick, static_cast<NodeId>(ev.ref)); break;
            case Phase::Global: on_global(ev.tick); break;
            case Phase::Flush: on_flush(ev.tick); break;
            case Phase::Sample: take_sample(ev.tick); break;
            }
            process_deaths(ev.tick);
        }
        for (const auto& q : queues_)
            out_.packets.in_flight += q.size();
        return std::move(out_);
    }

private:
    const Deployment& dep() const { return out_.deployment; }
    double seconds(std::int64_t tick) const { return static_cast<double>(tick) * c_.tick; }

    void push(std::int64_t tick, Phase phase, std::uint64_t ref) { queue_.push({tick, phase, seq_++, ref}); }

    void schedule_send(NodeId n, std::int64_t tick)
    {
        if (scheduled_[n] || tick > horizon_)
            return;
        scheduled_[n] = 1;
        push(tick, Phase::Send, n);
    }

    void take_sample(std::int64_t tick)
    {
        Sample s = sample_metrics(nodes_, seconds(tick));
        s.cumulative = cumulative_;
        s.ledger_cursor = out_.ledger.size();
        out_.samples.push_back(std::move(s));
    }

    void touch(NodeId n, UnitKind u, std::int64_t tick)
    {
        UnitActivity& a = pending_[n].units[index(u)];
        if (a.last_tick == tick)
            return;
        ++a.busy_ticks;
        if (a.last_tick != tick - 1)
            ++a.episodes;
        a.last_tick = tick;
    }

    // Applies one ledger entry to its node. Returns false when the node could not fund it.
    bool charge(LedgerEntry e)
    {
        if (e.joules == 0.0)
            return true;
        NodeState& node = nodes_[e.node];
        const std::size_t ci = index(e.constituent());
        const double weighted = c_.lambda[ci] * e.joules;
        const double before = node.residual;
        auto u = accounting::update_residual(std::move(node), weighted, e.sub.kind == ChargeKind::Harvest);
        node = std::move(u.node);
        if (u.deactivated) {
            deactivate(e.node, e.time, u.deficit);
            return false;
        }
        record(e);
        if (e.sub.kind == ChargeKind::Harvest && c_.lambda[ci] > 0) {
            const double refused = (-weighted - (node.residual - before)) / c_.lambda[ci];
            if (refused > 0) {
                LedgerEntry spill = e;
                spill.sub = {ChargeKind::Spill};
                spill.joules = refused;
                spill.bits = spill.count = spill.d2 = spill.duration = 0;
                record(spill);
            }
        }
        return true;
    }

    void record(const LedgerEntry& e)
    {
        accounting::accumulate(pending_[e.node].interval, e);
        accounting::accumulate(out_.totals[e.node], e);
        cumulative_[index(e.constituent())] += e.joules;
        out_.ledger.push_back(e);
    }

    LedgerEntry entry(std::int64_t tick, NodeId n, Subcomponent sub, double joules, Cause cause) const
    {
        LedgerEntry e;
        e.time = seconds(tick);
        e.node = n;
        e.sub = sub;
        e.joules = joules;
        e.cause = cause;
        return e;
    }

    void deactivate(NodeId n, double time, double deficit)
    {
        active_[n] = 0;
        --active_count_;
        out_.deactivations.push_back({time, n, deficit});
        out_.constraints.push_back(accounting::evaluate_constraints(time, n, pending_[n].interval, nsets_[n].count(),
                                                                    false, c_.lambda));
        out_.packets.dropped_dead += queues_[n].size();
        queues_[n].clear();
        dead_.push_back(n);
    }

    void rebuild_topology(std::int64_t tick)
    {
        topo_ = global::build_topology(dep(), active_, c_.r_tx);
        for (NodeId i = 0; i < c_.node_count; ++i)
            nsets_[i] = active_[i] ? local::neighbors(dep(), active_, i, c_.r_tx) : local::NeighborSet{i, {}, {}};
        const double t = seconds(tick);
        if (out_.disconnect_time == kNever && !topo_.any_path())
            out_.disconnect_time = t;
        if (out_.partition_time == kNever && !global::proximity_connected(dep(), active_, c_.r_tx))
            out_.partition_time = t;
    }

    void charge_topology(NodeId n, std::int64_t tick, Cause cause)
    {
        LedgerEntry e = entry(tick, n, {ChargeKind::Topo},
                              global::topology_energy(topo_, dep(), n, c_.bits.topo, radio_), cause);
        e.bits = c_.bits.topo;
        e.count = topo_.accessible[n];
        e.d2 = topo_.accessible_d2[n];
        charge(e);
    }

    // Rebuilds after deactivations; the dead nodes' former neighbors pay to re-establish links.
    void process_deaths(std::int64_t tick)
    {
        while (!dead_.empty()) {
            std::vector<NodeId> dead;
            dead.swap(dead_);
            std::vector<std::pair<NodeId, NodeId>> affected;  // (neighbor, smallest dead id it lost)
            for (NodeId d : dead)
                for (const auto& m : nsets_[d].members)
                    affected.emplace_back(m.id, d);
            std::sort(affected.begin(), affected.end());
            rebuild_topology(tick);
            NodeId last = kNoNode;
            for (const auto& [m, d] : affected) {
                if (m == last)
                    continue;
                last = m;
                if (active_[m])
                    charge_topology(m, tick, {CauseKind::TopologyRebuild, d});
            }
        }
    }

    void on_sense(std::int64_t tick, const SensingEvent& ev)
    {
        for (NodeId n : detecting_nodes(dep(), active_, ev.location, c_.r_sense)) {
            Pending& p = pending_[n];
            touch(n, UnitKind::Sensor, tick);
            p.work.sense_active_time += c_.tick;
            p.work.b_sense += c_.bits.data;
            touch(n, UnitKind::Processor, tick);
            p.work.b_proc += c_.bits.data;
            touch(n, UnitKind::Memory, tick);
            p.work.n_write += 1;
            p.work.b_store = c_.bits.data;
            queues_[n].push_back({next_packet_++, tick});
            ++out_.packets.generated;
            schedule_send(n, tick + 1);
        }
    }

    global::Target choose(NodeId n, std::int64_t tick)
    {
        if (c_.routing_policy == RoutingPolicy::Random)
            return global::next_hop_random(n, topo_, routing_rng_);
        for (const auto& tg : topo_.sender[n])
            if (!topo_.is_sink(tg.id))
                busy_[tg.id] = global::busy_degree(nodes_[tg.id], tick, window_);
        return global::next_hop_selective(n, topo_, nodes_, busy_, c_.w_e, c_.w_b);
    }

    void on_send(std::int64_t tick, NodeId n)
    {
        scheduled_[n] = 0;
        if (!active_[n] || queues_[n].empty())
            return;
        Pending& p = pending_[n];
        const Packet pkt = queues_[n].front();
        queues_[n].pop_front();
        p.work.n_read += 1;
        p.work.t_store += seconds(tick - pkt.enqueued);
        p.work.b_store = c_.bits.data;
        touch(n, UnitKind::Memory, tick);
        if (!queues_[n].empty())
            schedule_send(n, tick + 1);

        global::Target target;
        try {
            target = choose(n, tick);
        } catch (const VoidError&) {
            ++out_.packets.dropped_void;
            return;
        }
        const Cause cause{CauseKind::Packet, pkt.id};
        const double b = c_.bits.data;
        const double d2 = target.distance * target.distance;

        const double g_tx =
            std::min(c_.g_tx_cap, global::busy_degree(nodes_[n], tick, window_) / seconds(window_));
        const double dens = active_count_ / c_.area();
        const std::uint32_t retries = local::collision_outcome(nsets_[n].count(), g_tx, dens, c_.collision_coeff,
                                                                c_.max_retries, collision_rng_);

        LedgerEntry tx = entry(tick, n, {ChargeKind::RoutTx}, radio::tx_energy_sq(d2, b, radio_), cause);
        tx.bits = b;
        tx.d2 = d2;
        if (!charge(tx)) {
            ++out_.packets.dropped_dead;
            return;
        }
        auto& busy = nodes_[n].busy_events;
        busy.push_back(tick);
        while (!busy.empty() && busy.front() <= tick - window_)
            busy.pop_front();

        const double sent = b * (1 + retries);
        touch(n, UnitKind::TransceiverDsp, tick);
        p.work.b_tx += sent;
        p.retx_d2 += d2 * retries;
        p.retx_count += retries;
        for (const auto& oh : local::overhearing_charges(nsets_[n], target.id, sent))
            pending_[oh.node].b_ohear += oh.bits;

        const bool to_sink = topo_.is_sink(target.id);
        if (!to_sink && c_.loss_coeff > 0) {
            const double p_loss = std::min(1.0, c_.loss_coeff * static_cast<double>(queues_[target.id].size()));
            if (loss_rng_.bernoulli(p_loss)) {
                LedgerEntry re = entry(tick, n, {ChargeKind::Pktls}, radio::tx_energy_sq(d2, b, radio_), cause);
                re.bits = b;
                re.d2 = d2;
                if (!charge(re)) {
                    ++out_.packets.dropped_dead;
                    return;
                }
                if (loss_rng_.bernoulli(p_loss)) {
                    ++out_.packets.lost;
                    return;
                }
            }
        }
        if (to_sink) {
            ++out_.packets.delivered;
            return;
        }

        const NodeId r = target.id;
        LedgerEntry rx = entry(tick, r, {ChargeKind::RoutRx}, radio::rx_energy(b, radio_), cause);
        rx.bits = b;
        if (!charge(rx)) {
            ++out_.packets.dropped_dead;
            return;
        }
        Pending& q = pending_[r];
        touch(r, UnitKind::TransceiverDsp, tick);
        q.work.b_rx += b;
        touch(r, UnitKind::Processor, tick);
        q.work.b_proc += b;
        touch(r, UnitKind::Memory, tick);
        q.work.n_write += 1;
        q.work.b_store = b;
        queues_[r].push_back({pkt.id, tick});
        schedule_send(r, tick + 1);
    }

    void on_global(std::int64_t tick)
    {
        for (NodeId n = 0; n < c_.node_count; ++n) {
            if (!active_[n])
                continue;
            double far = 0;
            for (const auto& m : nsets_[n].members)
                far = std::max(far, m.distance);
            if (!nsets_[n].members.empty()) {
                const double d2 = far * far;
                const double b = c_.bits.global;
                LedgerEntry e = entry(tick, n, {ChargeKind::Global},
                                      radio::tx_energy_sq(d2, b, radio_) + radio::rx_energy(b, radio_),
                                      {CauseKind::Periodic, 0});
                e.bits = b;
                e.count = 1;
                e.d2 = d2;
                if (!charge(e))
                    continue;
            }
            if (c_.bits.snk > 0) {
                LedgerEntry e = entry(tick, n, {ChargeKind::Snk}, peripheral::sink_energy(c_.bits.snk, c_),
                                      {CauseKind::Periodic, 1});
                e.bits = c_.bits.snk;
                charge(e);
            }
        }
    }

    void on_flush(std::int64_t tick)
    {
        for (NodeId n = 0; n < c_.node_count; ++n)
            if (active_[n] && pending_[n].start < tick)
                flush(n, tick);
    }

    // Charges the interval's individual and local energy, evaluates the constraints.
    void flush(NodeId n, std::int64_t tick)
    {
        Pending& p = pending_[n];
        const double dt = seconds(tick - p.start);
        const Cause cause{CauseKind::Interval, 0};
        const auto funded = [&](bool ok) {
            if (!ok)
                p.reset(tick);
            return ok;
        };

        if (c_.harvest.kind != HarvestKind::None) {
            LedgerEntry h = entry(tick, n, {ChargeKind::Harvest}, 0, cause);
            h.duration = dt;
            h.joules = peripheral::harvest_energy(c_.harvest, h.time - h.duration, h.duration);
            charge(h);
        }

        double dsp_active = 0;
        for (UnitKind u : kAllUnits) {
            const UnitActivity& a = p.units[index(u)];
            const double active = std::min(seconds(a.busy_ticks), dt);
            const UnitState base = base_state(u);
            if (u == UnitKind::TransceiverDsp)
                dsp_active = active;
            for (auto [state, d] : {std::pair{UnitState::Active, active}, std::pair{base, dt - active}}) {
                if (individual::is_idle_listening(u, state))
                    continue;
                LedgerEntry e = entry(tick, n, {ChargeKind::UnitState, u, state, state},
                                      individual::state_energy(u, state, d, c_), cause);
                e.duration = d;
                if (!funded(charge(e)))
                    return;
            }
            if (a.episodes > 0) {
                for (auto [from, to] : {std::pair{base, UnitState::Active}, std::pair{UnitState::Active, base}}) {
                    const double n_sw = static_cast<double>(a.episodes);
                    LedgerEntry e = entry(tick, n, {ChargeKind::UnitSwitch, u, from, to},
                                          individual::switch_energy(u, from, to, c_) * n_sw, cause);
                    e.count = n_sw;
                    if (!funded(charge(e)))
                        return;
                }
            }
        }

        const individual::Workload& w = p.work;
        const auto terms = individual::workload_terms(w, c_);
        const auto work_entry = [&](ChargeKind k, double joules, double bits, double count, double duration) {
            LedgerEntry e = entry(tick, n, {k}, joules, cause);
            e.bits = bits;
            e.count = count;
            e.duration = duration;
            return charge(e);
        };
        if (!funded(work_entry(ChargeKind::ProcessorWork, terms.processor_work, w.b_proc, 0, 0) &&
                    work_entry(ChargeKind::SensorArea, terms.sensor_area, 0, 0, w.sense_active_time) &&
                    work_entry(ChargeKind::SensorBits, terms.sensor_bits, w.b_sense, 0, 0) &&
                    work_entry(ChargeKind::MemoryRead, terms.memory_read, w.b_store, w.n_read, 0) &&
                    work_entry(ChargeKind::MemoryWrite, terms.memory_write, w.b_store, w.n_write, 0) &&
                    work_entry(ChargeKind::MemoryRetain, terms.memory_retain, w.b_store, 0, w.t_store) &&
                    work_entry(ChargeKind::DspCode, terms.dsp_code, w.b_tx, 0, 0) &&
                    work_entry(ChargeKind::DspDecode, terms.dsp_decode, w.b_rx, 0, 0)))
            return;

        const local::NeighborSet& nset = nsets_[n];
        local::LocalTick lt;
        double d2_sum = 0;
        for (const auto& m : nset.members) {
            lt.mon.push_back({m.id, c_.bits.mon});
            lt.sec.push_back({m.id, c_.bits.sec});
            lt.proto.push_back({m.id, c_.bits.local});
            d2_sum += m.distance * m.distance;
        }
        lt.b_ohear = p.b_ohear;
        lt.idle_time = dt - dsp_active;
        lt.net_dens = active_count_ / c_.area();
        const local::Result lr = local::local_energy(nset, lt, c_);
        const double coll = radio::tx_energy_sq(p.retx_d2, c_.bits.data, radio_);
        const double links = static_cast<double>(nset.count());
        const auto local_entry = [&](ChargeKind k, double joules, double bits, double count, double d2,
                                     double duration) {
            LedgerEntry e = entry(tick, n, {k}, joules, cause);
            e.bits = bits;
            e.count = count;
            e.d2 = d2;
            e.duration = duration;
            return charge(e);
        };
        if (!funded(local_entry(ChargeKind::Mon, lr.mon, c_.bits.mon, links, d2_sum, 0) &&
                    local_entry(ChargeKind::Sec, lr.sec, c_.bits.sec, links, d2_sum, 0) &&
                    local_entry(ChargeKind::Local, lr.local, c_.bits.local, links, d2_sum, 0) &&
                    local_entry(ChargeKind::Coll, coll, c_.bits.data, p.retx_count, p.retx_d2, 0) &&
                    local_entry(ChargeKind::Ohear, lr.ohear, p.b_ohear, 0, 0, 0) &&
                    local_entry(ChargeKind::Idle, lr.idle, 0, 0, 0, lt.idle_time)))
            return;

        out_.constraints.push_back(
            accounting::evaluate_constraints(seconds(tick), n, p.interval, nset.count(), true, c_.lambda));
        p.reset(tick);
    }

    SimConfig c_;
    radio::RadioParams radio_;
    std::vector<SensingEvent> events_;
    Rng collision_rng_;
    Rng routing_rng_;
    Rng loss_rng_;
    RunResult out_;

    std::int64_t horizon_ = 0, monitor_ = 1, global_ = 1, sample_ = 1, window_ = 1;
    std::vector<NodeState> nodes_;
    std::vector<char> active_;
    std::uint32_t active_count_ = 0;
    std::vector<Pending> pending_;
    std::vector<std::deque<Packet>> queues_;
    std::vector<char> scheduled_;
    std::vector<std::uint32_t> busy_;
    std::vector<local::NeighborSet> nsets_;
    global::Topology topo_;
    std::vector<NodeId> dead_;
    accounting::ConstituentTotals cumulative_{};

    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::uint64_t seq_ = 0;
    std::uint64_t next_packet_ = 0;
};

}  // namespace

RunResult run(const SimConfig& config, std::uint64_t seed, Deployment deployment, std::vector<SensingEvent> events)
{
    return Simulation(config, seed, std::move(deployment), std::move(events)).run();
}

RunResult run(const SimConfig& config, std::uint64_t seed)
{
    Deployment d = deploy(config, seed);
    Rng sensing(seed, Stream::Sensing);
    auto events = generate_events(config, sensing);
    return run(config, seed, std::move(d), std::move(events));
}

}  // namespace heda::engine
