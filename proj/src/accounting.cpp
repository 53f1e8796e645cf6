#include "heda/accounting.hpp"

#include <algorithm>
#include <cmath>

#include "heda/peripheral.hpp"
#include "heda/radio.hpp"

namespace heda::accounting {

double combine(const std::array<double, kConstituentCount>& c, const Lambda& lambda)
{
    return lambda[0] * c[0] + lambda[1] * c[1] + lambda[2] * c[2] + lambda[3] * c[3] + lambda[4] * c[4];
}

double combine(const EnergyBreakdown& b, const Lambda& lambda) { return combine(b.constituents(), lambda); }

ResidualUpdate update_residual(NodeState node, double consumed, bool harvest_source)
{
    if (!std::isfinite(consumed))
        throw ConstraintError("consumed energy must be finite");
    if (!node.active)
        throw ConstraintError("node " + std::to_string(node.id) + " is inactive");
    ResidualUpdate u{std::move(node)};
    if (consumed < 0) {
        if (!harvest_source)
            throw ConstraintError("negative consumption without a harvest source");
        u.node.residual = peripheral::credit_clamped(u.node.residual, u.node.initial, -consumed);
        return u;
    }
    if (consumed > u.node.residual) {
        u.node.active = false;
        u.deactivated = true;
        u.deficit = consumed - u.node.residual;
        return u;
    }
    u.node.residual -= consumed;
    return u;
}

double consumed_from_residual(double initial, double residual)
{
    if (residual > initial)
        throw ConstraintError("residual exceeds initial energy");
    if (residual < 0)
        throw ConstraintError("residual must be >= 0");
    return initial - residual;
}

namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        throw ConstraintError(what);
}

}  // namespace

double replay_charge(const LedgerEntry& e, const SimConfig& c)
{
    require(std::isfinite(e.bits) && e.bits >= 0, "bits must be >= 0");
    require(std::isfinite(e.count) && e.count >= 0, "count must be >= 0");
    require(std::isfinite(e.d2) && e.d2 >= 0, "d2 must be >= 0");
    require(std::isfinite(e.duration) && e.duration >= 0, "duration must be >= 0");
    const auto radio = radio::params(c);
    const auto link = [&] { return radio::tx_energy_sq(e.d2, e.bits, radio) + radio::rx_energy(e.bits, radio) * e.count; };
    switch (e.sub.kind) {
    case ChargeKind::UnitState:
        require(e.sub.unit != UnitKind::TransceiverDsp || e.sub.from != UnitState::Idle,
                "transceiver idle time is charged as local idle listening");
        return c.power(e.sub.unit, e.sub.from) * e.duration;
    case ChargeKind::UnitSwitch:
        require(e.sub.from != e.sub.to, "no self-switch");
        return c.switch_cost(e.sub.unit, e.sub.from, e.sub.to) * e.count;
    case ChargeKind::ProcessorWork: return c.c_proc * c.processor.frequency * e.bits;
    case ChargeKind::SensorArea: return c.c_srad * (c.r_sense * c.r_sense) * e.duration;
    case ChargeKind::SensorBits: return c.e_sbit * e.bits;
    case ChargeKind::MemoryRead: return c.e_rd * e.count * e.bits;
    case ChargeKind::MemoryWrite: return c.e_wt * e.count * e.bits;
    case ChargeKind::MemoryRetain: return c.p_retain * e.bits * e.duration;
    case ChargeKind::DspCode: return c.e_code * e.bits;
    case ChargeKind::DspDecode: return c.e_dcode * e.bits;
    case ChargeKind::Mon:
    case ChargeKind::Sec:
    case ChargeKind::Local:
    case ChargeKind::Topo:
    case ChargeKind::Global:
        return link();
    case ChargeKind::Coll:
    case ChargeKind::RoutTx:
    case ChargeKind::Pktls:
        return radio::tx_energy_sq(e.d2, e.bits, radio);
    case ChargeKind::Ohear:
    case ChargeKind::RoutRx:
    case ChargeKind::Snk:
        return radio::rx_energy(e.bits, radio);
    case ChargeKind::Idle:
        return c.power(UnitKind::TransceiverDsp, UnitState::Idle) * e.duration;
    case ChargeKind::Harvest:
        return peripheral::harvest_energy(c.harvest, e.time - e.duration, e.duration);
    case ChargeKind::Spill:
        require(std::isfinite(e.joules) && e.joules >= 0, "spill must be >= 0");
        return e.joules;
    }
    throw ConstraintError("unknown charge kind");
}

std::vector<ConstituentTotals> replay(std::span<const LedgerEntry> log, const SimConfig& config)
{
    std::vector<ConstituentTotals> totals(config.node_count, ConstituentTotals{});
    double last_time = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < log.size(); ++i) {
        const LedgerEntry& e = log[i];
        try {
            require(e.node < config.node_count, "node id out of range");
            require(std::isfinite(e.time) && e.time >= last_time, "log is not time-ordered");
            last_time = e.time;
            totals[e.node][index(e.constituent())] += replay_charge(e, config);
        } catch (const ConstraintError& err) {
            throw ConstraintError("entry " + std::to_string(i) + ": " + err.what());
        }
    }
    return totals;
}

void accumulate(EnergyBreakdown& b, const LedgerEntry& e)
{
    const double j = e.joules;
    auto active = [&](UnitKind u) -> double& { return b.unit_state[index(u)][index(UnitState::Active)]; };
    switch (e.sub.kind) {
    case ChargeKind::UnitState: b.unit_state[index(e.sub.unit)][index(e.sub.from)] += j; return;
    case ChargeKind::UnitSwitch: b.unit_switch[index(e.sub.unit)][index(e.sub.from)][index(e.sub.to)] += j; return;
    case ChargeKind::ProcessorWork: active(UnitKind::Processor) += j; return;
    case ChargeKind::SensorArea:
    case ChargeKind::SensorBits: active(UnitKind::Sensor) += j; return;
    case ChargeKind::MemoryRead:
    case ChargeKind::MemoryWrite:
    case ChargeKind::MemoryRetain: active(UnitKind::Memory) += j; return;
    case ChargeKind::DspCode:
    case ChargeKind::DspDecode: active(UnitKind::TransceiverDsp) += j; return;
    case ChargeKind::Mon: b.mon += j; return;
    case ChargeKind::Sec: b.sec += j; return;
    case ChargeKind::Local: b.local += j; return;
    case ChargeKind::Coll: b.coll += j; return;
    case ChargeKind::Ohear: b.ohear += j; return;
    case ChargeKind::Idle: b.idle += j; return;
    case ChargeKind::Topo: b.topo += j; return;
    case ChargeKind::RoutTx:
    case ChargeKind::RoutRx: b.rout += j; return;
    case ChargeKind::Global: b.global += j; return;
    case ChargeKind::Pktls: b.pktls += j; return;
    case ChargeKind::Harvest:
    case ChargeKind::Spill: b.battery += j; return;
    case ChargeKind::Snk: b.snk += j; return;
    }
}

std::vector<ConstituentTotals> recorded_totals(std::span<const LedgerEntry> log, std::size_t node_count)
{
    std::vector<ConstituentTotals> totals(node_count, ConstituentTotals{});
    for (const auto& e : log)
        if (e.node < node_count)
            totals[e.node][index(e.constituent())] += e.joules;
    return totals;
}

ConstraintRow evaluate_constraints(double time, NodeId node, const EnergyBreakdown& b, std::size_t neighbor_count,
                                   bool funded, const Lambda& lambda)
{
    ConstraintRow row;
    row.time = time;
    row.node = node;
    row.local_positive = check(b.local_total() > 0);
    row.global_positive = check(b.global_total() > 0);
    row.funded = check(funded);
    const double weighted = lambda[0] * b.individual() + lambda[1] * b.local_total() + lambda[2] * b.global_total() +
                            lambda[4] * b.snk;
    row.battery_covers = strictly_greater(lambda[3] * b.battery, weighted);
    row.state_over_switch = strictly_greater(b.state_total(), b.switch_total());
    row.has_neighbor = check(neighbor_count >= 1);
    row.local_bounded = strictly_greater(b.idle + b.coll + b.ohear, b.local);
    row.has_route = check(b.rout > 0);
    row.route_dominates = strictly_greater(b.rout, b.topo + b.global + b.pktls);
    return row;
}

namespace {

double relative_gap(double a, double b)
{
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

}  // namespace

VerifyReport verify(std::span<const LedgerEntry> log, const SimConfig& config,
                    std::optional<std::span<const double>> final_residuals)
{
    VerifyReport report;
    report.entries = log.size();
    const auto replayed = replay(log, config);
    const auto recorded = recorded_totals(log, config.node_count);

    auto consider = [&](NodeId node, double relative, double delta, const std::string& what) {
        if (relative > report.worst_relative) {
            report.worst_relative = relative;
            report.worst_delta = delta;
            report.worst_node = node;
            report.message = what;
        }
    };
    for (NodeId n = 0; n < config.node_count; ++n) {
        for (std::size_t c = 0; c < kConstituentCount; ++c) {
            const double a = replayed[n][c], b = recorded[n][c];
            consider(n, relative_gap(a, b), b - a,
                     std::string(to_string(static_cast<Constituent>(c))) + " total differs from replay");
        }
        if (final_residuals) {
            if (final_residuals->size() != config.node_count)
                throw ConstraintError("residual list does not match node_count");
            // Residuals are compared relative to the node's capacity.
            const double expected = config.e_initial - combine(replayed[n], config.lambda);
            const double reported = (*final_residuals)[n];
            const double scale = std::max(config.e_initial, std::fabs(reported));
            const double relative = scale == 0.0 ? 0.0 : std::fabs(expected - reported) / scale;
            consider(n, relative, reported - expected, "final residual differs from replay");
        }
    }
    report.ok = report.worst_relative <= kVerifyTolerance;
    if (report.ok)
        report.message = "ok";
    return report;
}

}  // namespace heda::accounting
