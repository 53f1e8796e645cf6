#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "heda/accounting.hpp"
#include "heda/ledger.hpp"
#include "support.hpp"

using namespace heda;
using namespace heda::accounting;

namespace {

LedgerEntry rout_tx(NodeId node, double time, double d, double bits)
{
    LedgerEntry e;
    e.time = time;
    e.node = node;
    e.sub.kind = ChargeKind::RoutTx;
    e.bits = bits;
    e.count = 1;
    e.d2 = d * d;
    e.joules = replay_charge(e, SimConfig{});
    e.cause = {CauseKind::Packet, 7};
    return e;
}

EnergyBreakdown parts(double individual, double local, double global, double battery, double sink)
{
    EnergyBreakdown b;
    b.unit_state[0][0] = individual;
    b.mon = local;
    b.topo = global;
    b.battery = battery;
    b.snk = sink;
    return b;
}

}  // namespace

TEST_CASE("combine")
{
    CHECK(combine(EnergyBreakdown{}, Lambda{1, 1, 1, 1, 1}) == 0.0);
    CHECK(combine(parts(0.1, 0.2, 0.3, 0, 0.05), Lambda{1, 1, 1, 1, 1}) == doctest::Approx(0.65).epsilon(1e-12));
    CHECK(combine(parts(0.1, 0, 0, 0, 0), Lambda{2, 0, 0, 0, 0}) == 0.2);
    CHECK(combine(parts(0.1, 0.2, 0.3, -0.1, 0.05), Lambda{0, 0, 0, 0, 0}) == 0.0);
}

TEST_CASE("combine is linear in lambda and components")
{
    testing::Gen g(41);
    for (int i = 0; i < 2000; ++i) {
        ConstituentTotals x, y;
        Lambda l, m;
        for (std::size_t k = 0; k < kConstituentCount; ++k) {
            x[k] = g.real(-1, 1);
            y[k] = g.real(-1, 1);
            l[k] = g.real(0, 3);
            m[k] = g.real(0, 3);
        }
        ConstituentTotals xy;
        Lambda lm;
        for (std::size_t k = 0; k < kConstituentCount; ++k) {
            xy[k] = x[k] + y[k];
            lm[k] = l[k] + m[k];
        }
        CHECK(combine(xy, l) == doctest::Approx(combine(x, l) + combine(y, l)).epsilon(1e-12));
        CHECK(combine(x, lm) == doctest::Approx(combine(x, l) + combine(x, m)).epsilon(1e-12));
    }
}

TEST_CASE("residual update")
{
    NodeState n;
    n.residual = n.initial = 1.0;
    CHECK(update_residual(n, 0).node.residual == 1.0);
    CHECK(update_residual(n, 0).node.active);
    CHECK(update_residual(n, 0.3).node.residual == doctest::Approx(0.7));

    NodeState low;
    low.id = 4;
    low.initial = 0.5;
    low.residual = 0.0001;
    const auto dead = update_residual(low, 0.001);
    CHECK(dead.deactivated);
    CHECK_FALSE(dead.node.active);
    CHECK(dead.node.residual == 0.0001);
    CHECK(dead.deficit == doctest::Approx(0.0009));
    CHECK_THROWS_AS(update_residual(dead.node, 0), ConstraintError);

    CHECK_THROWS_AS(update_residual(n, -0.1), ConstraintError);
    NodeState partial;
    partial.initial = 0.5;
    partial.residual = 0.499;
    CHECK(update_residual(partial, -0.01, true).node.residual == 0.5);
}

TEST_CASE("consumed from residual")
{
    CHECK(consumed_from_residual(0.5, 0.5) == 0.0);
    CHECK(consumed_from_residual(0.5, 0.2) == doctest::Approx(0.3));
    CHECK_THROWS_AS(consumed_from_residual(0.5, 0.6), ConstraintError);
}

TEST_CASE("replay")
{
    const SimConfig c;
    const auto empty = replay({}, c);
    CHECK(empty.size() == c.node_count);
    for (const auto& t : empty)
        CHECK(t == ConstituentTotals{});

    const std::vector<LedgerEntry> log{rout_tx(3, 0.5, 100, 1000)};
    const auto one = replay(log, c);
    CHECK(one[3][index(Constituent::Global)] == doctest::Approx(1.0e-3).epsilon(1e-12));

    LedgerEntry bad = log[0];
    bad.bits = -1;
    std::vector<LedgerEntry> malformed{log[0], log[0], bad};
    try {
        replay(malformed, c);
        FAIL("malformed entry accepted");
    } catch (const ConstraintError& e) {
        CHECK(std::string(e.what()).rfind("entry 2:", 0) == 0);
    }

    LedgerEntry idle;
    idle.sub = {ChargeKind::UnitState, UnitKind::TransceiverDsp, UnitState::Idle, UnitState::Active};
    idle.duration = 1;
    CHECK_THROWS_AS(replay_charge(idle, c), ConstraintError);
}

TEST_CASE("verify detects a perturbed entry")
{
    SimConfig c;
    c.node_count = 5;
    std::vector<LedgerEntry> log{rout_tx(0, 0.1, 50, 256), rout_tx(2, 0.2, 80, 256), rout_tx(4, 0.3, 120, 256)};
    CHECK(verify(log, c).ok);
    log[1].joules += 1e-6;
    const VerifyReport r = verify(log, c);
    CHECK_FALSE(r.ok);
    CHECK(r.worst_node == 2);
    CHECK(r.worst_delta == doctest::Approx(1e-6));

    SimConfig zero = testing::silent_config();
    zero.node_count = 3;
    const std::vector<double> full(3, zero.e_initial);
    CHECK(verify({}, zero, std::span<const double>(full)).ok);
    const std::vector<double> drained{0.5, 0.4, 0.5};
    const VerifyReport d = verify({}, zero, std::span<const double>(drained));
    CHECK_FALSE(d.ok);
    CHECK(d.worst_node == 1);
}

TEST_CASE("constraint rows")
{
    const Lambda ones{1, 1, 1, 1, 1};
    const ConstraintRow zero = evaluate_constraints(1, 0, EnergyBreakdown{}, 0, true, ones);
    CHECK(zero.local_positive == Check::False);
    CHECK(zero.global_positive == Check::False);
    CHECK(zero.funded == Check::True);
    CHECK(zero.battery_covers == Check::Degenerate);
    CHECK(zero.state_over_switch == Check::Degenerate);
    CHECK(zero.has_neighbor == Check::False);
    CHECK(zero.local_bounded == Check::Degenerate);
    CHECK(zero.has_route == Check::False);
    CHECK(zero.route_dominates == Check::Degenerate);

    EnergyBreakdown b;
    b.mon = 1e-3;
    b.idle = 2e-3;
    b.local = 1e-4;
    b.rout = 5e-3;
    b.topo = 1e-3;
    b.unit_state[0][1] = 1e-3;
    b.battery = -1.0;
    const ConstraintRow ok = evaluate_constraints(2, 3, b, 4, true, ones);
    CHECK(ok.local_positive == Check::True);
    CHECK(ok.global_positive == Check::True);
    CHECK(ok.state_over_switch == Check::True);
    CHECK(ok.has_neighbor == Check::True);
    CHECK(ok.local_bounded == Check::True);
    CHECK(ok.has_route == Check::True);
    CHECK(ok.route_dominates == Check::True);
    CHECK(ok.battery_covers == Check::False);
    CHECK(evaluate_constraints(2, 3, b, 4, false, ones).funded == Check::False);
}

TEST_CASE("accumulate places entries on their sub-components")
{
    EnergyBreakdown b;
    LedgerEntry e;
    e.joules = 1;
    e.sub = {ChargeKind::MemoryWrite};
    accumulate(b, e);
    e.sub = {ChargeKind::RoutRx};
    accumulate(b, e);
    e.sub = {ChargeKind::Harvest};
    e.joules = -0.5;
    accumulate(b, e);
    e.sub = {ChargeKind::UnitSwitch, UnitKind::Sensor, UnitState::Sleep, UnitState::Active};
    e.joules = 0.25;
    accumulate(b, e);
    CHECK(b.unit_state[index(UnitKind::Memory)][index(UnitState::Active)] == 1);
    CHECK(b.rout == 1);
    CHECK(b.battery == -0.5);
    CHECK(b.switch_total() == 0.25);
    CHECK(b.constituents() == std::array<double, 5>{1.25, 0, 1, -0.5, 0});
}

TEST_CASE("ledger text round trip")
{
    testing::Gen g(55);
    std::vector<LedgerEntry> log;
    double t = 0;
    for (int i = 0; i < 500; ++i) {
        LedgerEntry e;
        t += g.real(0, 0.01);
        e.time = t;
        e.node = static_cast<NodeId>(g.integer(0, 99));
        e.sub.kind = static_cast<ChargeKind>(g.integer(0, static_cast<int>(ChargeKind::Snk)));
        if (e.sub.kind == ChargeKind::UnitState || e.sub.kind == ChargeKind::UnitSwitch) {
            e.sub.unit = static_cast<UnitKind>(g.integer(0, 3));
            e.sub.from = static_cast<UnitState>(g.integer(0, 2));
            e.sub.to = e.sub.kind == ChargeKind::UnitSwitch
                           ? static_cast<UnitState>((static_cast<int>(e.sub.from) + g.integer(1, 2)) % 3)
                           : e.sub.from;
        }
        e.joules = g.real(0, 1e-3) / 3;
        const int cause = g.integer(0, 4);
        e.cause.kind = static_cast<CauseKind>(cause);
        e.cause.ref = cause == 1 || cause == 4 ? static_cast<std::uint64_t>(g.integer(0, 1 << 20)) : 0;
        e.bits = g.integer(0, 4096);
        e.count = g.integer(0, 5);
        e.d2 = g.real(0, 5e4);
        e.duration = g.real(0, 1);
        log.push_back(e);
    }
    std::stringstream s;
    write_ledger(s, log);
    CHECK(read_ledger(s) == log);

    std::stringstream header;
    write_ledger(header, {});
    CHECK(header.str() == "timestamp_s,node_id,constituent,subcomponent,joules,cause,bits,count,d2_m2,duration_s\n");

    std::stringstream broken("timestamp_s,node_id,constituent,subcomponent,joules,cause,bits,count,d2_m2,duration_s\n"
                             "0,1,global,rout_tx,1e-3,pkt:1,1,1,1,0\n"
                             "0,1,local,rout_tx,1e-3,pkt:1,1,1,1,0\n");
    try {
        read_ledger(broken);
        FAIL("mismatched constituent accepted");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("entry 1:", 0) == 0);
    }
}

TEST_CASE("subcomponent names")
{
    CHECK(to_string(Subcomponent{ChargeKind::UnitState, UnitKind::Sensor, UnitState::Sleep}) == "sensor_sleep");
    CHECK(parse_subcomponent("rout_tx") == Subcomponent{ChargeKind::RoutTx});
    CHECK(to_string(Cause{CauseKind::TopologyRebuild, 12}) == "topo:rebuild:12");
    CHECK(parse_cause("pkt:99") == Cause{CauseKind::Packet, 99});
    CHECK_THROWS_AS(parse_subcomponent("warp_drive"), ParseError);
    CHECK_THROWS_AS(parse_cause("pkt:"), ParseError);
}
