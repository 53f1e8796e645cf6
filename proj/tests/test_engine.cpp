#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "heda/engine.hpp"
#include "heda/global.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace heda;
using namespace heda::engine;

namespace {

std::size_t count_kind(const RunResult& r, ChargeKind k)
{
    return static_cast<std::size_t>(
        std::count_if(r.ledger.begin(), r.ledger.end(), [k](const LedgerEntry& e) { return e.sub.kind == k; }));
}

SimConfig short_run(double horizon)
{
    SimConfig c;
    c.horizon = horizon;
    return c;
}

}  // namespace

TEST_CASE("deploy")
{
    const SimConfig c;
    const Deployment a = deploy(c, 42), b = deploy(c, 42);
    CHECK(a == b);
    CHECK(a.nodes.size() == 100);
    CHECK(a.sinks.size() == 5);
    CHECK_FALSE(deploy(c, 43) == a);
    for (const Point& p : a.nodes)
        CHECK(Rect{0, 500, 0, 500}.contains(p));
    for (const Point& s : a.sinks) {
        CHECK(s.x <= 25);
        CHECK(c.sink_region.contains(s));
    }

    SimConfig empty;
    empty.node_count = 0;
    try {
        deploy(empty, 1);
        FAIL("empty network accepted");
    } catch (const ConstraintError& e) {
        CHECK(std::string(e.what()) == "empty network");
    }

    SimConfig outside;
    outside.sink_region = {490, 520, 0, 10};
    CHECK_THROWS_AS(deploy(outside, 1), ConstraintError);
}

TEST_CASE("sensing events")
{
    SimConfig quiet;
    quiet.g_sense = 0;
    Rng r0(1, Stream::Sensing);
    CHECK(generate_events(quiet, r0).empty());

    const SimConfig c;
    const double mean = c.g_sense * c.horizon;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed, Stream::Sensing);
        const auto ev = generate_events(c, rng);
        CHECK(std::fabs(static_cast<double>(ev.size()) - mean) <= 3 * std::sqrt(mean));
        for (std::size_t i = 0; i < ev.size(); ++i) {
            CHECK(ev[i].tick >= 1);
            CHECK(ev[i].tick <= 60000);
            CHECK(Rect{0, 500, 0, 500}.contains(ev[i].location));
            if (i > 0)
                CHECK(ev[i].tick > ev[i - 1].tick);
        }
    }
    Rng a(9, Stream::Sensing), b(9, Stream::Sensing);
    CHECK(generate_events(c, a) == generate_events(c, b));
}

TEST_CASE("detecting nodes")
{
    Deployment d;
    d.nodes = {{0, 0}, {30, 0}, {45, 0}, {10, 10}};
    CHECK(detecting_nodes(d, {}, {0, 0}, 40) == std::vector<NodeId>{0, 1, 3});
    const std::vector<char> active{1, 0, 1, 1};
    CHECK(detecting_nodes(d, active, {0, 0}, 40) == std::vector<NodeId>{0, 3});
}

TEST_CASE("sample metrics")
{
    std::vector<NodeState> nodes(3);
    for (auto& n : nodes)
        n.residual = n.initial = 0.5;
    CHECK(sample_metrics(nodes, 0).total_incl == 1.5);
    nodes[1].residual -= 1e-3;
    CHECK(sample_metrics(nodes, 1).total_incl == doctest::Approx(1.5 - 1e-3).epsilon(1e-15));
    nodes[2].residual = 0.01;
    nodes[2].active = false;
    const Sample s = sample_metrics(nodes, 2);
    CHECK(s.total_incl - s.total_excl == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(s.active_count == 2);
}

TEST_CASE("a run with nothing to pay for leaves every battery full")
{
    const RunResult r = run(testing::silent_config(), 3);
    CHECK(r.ledger.empty());
    CHECK(r.samples.size() == 61);
    for (const auto& s : r.samples)
        for (double v : s.residual)
            CHECK(v == 0.5);
}

TEST_CASE("default runs")
{
    const RunResult r = run(short_run(20), 1);
    REQUIRE(r.samples.size() == 21);
    CHECK(r.samples[0].total_incl == doctest::Approx(50.0).epsilon(1e-15));
    for (std::size_t i = 1; i < r.samples.size(); ++i) {
        CHECK(r.samples[i].total_incl <= r.samples[i - 1].total_incl);
        for (std::size_t n = 0; n < 100; ++n)
            CHECK(r.samples[i].residual[n] <= r.samples[i - 1].residual[n]);
    }
    CHECK(testing::conservation_gap(r) <= 1e-9);

    const auto& p = r.packets;
    CHECK(p.generated > 0);
    CHECK(p.delivered + p.dropped() + p.lost + p.in_flight == p.generated);

    for (const auto& d : r.deactivations) {
        CHECK(d.deficit > 0);
        for (const auto& e : r.ledger)
            if (e.node == d.node)
                CHECK(e.time <= d.time);
    }
    CHECK(std::is_sorted(r.ledger.begin(), r.ledger.end(),
                         [](const LedgerEntry& a, const LedgerEntry& b) { return a.time < b.time; }));
    CHECK(r.max_neighbors_at_start == testing::brute_max_neighbors(r.deployment, 130));
}

TEST_CASE("runs are deterministic")
{
    const RunResult a = run(short_run(10), 5), b = run(short_run(10), 5);
    CHECK(a.ledger == b.ledger);
    CHECK(a.deployment == b.deployment);
    CHECK(a.final_sample().residual == b.final_sample().residual);
    CHECK_FALSE(run(short_run(10), 6).ledger == a.ledger);
}

TEST_CASE("a lone node in sink range delivers its one packet")
{
    SimConfig c;
    c.node_count = 1;
    c.sink_count = 1;
    c.horizon = 2;
    Deployment d;
    d.nodes.push_back({50, 50});
    d.sinks.push_back({10, 50});
    const RunResult r = run(c, 1, d, {SensingEvent{100, {50, 50}}});
    CHECK(r.packets.generated == 1);
    CHECK(r.packets.delivered == 1);
    CHECK(count_kind(r, ChargeKind::SensorBits) == 1);
    CHECK(count_kind(r, ChargeKind::RoutTx) == 1);
    CHECK(count_kind(r, ChargeKind::RoutRx) == 0);
    for (const auto& e : r.ledger)
        if (e.sub.kind == ChargeKind::RoutTx) {
            CHECK(e.d2 == 1600);
            CHECK(e.bits == c.bits.data);
        }
}

TEST_CASE("a void drops the packet")
{
    SimConfig c;
    c.node_count = 1;
    c.sink_count = 1;
    c.horizon = 1;
    Deployment d;
    d.nodes.push_back({400, 50});
    d.sinks.push_back({10, 50});
    const RunResult r = run(c, 1, d, {SensingEvent{10, {400, 50}}});
    CHECK(r.packets.dropped_void == 1);
    CHECK(r.disconnect_time == 0.0);
}

TEST_CASE("forwarding charges the relay")
{
    SimConfig c;
    c.node_count = 2;
    c.sink_count = 1;
    c.horizon = 1;
    c.r_sense = 5;
    Deployment d;
    d.nodes = {{200, 0}, {100, 0}};
    d.sinks.push_back({0, 0});
    const RunResult r = run(c, 1, d, {SensingEvent{10, {200, 0}}});
    CHECK(r.packets.generated == 1);
    CHECK(r.packets.delivered == 1);
    CHECK(count_kind(r, ChargeKind::RoutTx) == 2);
    CHECK(count_kind(r, ChargeKind::RoutRx) == 1);
    for (const auto& e : r.ledger)
        if (e.sub.kind == ChargeKind::RoutRx)
            CHECK(e.node == 1);
}

TEST_CASE("a starved network goes quiet")
{
    SimConfig c = short_run(10);
    c.e_initial = 0.002;
    const RunResult r = run(c, 2);
    CHECK(r.final_sample().active_count == 0);
    CHECK(r.deactivations.size() == 100);
    CHECK(r.disconnect_time < 10);
    CHECK(testing::conservation_gap(r) <= 1e-9);
    for (const auto& s : r.samples)
        CHECK(s.total_incl >= 0);
}

TEST_CASE("harvesting never overfills a battery")
{
    SimConfig c = short_run(10);
    c.harvest = {HarvestKind::Constant, 5e-3, 0, 1};
    const RunResult r = run(c, 4);
    CHECK(count_kind(r, ChargeKind::Harvest) > 0);
    CHECK(count_kind(r, ChargeKind::Spill) > 0);
    for (const auto& s : r.samples)
        for (double v : s.residual)
            CHECK(v <= c.e_initial);
    CHECK(testing::conservation_gap(r) <= 1e-9);
}

TEST_CASE("congestion loss keeps the packet invariant")
{
    SimConfig c = short_run(10);
    c.loss_coeff = 0.3;
    c.g_sense = 200;
    const RunResult r = run(c, 8);
    const auto& p = r.packets;
    CHECK(count_kind(r, ChargeKind::Pktls) > 0);
    CHECK(p.delivered + p.dropped() + p.lost + p.in_flight == p.generated);
}

TEST_CASE("neighbor count matches brute force")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Deployment d = deploy(SimConfig{}, seed);
        for (double r : {50.0, 130.0, 160.0, 190.0, 220.0})
            CHECK(max_neighbor_count(d, r) == testing::brute_max_neighbors(d, r));
    }
}

TEST_CASE("below the connectivity radius the network is partitioned from the start")
{
    const Deployment d = deploy(SimConfig{}, 7);
    SimConfig c = short_run(2);
    c.r_tx = global::min_connectivity_radius(d) * 0.999;
    const RunResult r = run(c, 7);
    CHECK(r.partition_time == 0.0);
    c.r_tx = global::min_connectivity_radius(d);
    CHECK(run(c, 7).partition_time > 0.0);
}
