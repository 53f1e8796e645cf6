#include <doctest.h>

#include <string>

#include "heda/config.hpp"
#include "support.hpp"

using namespace heda;

TEST_CASE("empty document yields the defaults")
{
    const SimConfig c = load_config("");
    CHECK(c == SimConfig{});
    CHECK(c.node_count == 100);
    CHECK(c.area_width == 500);
    CHECK(c.area_height == 500);
    CHECK(c.horizon == 60);
    CHECK(c.tick == 0.001);
    CHECK(c.e_amp == 100e-12);
    CHECK(c.e_elec == 50e-9);
    CHECK(c.e_initial == 0.5);
    CHECK(c.sink_count == 5);
    CHECK(c.sink_region == Rect{0, 25, 0, 500});
    CHECK(c.max_retries == 3);
    CHECK(c.w_e == 1.0);
    CHECK(c.w_b == 0.5);
    CHECK(load_config("{}") == c);
}

TEST_CASE("defaults validate")
{
    CHECK_NOTHROW(validate(SimConfig{}));
}

TEST_CASE("named constraint errors")
{
    auto message = [](const char* doc) {
        try {
            load_config(doc);
        } catch (const ConstraintError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message(R"({"r_tx": -5})") == "r_tx must be > 0");
    CHECK(message(R"({"lambda": [1,1,1,1]})") == "lambda requires 5 entries");
    CHECK(message(R"({"r_sense": 0})") == "r_sense must be > 0");
    CHECK(message(R"({"lambda": [1,1,-1,1,1]})") == "lambda[2] must be >= 0");
    CHECK(message(R"({"tick": 0})") == "tick must be > 0");
    CHECK(message(R"({"horizon": 0.0001})") == "horizon must be >= tick");
    CHECK(message(R"({"node_count": -3})") == "node_count must be >= 0");
}

TEST_CASE("parse errors carry the key path")
{
    auto message = [](const char* doc) {
        try {
            load_config(doc);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message(R"({"r_txx": 1})").find("r_txx") != std::string::npos);
    CHECK(message(R"({"unit_powers": {"procesor": {}}})").find("unit_powers.procesor") != std::string::npos);
    CHECK(message(R"({"sink_region": {"x_min": "a"}})").find("sink_region.x_min") != std::string::npos);
    CHECK(message(R"({"routing_policy": "greedy"})").find("routing_policy") != std::string::npos);
    CHECK(message("{not json").find("no error") == std::string::npos);
}

TEST_CASE("lambda passes through unchanged")
{
    CHECK(effective_lambda(SimConfig{}) == Lambda{1, 1, 1, 1, 1});
    CHECK(effective_lambda(load_config(R"({"lambda": [2,1,1,0,1]})")) == Lambda{2, 1, 1, 0, 1});
    CHECK(effective_lambda(load_config(R"({"lambda": [0,0,0,0,0]})")) == Lambda{0, 0, 0, 0, 0});
}

TEST_CASE("nested unit tables")
{
    const SimConfig c = load_config(R"({
        "unit_powers": {"sensor": {"active": 0.01}},
        "switch_costs": {"sensor": {"sleep->active": 1e-5}}
    })");
    CHECK(c.power(UnitKind::Sensor, UnitState::Active) == 0.01);
    CHECK(c.switch_cost(UnitKind::Sensor, UnitState::Sleep, UnitState::Active) == 1e-5);
    CHECK(c.power(UnitKind::Sensor, UnitState::Idle) == SimConfig{}.power(UnitKind::Sensor, UnitState::Idle));
}

TEST_CASE("round trip over generated configs")
{
    testing::Gen g(7);
    for (int i = 0; i < 200; ++i) {
        SimConfig c;
        c.node_count = static_cast<std::uint32_t>(g.integer(1, 500));
        c.area_width = g.real(10, 1000);
        c.area_height = g.real(10, 1000);
        c.r_sense = g.real(1, 100);
        c.r_tx = g.real(1, 300);
        c.seed = static_cast<std::uint64_t>(g.integer(0, 1 << 30)) << 20;
        c.routing_policy = g.coin() ? RoutingPolicy::Random : RoutingPolicy::Selective;
        for (auto& l : c.lambda)
            l = g.real(0, 3);
        for (auto& u : c.units) {
            for (auto& p : u.power)
                p = g.real(0, 0.01);
            for (std::size_t a = 0; a < kStateCount; ++a)
                for (std::size_t b = 0; b < kStateCount; ++b)
                    u.switch_cost[a][b] = a == b ? 0.0 : g.real(0, 1e-5);
        }
        c.e_amp = g.real(0, 1e-9);
        c.bits.data = g.integer(0, 4096);
        c.loss_coeff = g.real(0, 0.1);
        c.harvest.kind = static_cast<HarvestKind>(g.integer(0, 2));
        c.harvest.power = g.real(0, 1e-3);
        c.harvest.amplitude = g.real(0, 1e-3);
        c.harvest.period = g.real(0.5, 10);
        c.sink_region = {0, g.real(0, 10), 0, g.real(10, 20)};
        const SimConfig back = load_config(to_json(c));
        CHECK(back == c);
    }
}
