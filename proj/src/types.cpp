#include "heda/types.hpp"

#include <cmath>
#include <string>

namespace heda {

double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

const char* to_string(UnitKind k)
{
    switch (k) {
    case UnitKind::Processor: return "processor";
    case UnitKind::Sensor: return "sensor";
    case UnitKind::Memory: return "memory";
    case UnitKind::TransceiverDsp: return "transceiver_dsp";
    }
    return "?";
}

const char* to_string(UnitState s)
{
    switch (s) {
    case UnitState::Active: return "active";
    case UnitState::Idle: return "idle";
    case UnitState::Sleep: return "sleep";
    }
    return "?";
}

const char* to_string(Constituent c)
{
    switch (c) {
    case Constituent::Individual: return "individual";
    case Constituent::Local: return "local";
    case Constituent::Global: return "global";
    case Constituent::Battery: return "battery";
    case Constituent::Sink: return "sink";
    }
    return "?";
}

const char* to_string(Check c)
{
    switch (c) {
    case Check::False: return "false";
    case Check::True: return "true";
    case Check::Degenerate: return "degenerate";
    }
    return "?";
}

const char* to_string(RoutingPolicy p)
{
    return p == RoutingPolicy::Selective ? "selective" : "random";
}

std::array<UnitTable, kUnitCount> SimConfig::default_units()
{
    // Watts for {active, idle, sleep}; joules for every ordered switch.
    auto table = [](std::array<double, kStateCount> power, double to_active, double from_active,
                    double idle_sleep) {
        UnitTable t;
        t.power = power;
        const auto a = index(UnitState::Active), i = index(UnitState::Idle), s = index(UnitState::Sleep);
        t.switch_cost[i][a] = to_active;
        t.switch_cost[s][a] = to_active;
        t.switch_cost[a][i] = from_active;
        t.switch_cost[a][s] = from_active;
        t.switch_cost[i][s] = idle_sleep;
        t.switch_cost[s][i] = idle_sleep;
        return t;
    };
    std::array<UnitTable, kUnitCount> units;
    units[index(UnitKind::Processor)] = table({8e-3, 0.5e-3, 5e-6}, 1e-6, 1e-6, 5e-7);
    units[index(UnitKind::Sensor)] = table({3e-3, 0.1e-3, 5e-6}, 2e-6, 1e-6, 5e-7);
    units[index(UnitKind::Memory)] = table({3e-3, 0.05e-3, 1e-6}, 2e-7, 2e-7, 1e-7);
    units[index(UnitKind::TransceiverDsp)] = table({10e-3, 1e-3, 5e-6}, 1e-6, 1e-6, 5e-7);
    return units;
}

namespace {

void require(bool ok, const std::string& message)
{
    if (!ok)
        throw ConstraintError(message);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void validate(const SimConfig& c)
{
    require(c.node_count > 0, "node_count must be > 0");
    require(std::isfinite(c.area_width) && c.area_width > 0, "area_width must be > 0");
    require(std::isfinite(c.area_height) && c.area_height > 0, "area_height must be > 0");
    require(std::isfinite(c.tick) && c.tick > 0, "tick must be > 0");
    require(std::isfinite(c.horizon) && c.horizon >= c.tick, "horizon must be >= tick");
    require(std::isfinite(c.r_sense) && c.r_sense > 0, "r_sense must be > 0");
    require(std::isfinite(c.r_tx) && c.r_tx > 0, "r_tx must be > 0");
    for (std::size_t i = 0; i < kConstituentCount; ++i)
        require(finite_nonneg(c.lambda[i]), "lambda[" + std::to_string(i) + "] must be >= 0");
    require(finite_nonneg(c.e_amp), "e_amp must be >= 0");
    require(finite_nonneg(c.e_elec), "e_elec must be >= 0");
    for (auto k : kAllUnits) {
        for (auto s : kAllStates) {
            require(finite_nonneg(c.power(k, s)),
                    std::string("unit_powers.") + to_string(k) + "." + to_string(s) + " must be >= 0");
            for (auto t : kAllStates)
                require(finite_nonneg(c.switch_cost(k, s, t)), std::string("switch_costs.") + to_string(k) +
                                                                   "." + to_string(s) + "->" + to_string(t) +
                                                                   " must be >= 0");
        }
    }
    require(std::isfinite(c.processor.frequency) && c.processor.frequency > 0, "frequency must be > 0");
    require(std::isfinite(c.processor.switched_capacitance) && c.processor.switched_capacitance > 0,
            "switched_capacitance must be > 0");
    require(std::isfinite(c.processor.voltage) && c.processor.voltage > 0, "voltage must be > 0");
    const std::pair<const char*, double> nonneg[] = {
        {"c_proc", c.c_proc},
        {"c_srad", c.c_srad},
        {"e_sbit", c.e_sbit},
        {"e_rd", c.e_rd},
        {"e_wt", c.e_wt},
        {"p_retain", c.p_retain},
        {"e_code", c.e_code},
        {"e_dcode", c.e_dcode},
        {"b_data", c.bits.data},
        {"b_mon", c.bits.mon},
        {"b_sec", c.bits.sec},
        {"b_local", c.bits.local},
        {"b_topo", c.bits.topo},
        {"b_global", c.bits.global},
        {"b_snk", c.bits.snk},
        {"g_sense", c.g_sense},
        {"g_tx_cap", c.g_tx_cap},
        {"collision_coeff", c.collision_coeff},
        {"loss_coeff", c.loss_coeff},
        {"e_initial", c.e_initial},
        {"busy_window", c.busy_window},
        {"w_e", c.w_e},
        {"w_b", c.w_b},
    };
    for (const auto& [name, value] : nonneg)
        require(finite_nonneg(value), std::string(name) + " must be >= 0");
    require(std::isfinite(c.monitor_period) && c.monitor_period > 0, "monitor_period must be > 0");
    require(std::isfinite(c.global_period) && c.global_period > 0, "global_period must be > 0");
    require(std::isfinite(c.sample_period) && c.sample_period > 0, "sample_period must be > 0");
    const Rect& r = c.sink_region;
    require(std::isfinite(r.x_min) && std::isfinite(r.x_max) && std::isfinite(r.y_min) && std::isfinite(r.y_max) &&
                r.x_min <= r.x_max && r.y_min <= r.y_max,
            "sink_region must be a nonempty rectangle");
    require(c.sink_count > 0, "sink_count must be > 0");
    const HarvestProfile& h = c.harvest;
    require(finite_nonneg(h.power) && finite_nonneg(h.amplitude), "harvest power must be >= 0");
    require(std::isfinite(h.period) && h.period > 0, "harvest.period must be > 0");
}

double EnergyBreakdown::state_total() const
{
    double sum = 0.0;
    for (const auto& unit : unit_state)
        for (double e : unit)
            sum += e;
    return sum;
}

double EnergyBreakdown::switch_total() const
{
    double sum = 0.0;
    for (const auto& unit : unit_switch)
        for (const auto& row : unit)
            for (double e : row)
                sum += e;
    return sum;
}

EnergyBreakdown& EnergyBreakdown::operator+=(const EnergyBreakdown& o)
{
    for (std::size_t u = 0; u < kUnitCount; ++u)
        for (std::size_t s = 0; s < kStateCount; ++s) {
            unit_state[u][s] += o.unit_state[u][s];
            for (std::size_t t = 0; t < kStateCount; ++t)
                unit_switch[u][s][t] += o.unit_switch[u][s][t];
        }
    mon += o.mon;
    sec += o.sec;
    local += o.local;
    coll += o.coll;
    ohear += o.ohear;
    idle += o.idle;
    topo += o.topo;
    rout += o.rout;
    global += o.global;
    pktls += o.pktls;
    battery += o.battery;
    snk += o.snk;
    return *this;
}

}  // namespace heda
