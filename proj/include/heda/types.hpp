#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace heda {

// Errors. The C API maps each class onto a status code.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed document or unknown key; the message carries the key path.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A value violates a named configuration or model constraint.
class ConstraintError : public Error {
public:
    using Error::Error;
};

/// Greedy forwarding found no sender edge.
class VoidError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

inline double squared_distance(Point a, Point b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double distance(Point a, Point b);

struct Rect {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;
    bool operator==(const Rect&) const = default;

    bool contains(Point p) const { return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max; }
};

// The five constituents of the overall energy model, in weight order.
enum class Constituent : std::uint8_t { Individual = 0, Local = 1, Global = 2, Battery = 3, Sink = 4 };
inline constexpr std::size_t kConstituentCount = 5;

enum class UnitKind : std::uint8_t { Processor = 0, Sensor = 1, Memory = 2, TransceiverDsp = 3 };
inline constexpr std::size_t kUnitCount = 4;
inline constexpr std::array<UnitKind, kUnitCount> kAllUnits{UnitKind::Processor, UnitKind::Sensor,
                                                            UnitKind::Memory, UnitKind::TransceiverDsp};

enum class UnitState : std::uint8_t { Active = 0, Idle = 1, Sleep = 2 };
inline constexpr std::size_t kStateCount = 3;
inline constexpr std::array<UnitState, kStateCount> kAllStates{UnitState::Active, UnitState::Idle,
                                                               UnitState::Sleep};

enum class RoutingPolicy : std::uint8_t { Selective, Random };

constexpr std::size_t index(UnitKind k) { return static_cast<std::size_t>(k); }
constexpr std::size_t index(UnitState s) { return static_cast<std::size_t>(s); }
constexpr std::size_t index(Constituent c) { return static_cast<std::size_t>(c); }

const char* to_string(UnitKind k);
const char* to_string(UnitState s);
const char* to_string(Constituent c);
const char* to_string(RoutingPolicy p);

using Lambda = std::array<double, kConstituentCount>;

/// Outcome of a feasibility constraint. Degenerate marks a strict comparison
/// whose two sides are both zero.
enum class Check : std::uint8_t { False = 0, True = 1, Degenerate = 2 };

const char* to_string(Check c);

inline Check check(bool ok) { return ok ? Check::True : Check::False; }

/// lhs > rhs, degenerate when both are zero.
inline Check strictly_greater(double lhs, double rhs)
{
    if (lhs == 0.0 && rhs == 0.0)
        return Check::Degenerate;
    return check(lhs > rhs);
}

/// Per-unit power table (watts, by state) and switch table (joules, by ordered pair).
struct UnitTable {
    std::array<double, kStateCount> power{};
    std::array<std::array<double, kStateCount>, kStateCount> switch_cost{};
    bool operator==(const UnitTable&) const = default;
};

struct BitSizes {
    double data = 256;
    double mon = 32;
    double sec = 32;
    double local = 16;
    double topo = 64;
    double global = 64;
    double snk = 0;
    bool operator==(const BitSizes&) const = default;
};

enum class HarvestKind : std::uint8_t { None, Constant, Sinusoidal };

struct HarvestProfile {
    HarvestKind kind = HarvestKind::None;
    double power = 0.0;      // Constant, watts
    double amplitude = 0.0;  // Sinusoidal, watts
    double period = 1.0;     // Sinusoidal, seconds
    bool operator==(const HarvestProfile&) const = default;
};

/// Processor electrical parameters. Voltage is folded into c_proc.
struct ProcessorParams {
    double frequency = 8e6;               // Hz
    double switched_capacitance = 1e-11;  // F, documentation only
    double voltage = 3.0;                 // V, documentation only
    bool operator==(const ProcessorParams&) const = default;
};

struct SimConfig {
    std::uint32_t node_count = 100;
    double area_width = 500.0;
    double area_height = 500.0;
    double horizon = 60.0;
    double tick = 0.001;
    std::uint64_t seed = 1;

    double r_sense = 40.0;
    double r_tx = 130.0;
    RoutingPolicy routing_policy = RoutingPolicy::Selective;
    Lambda lambda{1.0, 1.0, 1.0, 1.0, 1.0};

    double e_amp = 100e-12;  // J/bit/m^2
    double e_elec = 50e-9;   // J/bit

    std::array<UnitTable, kUnitCount> units = default_units();

    ProcessorParams processor{};
    double c_proc = 1.25e-16;  // J/(bit*Hz)
    double c_srad = 1e-4;      // J/(m^2*s)
    double e_sbit = 1e-9;      // J/bit
    double e_rd = 1e-9;        // J/bit
    double e_wt = 2e-9;        // J/bit
    double p_retain = 1e-9;    // J/(bit*s)
    double e_code = 5e-10;     // J/bit
    double e_dcode = 5e-10;    // J/bit

    BitSizes bits{};

    double g_sense = 50.0;    // events/s, field-wide
    double g_tx_cap = 1000.0; // packets/s, upper bound on a node's measured transmit rate
    double monitor_period = 1.0;
    double global_period = 1.0;
    double sample_period = 1.0;
    double collision_coeff = 0.01;  // m^2*s
    std::uint32_t max_retries = 3;
    double loss_coeff = 0.0;        // loss probability per queued packet at the receiver

    double e_initial = 0.5;
    Rect sink_region{0.0, 25.0, 0.0, 500.0};
    std::uint32_t sink_count = 5;
    double busy_window = 1.0;
    double w_e = 1.0;
    double w_b = 0.5;

    HarvestProfile harvest{};

    bool operator==(const SimConfig&) const = default;

    static std::array<UnitTable, kUnitCount> default_units();

    double power(UnitKind k, UnitState s) const { return units[index(k)].power[index(s)]; }
    double switch_cost(UnitKind k, UnitState from, UnitState to) const
    {
        return units[index(k)].switch_cost[index(from)][index(to)];
    }
    double area() const { return area_width * area_height; }
};

/// Throws ConstraintError naming the first violated invariant.
void validate(const SimConfig& config);

/// Per-node simulation state. Owned by exactly one simulation.
struct NodeState {
    NodeId id = 0;
    Point position{};
    double residual = 0.0;
    double initial = 0.0;
    bool active = true;
    std::array<UnitState, kUnitCount> unit_states{UnitState::Idle, UnitState::Sleep, UnitState::Idle,
                                                  UnitState::Idle};
    std::deque<std::int64_t> busy_events;  // ticks of recent forwards, oldest first
};

/// Resting state each unit returns to between activations.
constexpr UnitState base_state(UnitKind k)
{
    return k == UnitKind::Sensor ? UnitState::Sleep : UnitState::Idle;
}

/// Per-node energy split over constituents and their named sub-components.
struct EnergyBreakdown {
    // Individual: per-unit state energies (active includes workload) and switch energies.
    std::array<std::array<double, kStateCount>, kUnitCount> unit_state{};
    std::array<std::array<std::array<double, kStateCount>, kStateCount>, kUnitCount> unit_switch{};
    // Local.
    double mon = 0, sec = 0, local = 0, coll = 0, ohear = 0, idle = 0;
    // Global.
    double topo = 0, rout = 0, global = 0, pktls = 0;
    // Peripheral. battery <= 0 when harvesting.
    double battery = 0, snk = 0;

    double state_total() const;
    double switch_total() const;
    double individual() const { return state_total() + switch_total(); }
    double local_total() const { return mon + sec + local + coll + ohear + idle; }
    double global_total() const { return topo + rout + global + pktls; }
    double sink() const { return snk; }
    std::array<double, kConstituentCount> constituents() const
    {
        return {individual(), local_total(), global_total(), battery, snk};
    }
    EnergyBreakdown& operator+=(const EnergyBreakdown& other);
};

struct Deployment {
    std::vector<Point> nodes;
    std::vector<Point> sinks;
    std::uint64_t seed = 0;

    std::size_t node_count() const { return nodes.size(); }
    bool operator==(const Deployment&) const = default;
};

}  // namespace heda
