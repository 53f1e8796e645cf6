#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "heda/types.hpp"

namespace heda {

/// What a ledger entry charges. Every kind has one replay formula over the entry's
/// raw parameters (bits, count, d2, duration).
enum class ChargeKind : std::uint8_t {
    UnitState,      // power[unit][state] * duration
    UnitSwitch,     // switch_cost[unit][from][to] * count
    ProcessorWork,  // c_proc * f * bits
    SensorArea,     // c_srad * r_sense^2 * duration
    SensorBits,     // e_sbit * bits
    MemoryRead,     // e_rd * count * bits
    MemoryWrite,    // e_wt * count * bits
    MemoryRetain,   // p_retain * bits * duration
    DspCode,        // e_code * bits
    DspDecode,      // e_dcode * bits
    Mon,            // e_amp * d2 * bits + e_elec * bits * count
    Sec,            // as Mon
    Local,          // as Mon
    Coll,           // e_amp * d2 * bits
    Ohear,          // e_elec * bits
    Idle,           // transceiver idle power * duration
    Topo,           // as Mon
    RoutTx,         // e_amp * d2 * bits
    RoutRx,         // e_elec * bits
    Global,         // as Mon
    Pktls,          // e_amp * d2 * bits
    Harvest,        // -harvested(profile, timestamp - duration, duration)
    Spill,          // harvest refused by a full battery, as recorded (>= 0)
    Snk,            // e_elec * bits
};

struct Subcomponent {
    ChargeKind kind = ChargeKind::UnitState;
    UnitKind unit = UnitKind::Processor;  // UnitState / UnitSwitch only
    UnitState from = UnitState::Active;   // the state for UnitState
    UnitState to = UnitState::Active;     // UnitSwitch only
    bool operator==(const Subcomponent&) const = default;
};

Constituent constituent_of(ChargeKind kind);
std::string to_string(const Subcomponent& sub);
/// Throws ParseError for unknown names.
Subcomponent parse_subcomponent(std::string_view name);

enum class CauseKind : std::uint8_t { Interval, Packet, Periodic, TopologyBuild, TopologyRebuild };

/// Event reference of a charge: a packet id, the node whose loss forced a rebuild,
/// or a periodic task.
struct Cause {
    CauseKind kind = CauseKind::Interval;
    std::uint64_t ref = 0;
    bool operator==(const Cause&) const = default;
};

std::string to_string(const Cause& cause);
Cause parse_cause(std::string_view text);

/// One charged amount of energy with the raw parameters that reproduce it.
struct LedgerEntry {
    double time = 0;  // seconds
    NodeId node = 0;
    Subcomponent sub;
    double joules = 0;  // >= 0 except for Battery
    Cause cause;
    double bits = 0;
    double count = 0;
    double d2 = 0;        // m^2, summed over links
    double duration = 0;  // s
    bool operator==(const LedgerEntry&) const = default;

    Constituent constituent() const { return constituent_of(sub.kind); }
};

inline constexpr std::string_view kLedgerHeader =
    "timestamp_s,node_id,constituent,subcomponent,joules,cause,bits,count,d2_m2,duration_s";

/// Shortest round-trip decimal form.
std::string format_double(double v);

void write_ledger(std::ostream& out, const std::vector<LedgerEntry>& entries);
/// Parses an exported ledger. Throws ParseError naming the 0-based entry index.
std::vector<LedgerEntry> read_ledger(std::istream& in);

}  // namespace heda
