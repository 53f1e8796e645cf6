#pragma once

#include <span>

#include "heda/types.hpp"

// Per-node unit state machines: state occupancy, state switches and active workloads.
namespace heda::individual {

struct Workload {
    double b_proc = 0;             // bits processed
    double b_sense = 0;            // bits generated by the sensor
    double sense_active_time = 0;  // seconds the sensor spent sensing
    double b_store = 0;            // bits per stored item
    double n_read = 0;
    double n_write = 0;
    double t_store = 0;            // seconds of storage, summed over stored items
    double b_rx = 0;               // bits decoded
    double b_tx = 0;               // bits coded
    bool operator==(const Workload&) const = default;
};

/// Throws ConstraintError if any field is negative or non-finite.
void validate(const Workload& w);

struct Transition {
    UnitKind kind;
    UnitState from;
    UnitState to;
};

/// Seconds each unit spent in each state during an interval.
using Occupancy = std::array<std::array<double, kStateCount>, kUnitCount>;

/// unit power * duration.
double state_energy(UnitKind kind, UnitState state, double duration, const SimConfig& config);

/// Configured cost of one switch. Throws ConstraintError("no self-switch") when from == to.
double switch_energy(UnitKind kind, UnitState from, UnitState to, const SimConfig& config);

/// The separable terms of the active workload energies, one per configured constant.
struct WorkloadTerms {
    double processor_work = 0;
    double sensor_area = 0;
    double sensor_bits = 0;
    double memory_read = 0;
    double memory_write = 0;
    double memory_retain = 0;
    double dsp_code = 0;
    double dsp_decode = 0;
};

WorkloadTerms workload_terms(const Workload& w, const SimConfig& config);

/// Workload-dependent active-state energy of one unit:
///   processor  c_proc * f * b_proc
///   sensor     c_srad * r_sense^2 * sense_active_time + e_sbit * b_sense
///   memory     (e_rd * n_read + e_wt * n_write) * b_store + p_retain * b_store * t_store
///   dsp        e_code * b_tx + e_dcode * b_rx
double active_workload_energy(UnitKind kind, const Workload& w, const SimConfig& config);

struct Result {
    double total = 0;
    // unit_state[u][Active] includes the workload term; [TransceiverDsp][Idle] is always zero,
    // idle listening belongs to the local constituent.
    std::array<std::array<double, kStateCount>, kUnitCount> unit_state{};
    std::array<std::array<std::array<double, kStateCount>, kStateCount>, kUnitCount> unit_switch{};
    std::array<double, kUnitCount> workload{};
    double state_total = 0;
    double switch_total = 0;
    Check constraint = Check::Degenerate;  // state_total > switch_total
};

/// True for the one (unit, state) pair whose occupancy is charged as idle listening instead.
constexpr bool is_idle_listening(UnitKind k, UnitState s)
{
    return k == UnitKind::TransceiverDsp && s == UnitState::Idle;
}

/// Energy of the individual constituent over one interval. Throws ConstraintError if
/// any unit's occupancy exceeds the interval.
Result individual_energy(const Occupancy& occupancy, double interval, const Workload& w,
                         std::span<const Transition> transitions, const SimConfig& config);

}  // namespace heda::individual
