#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heda/ledger.hpp"
#include "heda/types.hpp"

// The energy ledger: weighted combination of constituents, residual updates,
// feasibility constraints and replay verification.
namespace heda::accounting {

/// lambda_1 * individual + lambda_2 * local + lambda_3 * global + lambda_4 * battery + lambda_5 * sink
double combine(const EnergyBreakdown& breakdown, const Lambda& lambda);
double combine(const std::array<double, kConstituentCount>& constituents, const Lambda& lambda);

struct ResidualUpdate {
    NodeState node;
    bool deactivated = false;
    double deficit = 0;  // unfunded part of the charge that caused deactivation
};

/// Applies one weighted charge. A charge the residual cannot fund is not applied:
/// the node goes inactive instead. Negative charges (harvest credit) are clamped at
/// the node's capacity and need `harvest_source`, otherwise ConstraintError.
ResidualUpdate update_residual(NodeState node, double consumed, bool harvest_source = false);

/// initial - residual. Throws ConstraintError if residual > initial or residual < 0.
double consumed_from_residual(double initial, double residual);

/// Recomputes one entry's joules from its raw parameters. The Spill kind is
/// state-dependent and returned as recorded. Throws ConstraintError if the
/// parameters are invalid for the kind.
double replay_charge(const LedgerEntry& entry, const SimConfig& config);

using ConstituentTotals = std::array<double, kConstituentCount>;

/// Per-node per-constituent totals recomputed from raw event parameters only.
/// Throws ConstraintError("entry <i>: ...") for a malformed entry.
std::vector<ConstituentTotals> replay(std::span<const LedgerEntry> log, const SimConfig& config);

/// Adds an entry's recorded joules to the matching sub-component of a breakdown.
/// Workload kinds land on their unit's active state, harvest and spill on battery.
void accumulate(EnergyBreakdown& breakdown, const LedgerEntry& entry);

/// Per-node per-constituent sums of the recorded joules.
std::vector<ConstituentTotals> recorded_totals(std::span<const LedgerEntry> log, std::size_t node_count);

struct ConstraintRow {
    double time = 0;
    NodeId node = 0;
    Check local_positive = Check::False;          // E_local > 0
    Check global_positive = Check::False;         // E_global > 0
    Check funded = Check::True;                   // every charge in the interval was funded
    Check battery_covers = Check::False;          // weighted non-battery sum < lambda_4 * E_battery
    Check state_over_switch = Check::Degenerate;  // state energy > switch energy
    Check has_neighbor = Check::False;            // n_i >= 1
    Check local_bounded = Check::Degenerate;      // e(local) < e(idle) + e(coll) + e(ohear)
    Check has_route = Check::False;               // e(rout) > 0
    Check route_dominates = Check::Degenerate;    // e(rout) > e(topo) + e(global) + e(pktls)
};

inline constexpr const char* kConstraintHeader =
    "time_s,node_id,local_positive,global_positive,funded,battery_covers,state_over_switch,has_neighbor,"
    "local_bounded,has_route,route_dominates";

/// Evaluates every feasibility constraint for one node over one interval.
ConstraintRow evaluate_constraints(double time, NodeId node, const EnergyBreakdown& interval,
                                   std::size_t neighbor_count, bool funded, const Lambda& lambda);

struct VerifyReport {
    bool ok = true;
    std::size_t entries = 0;
    NodeId worst_node = kNoNode;
    double worst_relative = 0;  // largest relative mismatch seen
    double worst_delta = 0;     // its absolute joules
    std::string message;
};

inline constexpr double kVerifyTolerance = 1e-12;

/// Replays the log and compares against the recorded joules per node and constituent,
/// and, when given, against each node's reported final residual.
VerifyReport verify(std::span<const LedgerEntry> log, const SimConfig& config,
                    std::optional<std::span<const double>> final_residuals = std::nullopt);

}  // namespace heda::accounting
