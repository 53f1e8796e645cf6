#pragma once

#include "heda/types.hpp"

// Environment (harvesting) and sink constituents.
namespace heda::peripheral {

/// Energy harvested over [t, t + dt], >= 0. Sinusoidal integrates max(0, A sin(2 pi t / T)).
double harvested(const HarvestProfile& profile, double t, double dt);

/// Battery-constituent contribution over [t, t + dt]: the negated harvest.
inline double harvest_energy(const HarvestProfile& profile, double t, double dt) { return -harvested(profile, t, dt); }

/// Credit `credit` joules to a residual without exceeding capacity. Returns the residual after crediting.
inline double credit_clamped(double residual, double capacity, double credit)
{
    const double r = residual + credit;
    return r > capacity ? capacity : r;
}

/// Receive cost of sink-to-node command traffic: e_elec * b_snk.
double sink_energy(double b_snk, const SimConfig& config);

}  // namespace heda::peripheral
