#pragma once

#include "heda/types.hpp"

// First-order radio model, shared by the local and global constituents.
namespace heda::radio {

struct RadioParams {
    double e_amp = 100e-12;  // J/bit/m^2
    double e_elec = 50e-9;   // J/bit
};

inline RadioParams params(const SimConfig& c) { return {c.e_amp, c.e_elec}; }

/// Transmit amplifier energy for k bits over squared distance d2.
inline double tx_energy_sq(double d2, double k, const RadioParams& p) { return p.e_amp * d2 * k; }

/// e_amp * d^2 * k
inline double tx_energy(double d, double k, const RadioParams& p) { return tx_energy_sq(d * d, k, p); }

/// e_elec * k
inline double rx_energy(double k, const RadioParams& p) { return p.e_elec * k; }

}  // namespace heda::radio
