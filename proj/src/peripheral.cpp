#include "heda/peripheral.hpp"

#include <cmath>
#include <numbers>

#include "heda/radio.hpp"

namespace heda::peripheral {

namespace {

// Antiderivative of max(0, A sin(2 pi s / T)) from 0 to t.
double positive_sine_integral(double amplitude, double period, double t)
{
    const double per_cycle = amplitude * period / std::numbers::pi;
    const double cycles = std::floor(t / period);
    const double r = t - cycles * period;
    double partial = per_cycle;
    if (r < period / 2)
        partial = amplitude * period / (2 * std::numbers::pi) * (1 - std::cos(2 * std::numbers::pi * r / period));
    return cycles * per_cycle + partial;
}

}  // namespace

double harvested(const HarvestProfile& p, double t, double dt)
{
    if (dt < 0)
        throw ConstraintError("dt must be >= 0");
    switch (p.kind) {
    case HarvestKind::None:
        return 0.0;
    case HarvestKind::Constant:
        return p.power * dt;
    case HarvestKind::Sinusoidal: {
        const double e = positive_sine_integral(p.amplitude, p.period, t + dt) -
                         positive_sine_integral(p.amplitude, p.period, t);
        return e > 0 ? e : 0.0;
    }
    }
    return 0.0;
}

double sink_energy(double b_snk, const SimConfig& config)
{
    if (!std::isfinite(b_snk) || b_snk < 0)
        throw ConstraintError("b_snk must be >= 0");
    return radio::rx_energy(b_snk, radio::params(config));
}

}  // namespace heda::peripheral
