#include "heda/individual.hpp"

#include <cmath>
#include <string>

namespace heda::individual {

void validate(const Workload& w)
{
    const double fields[] = {w.b_proc, w.b_sense, w.sense_active_time, w.b_store, w.n_read,
                             w.n_write, w.t_store, w.b_rx, w.b_tx};
    for (double f : fields)
        if (!std::isfinite(f) || f < 0)
            throw ConstraintError("workload fields must be >= 0");
}

double state_energy(UnitKind kind, UnitState state, double duration, const SimConfig& config)
{
    return config.power(kind, state) * duration;
}

double switch_energy(UnitKind kind, UnitState from, UnitState to, const SimConfig& config)
{
    if (from == to)
        throw ConstraintError("no self-switch");
    return config.switch_cost(kind, from, to);
}

WorkloadTerms workload_terms(const Workload& w, const SimConfig& c)
{
    WorkloadTerms t;
    t.processor_work = c.c_proc * c.processor.frequency * w.b_proc;
    t.sensor_area = c.c_srad * (c.r_sense * c.r_sense) * w.sense_active_time;
    t.sensor_bits = c.e_sbit * w.b_sense;
    t.memory_read = c.e_rd * w.n_read * w.b_store;
    t.memory_write = c.e_wt * w.n_write * w.b_store;
    t.memory_retain = c.p_retain * w.b_store * w.t_store;
    t.dsp_code = c.e_code * w.b_tx;
    t.dsp_decode = c.e_dcode * w.b_rx;
    return t;
}

double active_workload_energy(UnitKind kind, const Workload& w, const SimConfig& c)
{
    const WorkloadTerms t = workload_terms(w, c);
    switch (kind) {
    case UnitKind::Processor: return t.processor_work;
    case UnitKind::Sensor: return t.sensor_area + t.sensor_bits;
    case UnitKind::Memory: return t.memory_read + t.memory_write + t.memory_retain;
    case UnitKind::TransceiverDsp: return t.dsp_code + t.dsp_decode;
    }
    return 0.0;
}

Result individual_energy(const Occupancy& occupancy, double interval, const Workload& w,
                         std::span<const Transition> transitions, const SimConfig& config)
{
    validate(w);
    Result r;
    for (auto k : kAllUnits) {
        double occupied = 0.0;
        for (auto s : kAllStates) {
            const double d = occupancy[index(k)][index(s)];
            if (!std::isfinite(d) || d < 0)
                throw ConstraintError("occupancy durations must be >= 0");
            occupied += d;
            if (!is_idle_listening(k, s))
                r.unit_state[index(k)][index(s)] = state_energy(k, s, d, config);
        }
        if (occupied > interval * (1.0 + 1e-9) + 1e-15)
            throw ConstraintError(std::string(to_string(k)) + " occupancy exceeds the interval");
        r.workload[index(k)] = active_workload_energy(k, w, config);
        r.unit_state[index(k)][index(UnitState::Active)] += r.workload[index(k)];
    }
    for (const auto& t : transitions)
        r.unit_switch[index(t.kind)][index(t.from)][index(t.to)] += switch_energy(t.kind, t.from, t.to, config);

    for (std::size_t u = 0; u < kUnitCount; ++u)
        for (std::size_t s = 0; s < kStateCount; ++s) {
            r.state_total += r.unit_state[u][s];
            for (std::size_t t = 0; t < kStateCount; ++t)
                r.switch_total += r.unit_switch[u][s][t];
        }
    r.total = r.state_total + r.switch_total;
    r.constraint = strictly_greater(r.state_total, r.switch_total);
    return r;
}

}  // namespace heda::individual
