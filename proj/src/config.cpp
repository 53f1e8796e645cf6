#include "heda/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace heda {

using nlohmann::json;

RoutingPolicy parse_routing_policy(std::string_view text)
{
    if (text == "selective")
        return RoutingPolicy::Selective;
    if (text == "random")
        return RoutingPolicy::Random;
    throw ParseError("routing_policy: expected \"selective\" or \"random\", got \"" + std::string(text) + "\"");
}

UnitKind parse_unit_kind(std::string_view text)
{
    for (auto k : kAllUnits)
        if (text == to_string(k))
            return k;
    throw ParseError("unknown unit kind \"" + std::string(text) + "\"");
}

UnitState parse_unit_state(std::string_view text)
{
    for (auto s : kAllStates)
        if (text == to_string(s))
            return s;
    throw ParseError("unknown unit state \"" + std::string(text) + "\"");
}

namespace {

std::string join(const std::string& prefix, const std::string& key)
{
    return prefix.empty() ? key : prefix + "." + key;
}

/// Walks one JSON object, reading known keys and rejecting the rest.
class ObjectReader {
public:
    ObjectReader(const json& object, std::string path) : obj_(object), path_(std::move(path))
    {
        if (!obj_.is_object())
            throw ParseError((path_.empty() ? std::string("document") : path_) + ": expected a table");
    }

    const json* find(const std::string& key)
    {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_number())
                throw ParseError(join(path_, key) + ": expected a number");
            out = v->get<double>();
        }
    }

    template <class UInt>
    void unsigned_integer(const std::string& key, UInt& out)
    {
        if (const json* v = find(key)) {
            if (v->is_number_integer() && v->get<std::int64_t>() < 0)
                throw ConstraintError(join(path_, key) + " must be >= 0");
            if (!v->is_number_unsigned())
                throw ParseError(join(path_, key) + ": expected a nonnegative integer");
            const auto raw = v->get<std::uint64_t>();
            if (raw > std::numeric_limits<UInt>::max())
                throw ParseError(join(path_, key) + ": value out of range");
            out = static_cast<UInt>(raw);
        }
    }

    std::string path(const std::string& key) const { return join(path_, key); }

    void finish() const
    {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.count(it.key()))
                throw ParseError("unknown key \"" + join(path_, it.key()) + "\"");
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

std::string switch_key(UnitState from, UnitState to)
{
    return std::string(to_string(from)) + "->" + to_string(to);
}

void read_units(ObjectReader& root, SimConfig& c)
{
    if (const json* powers = root.find("unit_powers")) {
        ObjectReader table(*powers, "unit_powers");
        for (auto k : kAllUnits) {
            if (const json* unit = table.find(to_string(k))) {
                ObjectReader r(*unit, table.path(to_string(k)));
                for (auto s : kAllStates)
                    r.number(to_string(s), c.units[index(k)].power[index(s)]);
                r.finish();
            }
        }
        table.finish();
    }
    if (const json* switches = root.find("switch_costs")) {
        ObjectReader table(*switches, "switch_costs");
        for (auto k : kAllUnits) {
            if (const json* unit = table.find(to_string(k))) {
                ObjectReader r(*unit, table.path(to_string(k)));
                for (auto from : kAllStates)
                    for (auto to : kAllStates)
                        if (from != to)
                            r.number(switch_key(from, to), c.units[index(k)].switch_cost[index(from)][index(to)]);
                r.finish();
            }
        }
        table.finish();
    }
}

SimConfig from_json(const json& doc)
{
    SimConfig c;
    ObjectReader r(doc, "");
    r.unsigned_integer("node_count", c.node_count);
    r.number("area_width", c.area_width);
    r.number("area_height", c.area_height);
    r.number("horizon", c.horizon);
    r.number("tick", c.tick);
    r.unsigned_integer("seed", c.seed);
    r.number("r_sense", c.r_sense);
    r.number("r_tx", c.r_tx);
    if (const json* v = r.find("routing_policy")) {
        if (!v->is_string())
            throw ParseError("routing_policy: expected a string");
        c.routing_policy = parse_routing_policy(v->get<std::string>());
    }
    if (const json* v = r.find("lambda")) {
        if (!v->is_array())
            throw ParseError("lambda: expected an array");
        if (v->size() != kConstituentCount)
            throw ConstraintError("lambda requires 5 entries");
        for (std::size_t i = 0; i < kConstituentCount; ++i) {
            if (!(*v)[i].is_number())
                throw ParseError("lambda[" + std::to_string(i) + "]: expected a number");
            c.lambda[i] = (*v)[i].get<double>();
        }
    }
    r.number("e_amp", c.e_amp);
    r.number("e_elec", c.e_elec);
    read_units(r, c);
    r.number("frequency", c.processor.frequency);
    r.number("switched_capacitance", c.processor.switched_capacitance);
    r.number("voltage", c.processor.voltage);
    r.number("c_proc", c.c_proc);
    r.number("c_srad", c.c_srad);
    r.number("e_sbit", c.e_sbit);
    r.number("e_rd", c.e_rd);
    r.number("e_wt", c.e_wt);
    r.number("p_retain", c.p_retain);
    r.number("e_code", c.e_code);
    r.number("e_dcode", c.e_dcode);
    r.number("b_data", c.bits.data);
    r.number("b_mon", c.bits.mon);
    r.number("b_sec", c.bits.sec);
    r.number("b_local", c.bits.local);
    r.number("b_topo", c.bits.topo);
    r.number("b_global", c.bits.global);
    r.number("b_snk", c.bits.snk);
    r.number("g_sense", c.g_sense);
    r.number("g_tx_cap", c.g_tx_cap);
    r.number("monitor_period", c.monitor_period);
    r.number("global_period", c.global_period);
    r.number("sample_period", c.sample_period);
    r.number("collision_coeff", c.collision_coeff);
    r.unsigned_integer("max_retries", c.max_retries);
    r.number("loss_coeff", c.loss_coeff);
    r.number("e_initial", c.e_initial);
    if (const json* v = r.find("sink_region")) {
        ObjectReader sr(*v, "sink_region");
        sr.number("x_min", c.sink_region.x_min);
        sr.number("x_max", c.sink_region.x_max);
        sr.number("y_min", c.sink_region.y_min);
        sr.number("y_max", c.sink_region.y_max);
        sr.finish();
    }
    r.unsigned_integer("sink_count", c.sink_count);
    r.number("busy_window", c.busy_window);
    r.number("w_e", c.w_e);
    r.number("w_b", c.w_b);
    if (const json* v = r.find("harvest")) {
        ObjectReader hr(*v, "harvest");
        if (const json* kind = hr.find("kind")) {
            if (!kind->is_string())
                throw ParseError("harvest.kind: expected a string");
            const auto k = kind->get<std::string>();
            if (k == "none")
                c.harvest.kind = HarvestKind::None;
            else if (k == "constant")
                c.harvest.kind = HarvestKind::Constant;
            else if (k == "sinusoidal")
                c.harvest.kind = HarvestKind::Sinusoidal;
            else
                throw ParseError("harvest.kind: expected none, constant or sinusoidal");
        }
        hr.number("power", c.harvest.power);
        hr.number("amplitude", c.harvest.amplitude);
        hr.number("period", c.harvest.period);
        hr.finish();
    }
    r.finish();
    validate(c);
    return c;
}

const char* harvest_kind_name(HarvestKind k)
{
    switch (k) {
    case HarvestKind::None: return "none";
    case HarvestKind::Constant: return "constant";
    case HarvestKind::Sinusoidal: return "sinusoidal";
    }
    return "none";
}

}  // namespace

SimConfig load_config(std::string_view document)
{
    // An empty document means all defaults.
    if (document.find_first_not_of(" \t\r\n") == std::string_view::npos)
        return from_json(json::object());
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("document: ") + e.what());
    }
    return from_json(doc);
}

SimConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_config(buffer.str());
}

std::string to_json(const SimConfig& c)
{
    json doc;
    doc["node_count"] = c.node_count;
    doc["area_width"] = c.area_width;
    doc["area_height"] = c.area_height;
    doc["horizon"] = c.horizon;
    doc["tick"] = c.tick;
    doc["seed"] = c.seed;
    doc["r_sense"] = c.r_sense;
    doc["r_tx"] = c.r_tx;
    doc["routing_policy"] = to_string(c.routing_policy);
    doc["lambda"] = c.lambda;
    doc["e_amp"] = c.e_amp;
    doc["e_elec"] = c.e_elec;
    json powers = json::object(), switches = json::object();
    for (auto k : kAllUnits) {
        json p = json::object(), s = json::object();
        for (auto from : kAllStates) {
            p[to_string(from)] = c.power(k, from);
            for (auto to : kAllStates)
                if (from != to)
                    s[switch_key(from, to)] = c.switch_cost(k, from, to);
        }
        powers[to_string(k)] = p;
        switches[to_string(k)] = s;
    }
    doc["unit_powers"] = powers;
    doc["switch_costs"] = switches;
    doc["frequency"] = c.processor.frequency;
    doc["switched_capacitance"] = c.processor.switched_capacitance;
    doc["voltage"] = c.processor.voltage;
    doc["c_proc"] = c.c_proc;
    doc["c_srad"] = c.c_srad;
    doc["e_sbit"] = c.e_sbit;
    doc["e_rd"] = c.e_rd;
    doc["e_wt"] = c.e_wt;
    doc["p_retain"] = c.p_retain;
    doc["e_code"] = c.e_code;
    doc["e_dcode"] = c.e_dcode;
    doc["b_data"] = c.bits.data;
    doc["b_mon"] = c.bits.mon;
    doc["b_sec"] = c.bits.sec;
    doc["b_local"] = c.bits.local;
    doc["b_topo"] = c.bits.topo;
    doc["b_global"] = c.bits.global;
    doc["b_snk"] = c.bits.snk;
    doc["g_sense"] = c.g_sense;
    doc["g_tx_cap"] = c.g_tx_cap;
    doc["monitor_period"] = c.monitor_period;
    doc["global_period"] = c.global_period;
    doc["sample_period"] = c.sample_period;
    doc["collision_coeff"] = c.collision_coeff;
    doc["max_retries"] = c.max_retries;
    doc["loss_coeff"] = c.loss_coeff;
    doc["e_initial"] = c.e_initial;
    doc["sink_region"] = {{"x_min", c.sink_region.x_min},
                          {"x_max", c.sink_region.x_max},
                          {"y_min", c.sink_region.y_min},
                          {"y_max", c.sink_region.y_max}};
    doc["sink_count"] = c.sink_count;
    doc["busy_window"] = c.busy_window;
    doc["w_e"] = c.w_e;
    doc["w_b"] = c.w_b;
    doc["harvest"] = {{"kind", harvest_kind_name(c.harvest.kind)},
                      {"power", c.harvest.power},
                      {"amplitude", c.harvest.amplitude},
                      {"period", c.harvest.period}};
    return doc.dump(2);
}

}  // namespace heda
