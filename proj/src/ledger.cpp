#include "heda/ledger.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

namespace heda {

namespace {

struct KindName {
    ChargeKind kind;
    const char* name;
};

constexpr std::array<KindName, 22> kPlainKinds{{
    {ChargeKind::ProcessorWork, "processor_work"},
    {ChargeKind::SensorArea, "sensor_area"},
    {ChargeKind::SensorBits, "sensor_bits"},
    {ChargeKind::MemoryRead, "memory_read"},
    {ChargeKind::MemoryWrite, "memory_write"},
    {ChargeKind::MemoryRetain, "memory_retain"},
    {ChargeKind::DspCode, "dsp_code"},
    {ChargeKind::DspDecode, "dsp_decode"},
    {ChargeKind::Mon, "mon"},
    {ChargeKind::Sec, "sec"},
    {ChargeKind::Local, "local"},
    {ChargeKind::Coll, "coll"},
    {ChargeKind::Ohear, "ohear"},
    {ChargeKind::Idle, "idle"},
    {ChargeKind::Topo, "topo"},
    {ChargeKind::RoutTx, "rout_tx"},
    {ChargeKind::RoutRx, "rout_rx"},
    {ChargeKind::Global, "global"},
    {ChargeKind::Pktls, "pktls"},
    {ChargeKind::Harvest, "harvest"},
    {ChargeKind::Spill, "spill"},
    {ChargeKind::Snk, "snk"},
}};

double parse_double(std::string_view field, std::size_t index, const char* what)
{
    double v = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ParseError("entry " + std::to_string(index) + ": bad " + what + " \"" + std::string(field) + "\"");
    return v;
}

}  // namespace

Constituent constituent_of(ChargeKind kind)
{
    switch (kind) {
    case ChargeKind::UnitState:
    case ChargeKind::UnitSwitch:
    case ChargeKind::ProcessorWork:
    case ChargeKind::SensorArea:
    case ChargeKind::SensorBits:
    case ChargeKind::MemoryRead:
    case ChargeKind::MemoryWrite:
    case ChargeKind::MemoryRetain:
    case ChargeKind::DspCode:
    case ChargeKind::DspDecode:
        return Constituent::Individual;
    case ChargeKind::Mon:
    case ChargeKind::Sec:
    case ChargeKind::Local:
    case ChargeKind::Coll:
    case ChargeKind::Ohear:
    case ChargeKind::Idle:
        return Constituent::Local;
    case ChargeKind::Topo:
    case ChargeKind::RoutTx:
    case ChargeKind::RoutRx:
    case ChargeKind::Global:
    case ChargeKind::Pktls:
        return Constituent::Global;
    case ChargeKind::Harvest:
    case ChargeKind::Spill:
        return Constituent::Battery;
    case ChargeKind::Snk:
        return Constituent::Sink;
    }
    return Constituent::Individual;
}

std::string to_string(const Subcomponent& sub)
{
    if (sub.kind == ChargeKind::UnitState)
        return std::string(to_string(sub.unit)) + "_" + to_string(sub.from);
    if (sub.kind == ChargeKind::UnitSwitch)
        return std::string(to_string(sub.unit)) + "_switch_" + to_string(sub.from) + "_" + to_string(sub.to);
    for (const auto& k : kPlainKinds)
        if (k.kind == sub.kind)
            return k.name;
    return "?";
}

Subcomponent parse_subcomponent(std::string_view name)
{
    for (const auto& k : kPlainKinds)
        if (name == k.name)
            return {k.kind};
    for (auto unit : kAllUnits) {
        const std::string prefix = std::string(to_string(unit)) + "_";
        if (name.substr(0, prefix.size()) != prefix)
            continue;
        const std::string_view rest = name.substr(prefix.size());
        for (auto s : kAllStates)
            if (rest == to_string(s))
                return {ChargeKind::UnitState, unit, s, s};
        for (auto from : kAllStates)
            for (auto to : kAllStates)
                if (from != to && rest == std::string("switch_") + to_string(from) + "_" + to_string(to))
                    return {ChargeKind::UnitSwitch, unit, from, to};
    }
    throw ParseError("unknown subcomponent \"" + std::string(name) + "\"");
}

std::string to_string(const Cause& c)
{
    switch (c.kind) {
    case CauseKind::Interval: return "interval";
    case CauseKind::Packet: return "pkt:" + std::to_string(c.ref);
    case CauseKind::Periodic: return c.ref == 0 ? "periodic:global" : "periodic:sink";
    case CauseKind::TopologyBuild: return "topo:build";
    case CauseKind::TopologyRebuild: return "topo:rebuild:" + std::to_string(c.ref);
    }
    return "?";
}

Cause parse_cause(std::string_view text)
{
    auto number = [&](std::string_view digits) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
            throw ParseError("bad cause \"" + std::string(text) + "\"");
        return v;
    };
    if (text == "interval")
        return {CauseKind::Interval, 0};
    if (text == "periodic:global")
        return {CauseKind::Periodic, 0};
    if (text == "periodic:sink")
        return {CauseKind::Periodic, 1};
    if (text == "topo:build")
        return {CauseKind::TopologyBuild, 0};
    if (text.substr(0, 4) == "pkt:")
        return {CauseKind::Packet, number(text.substr(4))};
    if (text.substr(0, 13) == "topo:rebuild:")
        return {CauseKind::TopologyRebuild, number(text.substr(13))};
    throw ParseError("bad cause \"" + std::string(text) + "\"");
}

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_ledger(std::ostream& out, const std::vector<LedgerEntry>& entries)
{
    out << kLedgerHeader << '\n';
    std::string line;
    for (const auto& e : entries) {
        line.clear();
        line += format_double(e.time);
        line += ',';
        line += std::to_string(e.node);
        line += ',';
        line += to_string(e.constituent());
        line += ',';
        line += to_string(e.sub);
        line += ',';
        line += format_double(e.joules);
        line += ',';
        line += to_string(e.cause);
        line += ',';
        line += format_double(e.bits);
        line += ',';
        line += format_double(e.count);
        line += ',';
        line += format_double(e.d2);
        line += ',';
        line += format_double(e.duration);
        line += '\n';
        out << line;
    }
}

std::vector<LedgerEntry> read_ledger(std::istream& in)
{
    std::vector<LedgerEntry> entries;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (!header_seen) {
            header_seen = true;
            if (line == kLedgerHeader)
                continue;
        }
        const std::size_t index = entries.size();
        std::array<std::string_view, 10> fields;
        std::size_t count = 0;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            if (count == fields.size())
                throw ParseError("entry " + std::to_string(index) + ": too many fields");
            fields[count++] = rest.substr(0, comma);
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (count != fields.size())
            throw ParseError("entry " + std::to_string(index) + ": expected 10 fields, got " + std::to_string(count));
        LedgerEntry e;
        try {
            e.time = parse_double(fields[0], index, "timestamp");
            const double node = parse_double(fields[1], index, "node id");
            if (node < 0 || node != static_cast<double>(static_cast<NodeId>(node)))
                throw ParseError("entry " + std::to_string(index) + ": bad node id");
            e.node = static_cast<NodeId>(node);
            e.sub = parse_subcomponent(fields[3]);
            if (fields[2] != to_string(e.constituent()))
                throw ParseError("constituent \"" + std::string(fields[2]) + "\" does not match " +
                                 std::string(fields[3]));
            e.joules = parse_double(fields[4], index, "joules");
            e.cause = parse_cause(fields[5]);
            e.bits = parse_double(fields[6], index, "bits");
            e.count = parse_double(fields[7], index, "count");
            e.d2 = parse_double(fields[8], index, "d2");
            e.duration = parse_double(fields[9], index, "duration");
        } catch (const ParseError& err) {
            const std::string what = err.what();
            if (what.rfind("entry ", 0) == 0)
                throw;
            throw ParseError("entry " + std::to_string(index) + ": " + what);
        }
        entries.push_back(e);
    }
    return entries;
}

}  // namespace heda
