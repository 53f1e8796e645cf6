#include "heda/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "heda/config.hpp"
#include "heda/ledger.hpp"
#include "heda/local.hpp"

namespace heda::experiment {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_time(double t) { return std::isfinite(t) ? format_double(t) : "inf"; }

Summary summarize(const engine::RunResult& run)
{
    Summary s;
    s.seed = run.seed;
    s.r_sense = run.config.r_sense;
    s.r_tx = run.config.r_tx;
    s.routing = run.config.routing_policy;
    s.residual_incl = run.final_sample().total_incl;
    s.residual_excl = run.final_sample().total_excl;
    s.disconnect_time = run.disconnect_time;
    s.partition_time = run.partition_time;
    s.generated = run.packets.generated;
    s.delivered = run.packets.delivered;
    s.dropped = run.packets.dropped();
    s.lost = run.packets.lost;
    s.in_flight = run.packets.in_flight;
    return s;
}

void write_residuals(std::ostream& out, const engine::RunResult& run)
{
    out << kResidualHeader << '\n';
    for (const auto& s : run.samples)
        for (std::size_t i = 0; i < s.residual.size(); ++i)
            out << format_double(s.time) << ',' << i << ',' << format_double(s.residual[i]) << ','
                << int(s.active[i]) << '\n';
}

void write_summary(std::ostream& out, const Summary& s)
{
    out << kSummaryHeader << '\n';
    out << s.seed << ',' << format_double(s.r_sense) << ',' << format_double(s.r_tx) << ',' << to_string(s.routing)
        << ',' << format_double(s.residual_incl) << ',' << format_double(s.residual_excl) << ','
        << format_time(s.disconnect_time) << ',' << s.delivered << ',' << s.dropped << ',' << s.lost << ','
        << format_time(s.partition_time) << '\n';
}

void write_constraints(std::ostream& out, const engine::RunResult& run)
{
    out << accounting::kConstraintHeader << '\n';
    for (const auto& r : run.constraints)
        out << format_double(r.time) << ',' << r.node << ',' << to_string(r.local_positive) << ','
            << to_string(r.global_positive) << ',' << to_string(r.funded) << ',' << to_string(r.battery_covers) << ','
            << to_string(r.state_over_switch) << ',' << to_string(r.has_neighbor) << ',' << to_string(r.local_bounded)
            << ',' << to_string(r.has_route) << ',' << to_string(r.route_dominates) << '\n';
}

void write_timeseries(std::ostream& out, const engine::RunResult& run)
{
    out << kTimeseriesHeader << '\n';
    for (const auto& s : run.samples) {
        out << format_double(s.time) << ',' << format_double(s.total_incl) << ',' << format_double(s.total_excl)
            << ',' << s.active_count;
        for (double c : s.cumulative)
            out << ',' << format_double(c);
        out << '\n';
    }
}

void write_deactivations(std::ostream& out, const engine::RunResult& run)
{
    out << kDeactivationHeader << '\n';
    for (const auto& d : run.deactivations)
        out << format_double(d.time) << ',' << d.node << ',' << format_double(d.deficit) << '\n';
}

namespace {

template <class Writer>
void write_file(const fs::path& path, Writer&& writer)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    writer(out);
    out.flush();
    if (!out)
        throw IoError("write failed: " + path.string());
}

void make_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = line.find(',');
        out.push_back(line.substr(0, comma));
        if (comma == std::string_view::npos)
            return out;
        line.remove_prefix(comma + 1);
    }
}

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

void write_run(const engine::RunResult& run, const fs::path& dir)
{
    make_dir(dir);
    write_file(dir / "residual_energy.csv", [&](std::ostream& o) { write_residuals(o, run); });
    write_file(dir / "summary.csv", [&](std::ostream& o) { write_summary(o, summarize(run)); });
    write_file(dir / "events.log", [&](std::ostream& o) { write_ledger(o, run.ledger); });
    write_file(dir / "constraints.csv", [&](std::ostream& o) { write_constraints(o, run); });
    write_file(dir / "timeseries.csv", [&](std::ostream& o) { write_timeseries(o, run); });
    write_file(dir / "deactivations.csv", [&](std::ostream& o) { write_deactivations(o, run); });
}

std::vector<double> read_final_residuals(std::istream& in, std::size_t node_count)
{
    std::vector<double> residual(node_count, 0.0);
    std::vector<double> at(node_count, -1.0);
    std::string line;
    if (!std::getline(in, line) || line != kResidualHeader)
        throw ParseError("residual_energy.csv: bad header");
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty())
            continue;
        const auto f = split(line);
        if (f.size() != 4)
            throw ParseError("residual_energy.csv row " + std::to_string(row) + ": expected 4 fields");
        try {
            const double t = std::stod(std::string(f[0]));
            const auto id = std::stoull(std::string(f[1]));
            if (id >= node_count)
                throw ParseError("node id out of range");
            if (t >= at[id]) {
                at[id] = t;
                residual[id] = std::stod(std::string(f[2]));
            }
        } catch (const std::logic_error&) {
            throw ParseError("residual_energy.csv row " + std::to_string(row) + ": bad number");
        }
    }
    for (std::size_t i = 0; i < node_count; ++i)
        if (at[i] < 0)
            throw ParseError("residual_energy.csv: no rows for node " + std::to_string(i));
    return residual;
}

accounting::VerifyReport verify_files(const fs::path& events, const fs::path& config_path,
                                      const std::optional<fs::path>& residuals)
{
    const SimConfig config = load_config(read_text(config_path));
    std::ifstream log_in(events, std::ios::binary);
    if (!log_in)
        throw IoError("cannot open " + events.string());
    const auto log = read_ledger(log_in);
    if (!residuals)
        return accounting::verify(log, config);
    std::ifstream res_in(*residuals, std::ios::binary);
    if (!res_in)
        throw IoError("cannot open " + residuals->string());
    const auto final = read_final_residuals(res_in, config.node_count);
    return accounting::verify(log, config, std::span<const double>(final));
}

accounting::VerifyReport verify_run(const engine::RunResult& run)
{
    std::stringstream log_text;
    write_ledger(log_text, run.ledger);
    const auto log = read_ledger(log_text);
    std::stringstream residual_text;
    write_residuals(residual_text, run);
    const auto final = read_final_residuals(residual_text, run.config.node_count);
    return accounting::verify(log, run.config, std::span<const double>(final));
}

namespace {

std::vector<double> number_list(const json& v, const char* key)
{
    if (!v.is_array() || v.empty())
        throw ParseError(std::string(key) + ": expected a nonempty array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number())
            throw ParseError(std::string(key) + ": expected numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace

SweepSpec load_sweep_spec(std::string_view document)
{
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("sweep spec: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("sweep spec: expected a table");
    SweepSpec spec;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "base") {
            try {
                spec.base = load_config(v.dump());
            } catch (const ParseError& e) {
                throw ParseError(std::string("base: ") + e.what());
            } catch (const ConstraintError& e) {
                throw ConstraintError(std::string("base: ") + e.what());
            }
        } else if (key == "r_sense") {
            spec.r_sense = number_list(v, "r_sense");
        } else if (key == "r_tx") {
            spec.r_tx = number_list(v, "r_tx");
        } else if (key == "routing") {
            if (!v.is_array() || v.empty())
                throw ParseError("routing: expected a nonempty array");
            spec.routing.clear();
            for (const auto& x : v) {
                if (!x.is_string())
                    throw ParseError("routing: expected strings");
                spec.routing.push_back(parse_routing_policy(x.get<std::string>()));
            }
        } else if (key == "seeds") {
            if (!v.is_array() || v.empty())
                throw ParseError("seeds: expected a nonempty array");
            spec.seeds.clear();
            for (const auto& x : v) {
                if (!x.is_number_unsigned())
                    throw ParseError("seeds: expected nonnegative integers");
                spec.seeds.push_back(x.get<std::uint64_t>());
            }
        } else if (key == "verify" || key == "write_cells") {
            if (!v.is_boolean())
                throw ParseError(key + ": expected a boolean");
            (key == "verify" ? spec.verify : spec.write_cells) = v.get<bool>();
        } else {
            throw ParseError("unknown key \"" + key + "\"");
        }
    }
    for (const auto& cell : expand(spec))
        validate(cell_config(spec, cell));
    return spec;
}

SweepSpec load_sweep_spec_file(const fs::path& path) { return load_sweep_spec(read_text(path)); }

std::vector<Cell> expand(const SweepSpec& spec)
{
    std::vector<Cell> cells;
    for (double rs : spec.r_sense)
        for (double rt : spec.r_tx)
            for (RoutingPolicy p : spec.routing)
                for (std::uint64_t seed : spec.seeds)
                    cells.push_back({rs, rt, p, seed});
    return cells;
}

SimConfig cell_config(const SweepSpec& spec, const Cell& cell)
{
    SimConfig c = spec.base;
    c.r_sense = cell.r_sense;
    c.r_tx = cell.r_tx;
    c.routing_policy = cell.routing;
    c.seed = cell.seed;
    return c;
}

std::vector<CellStats> aggregate(std::vector<CellResult> results)
{
    using Key = std::tuple<double, double, int>;
    std::map<Key, std::vector<const CellResult*>> groups;
    for (const auto& r : results)
        groups[{r.cell.r_sense, r.cell.r_tx, static_cast<int>(r.cell.routing)}].push_back(&r);

    std::vector<CellStats> out;
    for (auto& [key, members] : groups) {
        std::sort(members.begin(), members.end(),
                  [](const CellResult* a, const CellResult* b) { return a->cell.seed < b->cell.seed; });
        CellStats s;
        s.r_sense = std::get<0>(key);
        s.r_tx = std::get<1>(key);
        s.routing = static_cast<RoutingPolicy>(std::get<2>(key));
        std::vector<double> incl, excl, disconnect, delivered;
        for (const CellResult* r : members) {
            if (!r->ok) {
                ++s.failures;
                continue;
            }
            incl.push_back(r->summary.residual_incl);
            excl.push_back(r->summary.residual_excl);
            disconnect.push_back(r->summary.disconnect_time);
            delivered.push_back(static_cast<double>(r->summary.delivered));
        }
        s.runs = incl.size();
        auto mean = [](const std::vector<double>& v) {
            return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        };
        auto stddev = [&](const std::vector<double>& v) {
            if (v.size() < 2)
                return 0.0;
            const double m = mean(v);
            double ss = 0;
            for (double x : v)
                ss += (x - m) * (x - m);
            return std::sqrt(ss / static_cast<double>(v.size() - 1));
        };
        s.mean_incl = mean(incl);
        s.std_incl = stddev(incl);
        s.mean_excl = mean(excl);
        s.std_excl = stddev(excl);
        s.mean_delivered = mean(delivered);
        if (!disconnect.empty()) {
            std::sort(disconnect.begin(), disconnect.end());
            const std::size_t n = disconnect.size();
            const double lo = disconnect[(n - 1) / 2], hi = disconnect[n / 2];
            s.median_disconnect = lo == hi ? lo : (lo + hi) / 2;
        }
        out.push_back(s);
    }
    return out;
}

std::vector<NeighborRow> neighbor_report(const SweepSpec& spec)
{
    std::vector<NeighborRow> rows;
    for (std::uint64_t seed : spec.seeds) {
        const Deployment d = engine::deploy(spec.base, seed);
        for (double r_tx : spec.r_tx) {
            NeighborRow row{seed, r_tx, 0, 0};
            double sum = 0;
            for (NodeId i = 0; i < d.nodes.size(); ++i) {
                const auto n = local::neighbors(d, {}, i, r_tx).count();
                row.max_neighbors = std::max<std::uint32_t>(row.max_neighbors, n);
                sum += static_cast<double>(n);
            }
            row.mean_neighbors = sum / static_cast<double>(d.nodes.size());
            rows.push_back(row);
        }
    }
    return rows;
}

void write_sweep(std::ostream& out, const std::vector<CellResult>& cells)
{
    out << kSweepHeader << '\n';
    for (const auto& r : cells) {
        const Summary& s = r.summary;
        out << format_double(r.cell.r_sense) << ',' << format_double(r.cell.r_tx) << ',' << to_string(r.cell.routing)
            << ',' << r.cell.seed << ',';
        if (r.ok)
            out << format_double(s.residual_incl) << ',' << format_double(s.residual_excl) << ','
                << format_time(s.disconnect_time) << ',' << format_time(s.partition_time) << ',' << s.generated << ','
                << s.delivered << ',' << s.dropped << ',' << s.lost << ',' << s.in_flight << ','
                << (r.verified ? "true" : "false") << ',' << format_double(r.verify_worst) << ',';
        else
            out << ",,,,,,,,,,,";
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        out << err << '\n';
    }
}

void write_aggregate(std::ostream& out, const std::vector<CellStats>& stats)
{
    out << kAggregateHeader << '\n';
    for (const auto& s : stats)
        out << format_double(s.r_sense) << ',' << format_double(s.r_tx) << ',' << to_string(s.routing) << ','
            << s.runs << ',' << s.failures << ',' << format_double(s.mean_incl) << ',' << format_double(s.std_incl)
            << ',' << format_double(s.mean_excl) << ',' << format_double(s.std_excl) << ','
            << format_time(s.median_disconnect) << ',' << format_double(s.mean_delivered) << '\n';
}

void write_neighbors(std::ostream& out, const std::vector<NeighborRow>& rows)
{
    out << kNeighborHeader << '\n';
    for (const auto& r : rows)
        out << r.seed << ',' << format_double(r.r_tx) << ',' << r.max_neighbors << ','
            << format_double(r.mean_neighbors) << '\n';
}

namespace {

std::string cell_name(const Cell& c)
{
    return "rs" + format_double(c.r_sense) + "_rt" + format_double(c.r_tx) + "_" + to_string(c.routing) + "_s" +
           std::to_string(c.seed);
}

CellResult run_cell(const SweepSpec& spec, const Cell& cell, const std::optional<fs::path>& out)
{
    CellResult r;
    r.cell = cell;
    try {
        const SimConfig config = cell_config(spec, cell);
        const engine::RunResult run = engine::run(config, cell.seed);
        r.summary = summarize(run);
        if (spec.verify) {
            const auto report = verify_run(run);
            r.verified = report.ok;
            r.verify_worst = report.worst_relative;
            if (!report.ok)
                r.error = "verify: node " + std::to_string(report.worst_node) + " " + report.message;
        }
        if (out && spec.write_cells) {
            const fs::path dir = *out / "cells" / cell_name(cell);
            write_run(run, dir);
            write_file(dir / "config.json", [&](std::ostream& o) { o << to_json(config) << '\n'; });
        }
        r.ok = true;
    } catch (const std::exception& e) {
        r.ok = false;
        r.error = e.what();
    }
    return r;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, unsigned jobs, const std::optional<fs::path>& out)
{
    const auto cells = expand(spec);
    SweepResult result;
    result.cells.resize(cells.size());
    if (out)
        make_dir(*out);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++)
            result.cells[i] = run_cell(spec, cells[i], out);
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    result.stats = aggregate(result.cells);
    result.neighbors = neighbor_report(spec);
    if (out) {
        write_file(*out / "sweep.csv", [&](std::ostream& o) { write_sweep(o, result.cells); });
        write_file(*out / "sweep_aggregate.csv", [&](std::ostream& o) { write_aggregate(o, result.stats); });
        write_file(*out / "neighbors.csv", [&](std::ostream& o) { write_neighbors(o, result.neighbors); });
    }
    return result;
}

}  // namespace heda::experiment
