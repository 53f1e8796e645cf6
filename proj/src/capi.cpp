#include "heda/heda.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "heda/config.hpp"
#include "heda/engine.hpp"
#include "heda/experiment.hpp"
#include "heda/global.hpp"

struct heda_config {
    heda::SimConfig config;
};

struct heda_result {
    heda::engine::RunResult run;
};

namespace {

thread_local std::string last_error;

heda_status fail(heda_status status, const std::string& message)
{
    last_error = message;
    return status;
}

template <class F>
heda_status guarded(F&& body)
{
    last_error.clear();
    try {
        return body();
    } catch (const heda::ParseError& e) {
        return fail(HEDA_ERR_PARSE, e.what());
    } catch (const heda::ConstraintError& e) {
        return fail(HEDA_ERR_CONSTRAINT, e.what());
    } catch (const heda::VoidError& e) {
        return fail(HEDA_ERR_CONSTRAINT, e.what());
    } catch (const heda::IoError& e) {
        return fail(HEDA_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(HEDA_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(HEDA_ERR_INTERNAL, e.what());
    }
}

heda_status null_argument(const char* name) { return fail(HEDA_ERR_ARGUMENT, std::string(name) + " is null"); }

char* copy_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

void fill(heda_verify_report* out, const heda::accounting::VerifyReport& r)
{
    out->ok = r.ok ? 1 : 0;
    out->entries = r.entries;
    out->worst_node = r.worst_node;
    out->worst_relative = r.worst_relative;
    out->worst_delta = r.worst_delta;
    if (!r.ok)
        last_error = "node " + std::to_string(r.worst_node) + ": " + r.message + " (delta " +
                     heda::format_double(r.worst_delta) + " J)";
}

}  // namespace

extern "C" {

const char* heda_last_error(void) { return last_error.c_str(); }

const char* heda_version(void) { return "1.0.0"; }

heda_status heda_config_default(heda_config** out)
{
    if (!out)
        return null_argument("out");
    return guarded([&] {
        *out = new heda_config{};
        return HEDA_OK;
    });
}

heda_status heda_config_from_json(const char* document, heda_config** out)
{
    if (!document)
        return null_argument("document");
    if (!out)
        return null_argument("out");
    return guarded([&] {
        *out = new heda_config{heda::load_config(document)};
        return HEDA_OK;
    });
}

heda_status heda_config_from_file(const char* path, heda_config** out)
{
    if (!path)
        return null_argument("path");
    if (!out)
        return null_argument("out");
    return guarded([&] {
        *out = new heda_config{heda::load_config_file(path)};
        return HEDA_OK;
    });
}

heda_status heda_config_to_json(const heda_config* config, char** out)
{
    if (!config)
        return null_argument("config");
    if (!out)
        return null_argument("out");
    return guarded([&] {
        *out = copy_string(heda::to_json(config->config));
        return HEDA_OK;
    });
}

void heda_config_free(heda_config* config) { delete config; }

void heda_string_free(char* s) { std::free(s); }

heda_status heda_config_get_seed(const heda_config* config, uint64_t* out)
{
    if (!config)
        return null_argument("config");
    if (!out)
        return null_argument("out");
    *out = config->config.seed;
    last_error.clear();
    return HEDA_OK;
}

heda_status heda_config_set_radii(heda_config* config, double r_sense, double r_tx)
{
    if (!config)
        return null_argument("config");
    return guarded([&] {
        heda::SimConfig c = config->config;
        c.r_sense = r_sense;
        c.r_tx = r_tx;
        heda::validate(c);
        config->config = c;
        return HEDA_OK;
    });
}

heda_status heda_config_set_routing(heda_config* config, heda_routing routing)
{
    if (!config)
        return null_argument("config");
    if (routing != HEDA_ROUTING_SELECTIVE && routing != HEDA_ROUTING_RANDOM)
        return fail(HEDA_ERR_ARGUMENT, "unknown routing policy");
    config->config.routing_policy =
        routing == HEDA_ROUTING_RANDOM ? heda::RoutingPolicy::Random : heda::RoutingPolicy::Selective;
    last_error.clear();
    return HEDA_OK;
}

heda_status heda_config_set_horizon(heda_config* config, double horizon_s)
{
    if (!config)
        return null_argument("config");
    return guarded([&] {
        heda::SimConfig c = config->config;
        c.horizon = horizon_s;
        heda::validate(c);
        config->config = c;
        return HEDA_OK;
    });
}

heda_status heda_run(const heda_config* config, uint64_t seed, heda_result** out)
{
    if (!config)
        return null_argument("config");
    if (!out)
        return null_argument("out");
    return guarded([&] {
        *out = new heda_result{heda::engine::run(config->config, seed)};
        return HEDA_OK;
    });
}

void heda_result_free(heda_result* result) { delete result; }

heda_status heda_result_summary(const heda_result* result, heda_summary* out)
{
    if (!result)
        return null_argument("result");
    if (!out)
        return null_argument("out");
    return guarded([&] {
        const auto s = heda::experiment::summarize(result->run);
        out->seed = s.seed;
        out->r_sense = s.r_sense;
        out->r_tx = s.r_tx;
        out->routing = s.routing == heda::RoutingPolicy::Random ? HEDA_ROUTING_RANDOM : HEDA_ROUTING_SELECTIVE;
        out->final_total_residual_incl = s.residual_incl;
        out->final_total_residual_excl = s.residual_excl;
        out->disconnect_time_s = s.disconnect_time;
        out->partition_time_s = s.partition_time;
        out->generated = s.generated;
        out->delivered = s.delivered;
        out->dropped = s.dropped;
        out->lost = s.lost;
        out->in_flight = s.in_flight;
        out->ledger_entries = result->run.ledger.size();
        out->active_nodes = result->run.final_sample().active_count;
        out->deactivations = static_cast<uint32_t>(result->run.deactivations.size());
        return HEDA_OK;
    });
}

heda_status heda_result_write(const heda_result* result, const char* dir)
{
    if (!result)
        return null_argument("result");
    if (!dir)
        return null_argument("dir");
    return guarded([&] {
        heda::experiment::write_run(result->run, dir);
        return HEDA_OK;
    });
}

heda_status heda_result_residuals(const heda_result* result, double* out, size_t count)
{
    if (!result)
        return null_argument("result");
    if (!out)
        return null_argument("out");
    const auto& r = result->run.final_sample().residual;
    if (count != r.size())
        return fail(HEDA_ERR_ARGUMENT, "count does not match node count " + std::to_string(r.size()));
    std::memcpy(out, r.data(), count * sizeof(double));
    last_error.clear();
    return HEDA_OK;
}

heda_status heda_verify(const char* events_path, const char* config_path, const char* residuals_path,
                        heda_verify_report* report)
{
    if (!events_path)
        return null_argument("events_path");
    if (!config_path)
        return null_argument("config_path");
    if (!report)
        return null_argument("report");
    return guarded([&] {
        std::optional<std::filesystem::path> residuals;
        if (residuals_path)
            residuals = residuals_path;
        fill(report, heda::experiment::verify_files(events_path, config_path, residuals));
        return HEDA_OK;
    });
}

heda_status heda_result_verify(const heda_result* result, heda_verify_report* report)
{
    if (!result)
        return null_argument("result");
    if (!report)
        return null_argument("report");
    return guarded([&] {
        fill(report, heda::experiment::verify_run(result->run));
        return HEDA_OK;
    });
}

heda_status heda_sweep(const char* spec_path, const char* out_dir, unsigned jobs, heda_sweep_report* report)
{
    if (!spec_path)
        return null_argument("spec_path");
    if (!out_dir)
        return null_argument("out_dir");
    return guarded([&] {
        const auto spec = heda::experiment::load_sweep_spec_file(spec_path);
        const auto result = heda::experiment::run_sweep(spec, jobs, std::filesystem::path(out_dir));
        heda_sweep_report r{result.cells.size(), 0, 0};
        for (const auto& c : result.cells) {
            if (!c.ok)
                ++r.failures;
            else if (spec.verify && !c.verified)
                ++r.verify_failures;
        }
        if (report)
            *report = r;
        return HEDA_OK;
    });
}

heda_status heda_max_neighbor_count(const heda_config* config, uint64_t seed, double r_tx, uint32_t* out)
{
    if (!config)
        return null_argument("config");
    if (!out)
        return null_argument("out");
    return guarded([&] {
        *out = heda::engine::max_neighbor_count(heda::engine::deploy(config->config, seed), r_tx);
        return HEDA_OK;
    });
}

heda_status heda_min_connectivity_radius(const heda_config* config, uint64_t seed, double* out)
{
    if (!config)
        return null_argument("config");
    if (!out)
        return null_argument("out");
    return guarded([&] {
        *out = heda::global::min_connectivity_radius(heda::engine::deploy(config->config, seed));
        return HEDA_OK;
    });
}

}  // extern "C"
