// heda: run one simulation, a parameter sweep, or a replay check of an exported log.
//
//   heda --config cfg.json --seed 3 --out run/
//   heda --sweep sweep.json --out sweep/ --jobs 4
//   heda --verify run/events.log --config run/config.json
//
// Exit status: 0 ok, 1 verification failure, 2 usage, config or I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "heda/heda.h"

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

int report_error(const char* what)
{
    std::fprintf(stderr, "heda: %s: %s\n", what, heda_last_error());
    return kUsage;
}

int cmd_run(const std::string& config_path, const uint64_t* seed_override, const std::string& out)
{
    heda_config* config = nullptr;
    const heda_status st = config_path.empty() ? heda_config_default(&config)
                                               : heda_config_from_file(config_path.c_str(), &config);
    if (st != HEDA_OK)
        return report_error("config");
    uint64_t seed = 0;
    if (seed_override)
        seed = *seed_override;
    else
        heda_config_get_seed(config, &seed);

    heda_result* result = nullptr;
    if (heda_run(config, seed, &result) != HEDA_OK) {
        heda_config_free(config);
        return report_error("run");
    }
    int code = kOk;
    char* json = nullptr;
    if (heda_result_write(result, out.c_str()) != HEDA_OK) {
        code = report_error("write");
    } else if (heda_config_to_json(config, &json) == HEDA_OK) {
        const auto path = std::filesystem::path(out) / "config.json";
        std::ofstream f(path);
        f << json << '\n';
        if (!f) {
            std::fprintf(stderr, "heda: write: cannot write %s\n", path.string().c_str());
            code = kUsage;
        }
        heda_string_free(json);
    }
    if (code == kOk) {
        heda_summary s{};
        heda_result_summary(result, &s);
        std::printf("seed %llu: residual %.6g J (active %.6g J), %u active, delivered %llu, dropped %llu, lost %llu\n",
                    static_cast<unsigned long long>(s.seed), s.final_total_residual_incl,
                    s.final_total_residual_excl, s.active_nodes, static_cast<unsigned long long>(s.delivered),
                    static_cast<unsigned long long>(s.dropped), static_cast<unsigned long long>(s.lost));
    }
    heda_result_free(result);
    heda_config_free(config);
    return code;
}

int cmd_sweep(const std::string& spec, const std::string& out, unsigned jobs)
{
    heda_sweep_report r{};
    if (heda_sweep(spec.c_str(), out.c_str(), jobs, &r) != HEDA_OK)
        return report_error("sweep");
    std::printf("%llu cells, %llu failed, %llu failed verification\n", static_cast<unsigned long long>(r.cells),
                static_cast<unsigned long long>(r.failures), static_cast<unsigned long long>(r.verify_failures));
    return r.verify_failures > 0 ? kMismatch : kOk;
}

int cmd_verify(const std::string& events, const std::string& config)
{
    namespace fs = std::filesystem;
    const fs::path residuals = fs::path(events).parent_path() / "residual_energy.csv";
    const bool with_residuals = fs::exists(residuals);
    const std::string residuals_str = residuals.string();
    heda_verify_report r{};
    if (heda_verify(events.c_str(), config.c_str(), with_residuals ? residuals_str.c_str() : nullptr, &r) != HEDA_OK)
        return report_error("verify");
    if (!r.ok) {
        std::printf("mismatch: worst node %u, delta %.17g J, relative %.3g: %s\n", r.worst_node, r.worst_delta,
                    r.worst_relative, heda_last_error());
        return kMismatch;
    }
    std::printf("ok: %llu entries, worst relative %.3g\n", static_cast<unsigned long long>(r.entries),
                r.worst_relative);
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"HEDA wireless sensor network energy simulator"};
    std::string config, out = "out", sweep, verify;
    uint64_t seed = 0;
    unsigned jobs = 1;
    auto* seed_opt = app.add_option("--seed", seed, "Run seed (defaults to the config's seed)");
    app.add_option("--config", config, "Config JSON (defaults when omitted)");
    app.add_option("--out", out, "Output directory")->capture_default_str();
    auto* sweep_opt = app.add_option("--sweep", sweep, "Sweep spec JSON");
    auto* verify_opt = app.add_option("--verify", verify, "events.log to replay against --config");
    app.add_option("--jobs", jobs, "Parallel sweep cells")->check(CLI::PositiveNumber)->capture_default_str();
    sweep_opt->excludes(verify_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (*verify_opt) {
        if (config.empty()) {
            std::fprintf(stderr, "heda: --verify needs --config\n");
            return kUsage;
        }
        return cmd_verify(verify, config);
    }
    if (*sweep_opt)
        return cmd_sweep(sweep, out, jobs);
    return cmd_run(config, *seed_opt ? &seed : nullptr, out);
}
