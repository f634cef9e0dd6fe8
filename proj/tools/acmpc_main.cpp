// acmpc command-line front end. Talks to the shared library exclusively
// through the C API; exit codes are 0 (ok), 2 (input error), 3 (numeric or
// solver error).
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "acmpc/acmpc.h"

namespace {

int exit_code_for(acmpc_status s) {
    switch (s) {
        case ACMPC_OK: return 0;
        case ACMPC_ERR_INVALID_ARGUMENT:
        case ACMPC_ERR_DATA:
        case ACMPC_ERR_IO: return 2;
        case ACMPC_ERR_NUMERIC:
        case ACMPC_ERR_INFEASIBLE:
        case ACMPC_ERR_INTERNAL: return 3;
    }
    return 3;
}

int finish(acmpc_status s, const char* action) {
    if (s == ACMPC_OK) return 0;
    std::fprintf(stderr, "acmpc: %s failed: %s\n", action, acmpc_last_error());
    return exit_code_for(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"humidity-aware model predictive control for residential air conditioning"};
    app.set_version_flag("--version", std::string(acmpc_version()));
    app.require_subcommand(1);

    // identify
    auto* identify = app.add_subcommand("identify", "fit the thermal circuit from telemetry");
    std::string telemetry, out_dir = "out";
    std::string frozen;
    double t_m = 20.0;
    identify->add_option("--telemetry", telemetry, "telemetry CSV")->required();
    identify->add_option("--out", out_dir, "output directory");
    identify->add_option("--frozen-params", frozen,
                         "alpha,R[,qe] - evaluate fixed parameters instead of fitting");
    identify->add_option("--t-m", t_m, "deep-mass boundary temperature, degC");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run the manifest's scenario matrix");
    std::string manifest, sim_out = "out";
    std::string formulation, mode;
    std::uint64_t seed = 0;
    bool have_seed = false;
    simulate->add_option("--manifest", manifest, "experiment manifest (TOML)")->required();
    simulate->add_option("--out", sim_out, "output directory");
    simulate->add_option("--formulation", formulation, "force MPC formulation")
        ->check(CLI::IsMember({"sensible", "latent"}));
    simulate->add_option("--mode", mode, "force MPC mode")
        ->check(CLI::IsMember({"cost", "limit"}));
    simulate->add_option("--seed", seed, "override the manifest seed")
        ->each([&](const std::string&) { have_seed = true; });

    // report
    auto* report = app.add_subcommand("report", "aggregate simulation results");
    std::string results, report_out = "report";
    bool paper_constants = false;
    report->add_option("--results", results, "directory written by `simulate`")->required();
    report->add_option("--out", report_out, "output directory");
    report->add_flag("--paper-constants", paper_constants,
                     "use the published slope distributions for the savings estimate");

    // init-manifest
    auto* init = app.add_subcommand("init-manifest", "write the default experiment manifest");
    std::string manifest_path = "experiment.toml";
    init->add_option("--out", manifest_path, "manifest path");

    CLI11_PARSE(app, argc, argv);

    if (identify->parsed()) {
        acmpc_identify_options opts;
        acmpc_identify_options_init(&opts);
        opts.t_m_c = t_m;
        if (!frozen.empty()) {
            double alpha = 0, r = 0, qe = 0;
            const int n = std::sscanf(frozen.c_str(), "%lf,%lf,%lf", &alpha, &r, &qe);
            if (n < 2) {
                std::fprintf(stderr, "acmpc: --frozen-params expects alpha,R[,qe]\n");
                return 2;
            }
            opts.use_frozen = 1;
            opts.frozen_alpha = alpha;
            opts.frozen_r_c_per_kw = r;
            if (n == 3) {
                opts.use_frozen_qe = 1;
                opts.frozen_qe_kw = qe;
            }
        }
        return finish(acmpc_run_identify(telemetry.c_str(), &opts, out_dir.c_str()), "identify");
    }

    if (simulate->parsed()) {
        return finish(acmpc_run_simulate(manifest.c_str(), sim_out.c_str(),
                                         formulation.empty() ? nullptr : formulation.c_str(),
                                         mode.empty() ? nullptr : mode.c_str(),
                                         have_seed ? &seed : nullptr),
                      "simulate");
    }

    if (report->parsed()) {
        return finish(acmpc_run_report(results.c_str(), report_out.c_str(), paper_constants),
                      "report");
    }

    if (init->parsed()) {
        return finish(acmpc_write_default_manifest(manifest_path.c_str()), "init-manifest");
    }

    return 0;
}
