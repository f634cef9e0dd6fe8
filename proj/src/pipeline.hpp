#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "envelope.hpp"
#include "fixtures.hpp"
#include "manifest.hpp"
#include "metrics.hpp"
#include "simkit.hpp"
#include "telemetry.hpp"

namespace acmpc::pipeline {

struct IdentifyOptions {
    std::optional<double> frozen_alpha;
    std::optional<double> frozen_r;
    std::optional<double> frozen_qe;
    double t_m = 20.0;
    double validation_fraction = 0.25;
};

struct IdentifyResult {
    envelope::EnvelopeFit fit;
    std::string artifact_path;  // envelope_fit.json
};

// Ingest telemetry (sub-hourly logs are downsampled), fit or freeze the
// thermal circuit, and write envelope_fit.json plus qe_series.csv.
IdentifyResult cmd_identify(const std::string& telemetry_csv, const IdentifyOptions& options,
                            const std::string& out_dir);

// Models fitted by the offline training stage.
struct TrainedModels {
    sim::ControllerModels sensible;  // shared params/equipment, no wet-bulb GP
    sim::ControllerModels latent;
    envelope::EnvelopeFit envelope_fit;
    double gpr_validation_rmse = 0;  // wet-bulb hold-out RMSE, degC
};

// Offline training: a benchmark month, least-squares identification, GP
// training, then an optional re-run of the tail under latent MPC so the
// training mix includes MPC-mode days.
TrainedModels train_models(const manifest::ExperimentManifest& m,
                           const fixtures::EquipmentFixture& equipment);

struct ScenarioResult {
    std::string label;
    std::string controller;
    std::string mode;
    TelemetryLog log;
    std::vector<metrics::DailySummary> days;
    metrics::ViolationStats violations;
    double energy_kwh = 0;
    double normalized_energy = 0;
    double mean_ppd = 0;
    double hours_ppd_above_10 = 0;
};

struct ExperimentResult {
    manifest::ExperimentManifest manifest;
    TrainedModels models;
    std::vector<ScenarioResult> scenarios;
    std::vector<std::string> failures;  // labels + messages of failed scenarios
};

struct SimulateOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> formulation;  // "sensible" | "latent": force MPC formulation
    std::optional<std::string> mode;         // "cost" | "limit": force MPC mode
};

// In-memory experiment runner (cmd_simulate without the file outputs).
ExperimentResult run_experiment(const manifest::ExperimentManifest& m,
                                const SimulateOverrides& overrides = {});

// Run the manifest's scenario matrix and write per-scenario telemetry,
// daily summaries, and the top-level comparison/metadata JSON files.
ExperimentResult cmd_simulate(const std::string& manifest_path, const std::string& out_dir,
                              const SimulateOverrides& overrides = {});

struct ReportOptions {
    bool paper_constants = false;  // use the published slope distributions
    std::size_t mc_samples = 1000000;
    std::uint64_t mc_seed = 7;
};

// Aggregate a results directory into report.json plus plot-ready CSVs.
void cmd_report(const std::string& results_dir, const std::string& out_dir,
                const ReportOptions& options = {});

// The default experiment manifest bundled with the repository.
std::string default_manifest_text();

// Deterministic JSON serialization of an optimizer plan (fixed field
// order), for export and golden-file comparison.
std::string plan_to_json(const mpc::MpcPlan& plan);

}  // namespace acmpc::pipeline
