// Regenerates the repository's bundled data fixtures. Run from the repo
// root after changing the reference equipment surface or the synthetic
// weather profiles:
//   build/tools/acmpc_genfixtures [output_root]
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "equipment.hpp"
#include "fixtures.hpp"
#include "pipeline.hpp"
#include "telemetry.hpp"

int main(int argc, char** argv) {
    const std::string root = argc > 1 ? argv[1] : ".";
    namespace fs = std::filesystem;
    fs::create_directories(root + "/data");
    fs::create_directories(root + "/manifests");

    acmpc::equipment::write_performance_csv(acmpc::fixtures::reference_performance_table(),
                                            root + "/data/equipment_performance.csv");
    acmpc::write_weather_csv(acmpc::fixtures::july_weather(21), root + "/data/july_weather.csv");
    acmpc::write_telemetry_csv(acmpc::fixtures::july_telemetry(14),
                               root + "/data/july_telemetry.csv");
    std::ofstream(root + "/manifests/experiment.toml")
        << acmpc::pipeline::default_manifest_text();
    std::printf("fixtures written under %s\n", root.c_str());
    return 0;
}
