#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "causal_horizon/fields.hpp"
#include "causal_horizon/report.hpp"
#include "causal_horizon/riccati.hpp"
#include "causal_horizon/sampler.hpp"

namespace ch {

struct RunConfig {
    std::string command;            // bounds | simulate | experiment | ingest-check
    std::string kind;               // experiment kind
    std::vector<std::string> bound_ops;  // empty means every bound
    json params = json::object();   // fully resolved parameters for the command
    json overrides = json::object();  // only the keys given by file or flags
    std::uint64_t seed = 0;
    std::string out_dir;
    std::vector<std::string> formats = {"csv", "json"};
    std::string path;  // ingest-check input
    int dim = 2;
};

// Carries the rendered help text for --help.
struct HelpRequested : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flags override config-file values. Throws UsageError naming the offending key.
RunConfig parse_config(int argc, const char* const* argv);
RunConfig parse_config(const std::vector<std::string>& args);

json bounds_defaults();
json simulate_defaults();

struct IngestResult {
    PointCloud cloud;
    std::vector<std::string> rejections;  // "row N: reason", N counted from 1 after the header
};

// Header row then x0..x{dim-1} and an optional label column; bandwidth defaults to Silverman.
IngestResult ingest_pointcloud(const std::string& path, int dim);
IngestResult parse_pointcloud(const std::string& text, int dim, const std::string& source = "<memory>");

// 17 significant digits; inf and nan spelled "inf", "-inf", "nan".
std::string format_double(double v);

std::string to_csv(const Table& t);
json to_json(const ExperimentReport& r);
ExperimentReport report_from_json(const json& j);
std::string to_svg(const ExperimentReport& r, const PlotSpec& plot);

ExperimentReport trace_report(const RiccatiTrace& tr, json parameters = json::object());
ExperimentReport trajectory_report(const TrajectoryRecord& rec, json parameters = json::object());

struct Manifest {
    std::vector<std::string> files;  // written paths, in write order
    std::string manifest_path;       // the listing itself
};

// Writes <kind>_<table>.csv, <kind>.json and <kind>_<n>.svg, then <kind>_manifest.txt.
Manifest emit_report(const ExperimentReport& r, const std::vector<std::string>& formats, const std::string& out_dir);

// Executes a parsed configuration; returns a process exit code.
int run_command(const RunConfig& cfg);

}  // namespace ch
