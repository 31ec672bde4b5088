// Config-file parsing, CSV export/import of run artifacts, and the run
// manifest. All outputs are byte-stable given (config, seed): fixed column
// order and shortest round-trip float formatting.
#ifndef NETEVO_IO_HPP_
#define NETEVO_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "netevo/sim.hpp"

#include <json.hpp>

namespace netevo {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat JSON config with keys p_1..p_K, alpha_max, alpha_decay, benefit_scale,
// link_cost, gamma, horizon, warmup, seed, replications, plus optional
// c_1..c_K, tracked_births (array), track_all, log_meetings, log_edges.
SimConfig parse_config(const nlohmann::json& doc);
SimConfig load_config(const std::filesystem::path& path);

// Flat canonical echo of a config (keys sorted by nlohmann::json).
nlohmann::json config_to_json(const SimConfig& config);

// FNV-1a over the canonical serialization; invariant under key reordering in
// the source file.
std::string config_hash(const SimConfig& config);

// Shortest decimal that round-trips the double.
std::string format_double(double v);

// Writers: agents.csv, edges.csv, meetings.csv, trajectories.csv.
void write_agents_csv(const std::filesystem::path& path, const EnsembleResult& ensemble);
void write_edges_csv(const std::filesystem::path& path, const EnsembleResult& ensemble);
void write_meetings_csv(const std::filesystem::path& path, const EnsembleResult& ensemble);
void write_trajectories_csv(const std::filesystem::path& path,
                            const EnsembleResult& ensemble);
void write_manifest(const std::filesystem::path& path, const EnsembleResult& ensemble,
                    const std::vector<std::string>& outputs, double duration_ms);

// Writes the four CSVs plus manifest.json into `dir`.
void write_run(const std::filesystem::path& dir, const EnsembleResult& ensemble,
               double duration_ms);

// Rebuilds an ensemble (records, edges, meetings, trajectories) from a run
// directory written by write_run.
EnsembleResult read_run(const std::filesystem::path& dir);

} // namespace netevo

#endif // NETEVO_IO_HPP_
