// Simulation driver: Bernoulli-scheme arrivals, per-step meeting/decision
// loop, trajectory collection, replication management.
#ifndef NETEVO_SIM_HPP_
#define NETEVO_SIM_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "netevo/decision.hpp"
#include "netevo/graph_state.hpp"
#include "netevo/meeting.hpp"
#include "netevo/model.hpp"
#include "netevo/random.hpp"

namespace netevo {

struct SimConfig {
    ModelParams params;
    int horizon = 0;
    int warmup = 0; // births up to this date are excluded from agent statistics
    std::vector<int> tracked_births; // indegree recorded every step for these
    bool track_all = false;
    std::uint64_t seed = 0;
    int replications = 1;
    // Event logs can be disabled for large ensembles where only records and
    // trajectories are consumed.
    bool log_meetings = true;
    bool log_edges = true;

    void validate() const; // throws std::invalid_argument
};

struct EdgeRecord {
    AgentId source = 0;
    AgentId target = 0;
    int step = 0;
};

struct ReplicationResult {
    std::uint64_t stream_seed = 0;
    std::vector<AgentRecord> records;
    std::vector<MeetingEvent> meetings;
    std::vector<EdgeRecord> edges;
    // birth date -> indegree at the end of every step from birth to horizon
    std::map<AgentId, std::vector<int>> trajectories;
};

struct EnsembleResult {
    SimConfig config;
    std::vector<std::uint64_t> stream_seeds;
    std::vector<ReplicationResult> replications;
};

// One replication, advanced a step at a time so callers can audit
// intermediate states.
class Simulation {
public:
    Simulation(const SimConfig& config, std::uint64_t stream_seed);

    // Births one agent and runs every active agent's meeting/decision in
    // ascending birth order (the newborn acts last). Throws past the horizon.
    void advance_step();

    bool done() const { return state_.clock() >= config_.horizon; }

    const NetworkState& state() const { return state_; }
    const std::vector<AgentRecord>& records() const { return records_; }
    const std::vector<MeetingEvent>& meetings() const { return meetings_; }
    const std::vector<EdgeRecord>& edges() const { return edges_; }

    ReplicationResult finish();

private:
    SimConfig config_;
    Rng rng_;
    NetworkState state_;
    std::vector<AgentRecord> records_;
    std::vector<AgentId> active_; // ascending birth order
    std::vector<MeetingEvent> meetings_;
    std::vector<EdgeRecord> edges_;
    std::map<AgentId, std::vector<int>> trajectories_;
    std::uint64_t stream_seed_ = 0;
};

ReplicationResult run(const SimConfig& config, std::uint64_t stream_seed);

// Replication r runs on stream derive_stream_seed(config.seed, r);
// replications execute in parallel but the result is order-independent.
EnsembleResult run_ensemble(const SimConfig& config);

} // namespace netevo

#endif // NETEVO_SIM_HPP_
