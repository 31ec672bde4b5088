// Incremental directed-graph store. Friend/follower sets are kept as sorted
// vectors (outdegrees are bounded by gregariousness, so they stay small);
// friends-of-friends and stranger queries are derived on demand.
#ifndef NETEVO_GRAPH_STATE_HPP_
#define NETEVO_GRAPH_STATE_HPP_

#include <cstdint>
#include <vector>

#include "netevo/model.hpp"

namespace netevo {

// Agents are indexed by birth date, 1-based.
using AgentId = int;

class NetworkState {
public:
    // Advances the clock and creates the agent born at the new date.
    AgentId add_agent(TypeId type);

    // Adds the directed edge (i,j) and credits `benefit_gain` to i's
    // accumulated benefit. Throws std::logic_error on self-edges and
    // duplicates.
    void add_edge(AgentId i, AgentId j, double benefit_gain);

    bool has_edge(AgentId i, AgentId j) const;

    // Friends-of-friends pool: union of friends' friend sets, excluding i
    // itself and i's existing friends. Sorted.
    std::vector<AgentId> friends_of_friends(AgentId i) const;

    // Everyone except i, i's friends and i's friends-of-friends. Sorted.
    std::vector<AgentId> strangers(AgentId i) const;

    const std::vector<AgentId>& friends(AgentId i) const;
    const std::vector<AgentId>& followers(AgentId i) const;

    int clock() const { return clock_; }
    int population() const { return static_cast<int>(agents_.size()); }

    TypeId type(AgentId i) const { return info(i).type; }
    bool active(AgentId i) const { return info(i).active; }
    void deactivate(AgentId i) { info(i).active = false; }

    int outdegree(AgentId i) const { return static_cast<int>(friends(i).size()); }
    int indegree(AgentId i) const { return static_cast<int>(followers(i).size()); }

    // Indegree before any link formed in the current step.
    int indegree_at_step_start(AgentId i) const;

    double benefit_sum(AgentId i) const { return info(i).benefit_sum; }

    // Full recomputation of i's accumulated benefit, for audits.
    double recompute_benefit(AgentId i, const ModelParams& params) const;

    std::int64_t edge_count() const { return edge_count_; }
    std::int64_t total_outdegree() const;
    std::int64_t total_indegree() const;

private:
    struct AgentInfo {
        TypeId type = 0;
        bool active = true;
        double benefit_sum = 0.0;
        int last_in_gain_step = -1;
        int in_gained_this_step = 0;
    };

    AgentInfo& info(AgentId i);
    const AgentInfo& info(AgentId i) const;

    std::vector<AgentInfo> agents_;
    std::vector<std::vector<AgentId>> out_;
    std::vector<std::vector<AgentId>> in_;
    int clock_ = 0;
    std::int64_t edge_count_ = 0;
};

} // namespace netevo

#endif // NETEVO_GRAPH_STATE_HPP_
