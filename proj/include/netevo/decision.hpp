// Myopic link-formation decision and link-formation-time bookkeeping.
#ifndef NETEVO_DECISION_HPP_
#define NETEVO_DECISION_HPP_

#include <optional>

#include "netevo/graph_state.hpp"
#include "netevo/model.hpp"

namespace netevo {

struct AgentRecord {
    AgentId id = 0;
    TypeId type = 0;
    int birth = 0;
    std::optional<int> last_link_step;
    std::optional<int> deactivated_step; // step at which saturation was detected
    int links_formed = 0;
    bool active = true; // still unsaturated; true at horizon means censored
};

// v(S + alpha_ij) - v(S) - c for the prospective link (i,j). Throws
// std::logic_error if the edge already exists.
double marginal_utility(AgentId i, AgentId j, const NetworkState& state,
                        const ModelParams& params);

// Forms the edge iff the marginal utility is strictly positive (an exact tie
// means no link). Returns whether the edge was formed.
bool decide_link(AgentId i, AgentId j, NetworkState& state, const ModelParams& params);

// True once no link to any type is profitable; monotone in accumulated
// benefit, so callers may deactivate the agent permanently.
bool is_saturated(AgentId i, const NetworkState& state, const ModelParams& params);

// T_i = last_link_step - birth + 1; absent when no link was ever formed.
std::optional<int> finalize_lft(const AgentRecord& record);

} // namespace netevo

#endif // NETEVO_DECISION_HPP_
