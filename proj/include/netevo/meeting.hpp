// Two-branch meeting sampler: friends-of-friends with probability 1-gamma,
// strangers with probability gamma, uniform within the chosen pool, with the
// usual boundary rules when one pool is empty.
#ifndef NETEVO_MEETING_HPP_
#define NETEVO_MEETING_HPP_

#include <optional>

#include "netevo/graph_state.hpp"
#include "netevo/model.hpp"
#include "netevo/random.hpp"

namespace netevo {

enum class MeetingPool { FriendsOfFriends, Strangers };

struct MeetingEvent {
    int step = 0;
    AgentId seeker = 0;
    AgentId met = 0;
    MeetingPool pool = MeetingPool::Strangers;
    int met_indegree = 0; // met agent's indegree at the start of the step
    TypeId met_type = 0;
    bool linked = false;
};

// Returns nothing when both pools are empty. Deterministic given rng state.
std::optional<MeetingEvent> draw_meeting(AgentId i, const NetworkState& state,
                                         const ModelParams& params, Rng& rng);

} // namespace netevo

#endif // NETEVO_MEETING_HPP_
