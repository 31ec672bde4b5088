#include "netevo/meeting.hpp"

#include <algorithm>

namespace netevo {

namespace {

// Uniform draw from the complement of `excluded` (sorted, contains i) in
// {1..population}. Rejection sampling while the excluded set is small,
// explicit enumeration otherwise.
AgentId draw_stranger(const std::vector<AgentId>& excluded, int population, Rng& rng)
{
    const std::size_t n_excluded = excluded.size();
    if (n_excluded * 2 > static_cast<std::size_t>(population)) {
        std::vector<AgentId> pool;
        pool.reserve(static_cast<std::size_t>(population) - n_excluded);
        std::size_t e = 0;
        for (AgentId v = 1; v <= population; ++v) {
            while (e < n_excluded && excluded[e] < v)
                ++e;
            if (e < n_excluded && excluded[e] == v)
                continue;
            pool.push_back(v);
        }
        return pool[rng.uniform_index(pool.size())];
    }
    for (;;) {
        AgentId v = static_cast<AgentId>(1 + rng.uniform_index(static_cast<std::size_t>(population)));
        if (!std::binary_search(excluded.begin(), excluded.end(), v))
            return v;
    }
}

} // namespace

std::optional<MeetingEvent> draw_meeting(AgentId i, const NetworkState& state,
                                         const ModelParams& params, Rng& rng)
{
    const auto fof = state.friends_of_friends(i);
    const auto& friends_i = state.friends(i);
    const std::size_t n_strangers = static_cast<std::size_t>(state.population()) - 1 -
                                    friends_i.size() - fof.size();

    if (fof.empty() && n_strangers == 0)
        return std::nullopt;

    bool use_strangers;
    if (fof.empty())
        use_strangers = true;
    else if (n_strangers == 0)
        use_strangers = false;
    else
        use_strangers = rng.bernoulli(params.gamma);

    AgentId met;
    if (use_strangers) {
        std::vector<AgentId> excluded(fof);
        excluded.insert(excluded.end(), friends_i.begin(), friends_i.end());
        excluded.push_back(i);
        std::sort(excluded.begin(), excluded.end());
        met = draw_stranger(excluded, state.population(), rng);
    } else {
        met = fof[rng.uniform_index(fof.size())];
    }

    MeetingEvent ev;
    ev.step = state.clock();
    ev.seeker = i;
    ev.met = met;
    ev.pool = use_strangers ? MeetingPool::Strangers : MeetingPool::FriendsOfFriends;
    ev.met_indegree = state.indegree_at_step_start(met);
    ev.met_type = state.type(met);
    return ev;
}

} // namespace netevo
