#include "netevo/graph_state.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace netevo {

NetworkState::AgentInfo& NetworkState::info(AgentId i)
{
    if (i < 1 || i > population())
        throw std::out_of_range("agent id " + std::to_string(i) + " not in network");
    return agents_[static_cast<std::size_t>(i - 1)];
}

const NetworkState::AgentInfo& NetworkState::info(AgentId i) const
{
    if (i < 1 || i > population())
        throw std::out_of_range("agent id " + std::to_string(i) + " not in network");
    return agents_[static_cast<std::size_t>(i - 1)];
}

AgentId NetworkState::add_agent(TypeId type)
{
    ++clock_;
    AgentInfo a;
    a.type = type;
    agents_.push_back(a);
    out_.emplace_back();
    in_.emplace_back();
    return clock_;
}

void NetworkState::add_edge(AgentId i, AgentId j, double benefit_gain)
{
    if (i == j)
        throw std::logic_error("self-edge rejected");
    info(j); // range check
    auto& friends_i = out_[static_cast<std::size_t>(i - 1)];
    auto pos = std::lower_bound(friends_i.begin(), friends_i.end(), j);
    if (pos != friends_i.end() && *pos == j)
        throw std::logic_error("duplicate edge rejected");
    friends_i.insert(pos, j);

    auto& followers_j = in_[static_cast<std::size_t>(j - 1)];
    followers_j.insert(std::lower_bound(followers_j.begin(), followers_j.end(), i), i);

    info(i).benefit_sum += benefit_gain;

    auto& tj = info(j);
    if (tj.last_in_gain_step == clock_) {
        ++tj.in_gained_this_step;
    } else {
        tj.last_in_gain_step = clock_;
        tj.in_gained_this_step = 1;
    }
    ++edge_count_;
}

bool NetworkState::has_edge(AgentId i, AgentId j) const
{
    const auto& friends_i = friends(i);
    return std::binary_search(friends_i.begin(), friends_i.end(), j);
}

const std::vector<AgentId>& NetworkState::friends(AgentId i) const
{
    info(i);
    return out_[static_cast<std::size_t>(i - 1)];
}

const std::vector<AgentId>& NetworkState::followers(AgentId i) const
{
    info(i);
    return in_[static_cast<std::size_t>(i - 1)];
}

std::vector<AgentId> NetworkState::friends_of_friends(AgentId i) const
{
    const auto& friends_i = friends(i);
    std::vector<AgentId> pool;
    for (AgentId j : friends_i)
        for (AgentId b : friends(j))
            if (b != i && !has_edge(i, b))
                pool.push_back(b);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    return pool;
}

std::vector<AgentId> NetworkState::strangers(AgentId i) const
{
    auto excluded = friends_of_friends(i);
    const auto& friends_i = friends(i);
    excluded.insert(excluded.end(), friends_i.begin(), friends_i.end());
    excluded.push_back(i);
    std::sort(excluded.begin(), excluded.end());

    std::vector<AgentId> result;
    result.reserve(static_cast<std::size_t>(population()) - excluded.size());
    std::size_t e = 0;
    for (AgentId v = 1; v <= population(); ++v) {
        while (e < excluded.size() && excluded[e] < v)
            ++e;
        if (e < excluded.size() && excluded[e] == v)
            continue;
        result.push_back(v);
    }
    return result;
}

int NetworkState::indegree_at_step_start(AgentId i) const
{
    const auto& a = info(i);
    int deg = indegree(i);
    if (a.last_in_gain_step == clock_)
        deg -= a.in_gained_this_step;
    return deg;
}

double NetworkState::recompute_benefit(AgentId i, const ModelParams& params) const
{
    double sum = 0.0;
    for (AgentId j : friends(i))
        sum += affinity(type(i), type(j), params);
    return sum;
}

std::int64_t NetworkState::total_outdegree() const
{
    std::int64_t sum = 0;
    for (const auto& v : out_)
        sum += static_cast<std::int64_t>(v.size());
    return sum;
}

std::int64_t NetworkState::total_indegree() const
{
    std::int64_t sum = 0;
    for (const auto& v : in_)
        sum += static_cast<std::int64_t>(v.size());
    return sum;
}

} // namespace netevo
