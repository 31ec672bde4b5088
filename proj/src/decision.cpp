#include "netevo/decision.hpp"

#include <stdexcept>

namespace netevo {

double marginal_utility(AgentId i, AgentId j, const NetworkState& state,
                        const ModelParams& params)
{
    if (i == j)
        throw std::logic_error("marginal_utility: self pair");
    if (state.has_edge(i, j))
        throw std::logic_error("marginal_utility: edge already exists");
    const double s = state.benefit_sum(i);
    const double a = affinity(state.type(i), state.type(j), params);
    return benefit_value(s + a, params) - benefit_value(s, params) -
           params.cost_for(state.type(i));
}

bool decide_link(AgentId i, AgentId j, NetworkState& state, const ModelParams& params)
{
    if (marginal_utility(i, j, state, params) <= 0.0)
        return false;
    state.add_edge(i, j, affinity(state.type(i), state.type(j), params));
    return true;
}

bool is_saturated(AgentId i, const NetworkState& state, const ModelParams& params)
{
    const double s = state.benefit_sum(i);
    const double v0 = benefit_value(s, params);
    const double c = params.cost_for(state.type(i));
    for (TypeId k = 1; k <= params.num_types; ++k) {
        const double a = affinity(state.type(i), k, params);
        if (benefit_value(s + a, params) - v0 > c)
            return false;
    }
    return true;
}

std::optional<int> finalize_lft(const AgentRecord& record)
{
    if (!record.last_link_step)
        return std::nullopt;
    return *record.last_link_step - record.birth + 1;
}

} // namespace netevo
