#include "netevo/sim.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <stdexcept>
#include <thread>

namespace netevo {

void SimConfig::validate() const
{
    params.validate();
    if (horizon < 0)
        throw std::invalid_argument("horizon must be non-negative");
    if (warmup < 0 || (horizon > 0 && warmup >= horizon))
        throw std::invalid_argument("warmup must lie in [0, horizon)");
    if (replications < 1)
        throw std::invalid_argument("replications must be >= 1");
    for (int b : tracked_births)
        if (b < 1 || b > horizon)
            throw std::invalid_argument("tracked birth outside [1, horizon]");
}

Simulation::Simulation(const SimConfig& config, std::uint64_t stream_seed)
    : config_(config), rng_(stream_seed), stream_seed_(stream_seed)
{
    config_.validate();
}

void Simulation::advance_step()
{
    if (done())
        throw std::logic_error("advance_step past horizon");

    // Arrival: type drawn from the Bernoulli scheme.
    const TypeId ty = 1 + rng_.categorical(config_.params.type_probs);
    const AgentId newborn = state_.add_agent(ty);
    const int t = state_.clock();

    AgentRecord rec;
    rec.id = newborn;
    rec.type = ty;
    rec.birth = t;
    records_.push_back(rec);
    active_.push_back(newborn);

    // A newborn may already be saturated (cost too high for any link).
    if (is_saturated(newborn, state_, config_.params)) {
        state_.deactivate(newborn);
        records_.back().active = false;
        records_.back().deactivated_step = t;
        active_.pop_back();
    }

    if (config_.track_all || std::find(config_.tracked_births.begin(),
                                       config_.tracked_births.end(),
                                       newborn) != config_.tracked_births.end())
        trajectories_.emplace(newborn, std::vector<int>{});

    // Meetings and decisions, ascending birth order; graph mutations apply
    // immediately within the step.
    std::vector<AgentId> saturated_now;
    for (AgentId seeker : active_) {
        auto ev = draw_meeting(seeker, state_, config_.params, rng_);
        if (!ev)
            continue;
        const bool linked = decide_link(seeker, ev->met, state_, config_.params);
        ev->linked = linked;
        if (config_.log_meetings)
            meetings_.push_back(*ev);
        if (linked) {
            auto& r = records_[static_cast<std::size_t>(seeker - 1)];
            r.last_link_step = t;
            ++r.links_formed;
            if (config_.log_edges)
                edges_.push_back({seeker, ev->met, t});
            if (is_saturated(seeker, state_, config_.params)) {
                state_.deactivate(seeker);
                r.active = false;
                r.deactivated_step = t;
                saturated_now.push_back(seeker);
            }
        }
    }
    for (AgentId s : saturated_now)
        active_.erase(std::find(active_.begin(), active_.end(), s));

    for (auto& [agent, traj] : trajectories_)
        if (agent <= state_.population())
            traj.push_back(state_.indegree(agent));
}

ReplicationResult Simulation::finish()
{
    while (!done())
        advance_step();
    ReplicationResult res;
    res.stream_seed = stream_seed_;
    res.records = std::move(records_);
    res.meetings = std::move(meetings_);
    res.edges = std::move(edges_);
    res.trajectories = std::move(trajectories_);
    return res;
}

ReplicationResult run(const SimConfig& config, std::uint64_t stream_seed)
{
    Simulation sim(config, stream_seed);
    return sim.finish();
}

EnsembleResult run_ensemble(const SimConfig& config)
{
    config.validate();
    EnsembleResult ensemble;
    ensemble.config = config;
    ensemble.stream_seeds.reserve(static_cast<std::size_t>(config.replications));
    for (int r = 0; r < config.replications; ++r)
        ensemble.stream_seeds.push_back(
            derive_stream_seed(config.seed, static_cast<std::uint64_t>(r)));

    ensemble.replications.resize(static_cast<std::size_t>(config.replications));
    const unsigned n_workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(config.replications));
    std::vector<std::future<void>> workers;
    std::atomic<int> next{0};
    for (unsigned w = 0; w < n_workers; ++w)
        workers.push_back(std::async(std::launch::async, [&] {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= config.replications)
                    return;
                ensemble.replications[static_cast<std::size_t>(r)] =
                    run(config, ensemble.stream_seeds[static_cast<std::size_t>(r)]);
            }
        }));
    for (auto& f : workers)
        f.get();
    return ensemble;
}

} // namespace netevo
