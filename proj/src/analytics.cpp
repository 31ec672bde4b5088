#include "netevo/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace netevo {

namespace {

LinearFit ols(const std::vector<double>& x, const std::vector<double>& y)
{
    const int n = static_cast<int>(x.size());
    LinearFit fit;
    fit.n = n;
    if (n < 2)
        throw InsufficientSamples("linear fit needs at least 2 points");
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0)
        throw InsufficientSamples("linear fit: degenerate abscissa");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.r2 = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
    fit.slope_se = (n > 2) ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
    return fit;
}

} // namespace

std::vector<int> collect_lft_samples(const EnsembleResult& ensemble, TypeId type,
                                     int min_birth, int max_birth)
{
    std::vector<int> samples;
    for (const auto& rep : ensemble.replications)
        for (const auto& rec : rep.records) {
            if (rec.active) // horizon-censored
                continue;
            if (rec.links_formed == 0)
                continue;
            if (type != 0 && rec.type != type)
                continue;
            if (rec.birth <= min_birth)
                continue;
            if (max_birth != 0 && rec.birth > max_birth)
                continue;
            samples.push_back(*finalize_lft(rec));
        }
    return samples;
}

MeanTrajectory mean_trajectory(const EnsembleResult& ensemble, int birth,
                               TypeId required_type)
{
    MeanTrajectory out;
    out.birth = birth;
    const int horizon = ensemble.config.horizon;
    const int len = horizon - birth + 1;
    if (len <= 0)
        throw std::invalid_argument("mean_trajectory: birth past horizon");
    out.steps.resize(static_cast<std::size_t>(len));
    std::iota(out.steps.begin(), out.steps.end(), birth);
    out.mean_indegree.assign(static_cast<std::size_t>(len), 0.0);

    for (const auto& rep : ensemble.replications) {
        auto it = rep.trajectories.find(birth);
        if (it == rep.trajectories.end())
            continue;
        if (required_type != 0 &&
            rep.records[static_cast<std::size_t>(birth - 1)].type != required_type)
            continue;
        const auto& traj = it->second;
        for (int i = 0; i < len && i < static_cast<int>(traj.size()); ++i)
            out.mean_indegree[static_cast<std::size_t>(i)] += traj[static_cast<std::size_t>(i)];
        ++out.n_replications;
    }
    if (out.n_replications == 0)
        throw InsufficientSamples("mean_trajectory: no qualifying replication tracks this birth");
    for (auto& v : out.mean_indegree)
        v /= out.n_replications;
    return out;
}

MeanCI estimate_elft(const std::vector<int>& lft_samples)
{
    const int n = static_cast<int>(lft_samples.size());
    if (n < 30)
        throw InsufficientSamples("estimate_elft: need >= 30 uncensored samples, have " +
                                  std::to_string(n));
    MeanCI out;
    out.n = n;
    out.mean = std::accumulate(lft_samples.begin(), lft_samples.end(), 0.0) / n;
    double ss = 0.0;
    for (int v : lft_samples)
        ss += (v - out.mean) * (v - out.mean);
    out.ci_half = 1.959963985 * std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
    return out;
}

LftDistribution lft_pmf(const std::vector<int>& lft_samples)
{
    const int n = static_cast<int>(lft_samples.size());
    if (n < 30)
        throw InsufficientSamples("lft_pmf: need >= 30 uncensored samples, have " +
                                  std::to_string(n));
    std::map<int, int> counts;
    for (int v : lft_samples)
        ++counts[v];
    LftDistribution dist;
    dist.sample_count = n;
    for (const auto& [value, count] : counts) {
        dist.support.push_back(value);
        dist.pmf.push_back(static_cast<double>(count) / n);
    }
    return dist;
}

double dkw_epsilon(int n_a, int n_b)
{
    const double log_term = std::log(2.0 / 0.05);
    return std::sqrt(log_term / (2.0 * n_a)) + std::sqrt(log_term / (2.0 * n_b));
}

FosdResult fosd_test(const LftDistribution& a, const LftDistribution& b,
                     std::optional<double> epsilon)
{
    FosdResult res;
    res.epsilon = epsilon ? *epsilon : dkw_epsilon(a.sample_count, b.sample_count);

    std::vector<int> grid(a.support);
    grid.insert(grid.end(), b.support.begin(), b.support.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    double cdf_a = 0.0, cdf_b = 0.0;
    std::size_t ia = 0, ib = 0;
    for (int x : grid) {
        while (ia < a.support.size() && a.support[ia] <= x)
            cdf_a += a.pmf[ia++];
        while (ib < b.support.size() && b.support[ib] <= x)
            cdf_b += b.pmf[ib++];
        res.max_gap_a_over_b = std::max(res.max_gap_a_over_b, cdf_a - cdf_b);
        res.max_gap_b_over_a = std::max(res.max_gap_b_over_a, cdf_b - cdf_a);
    }

    const bool a_below = res.max_gap_a_over_b <= res.epsilon; // CDF_A <= CDF_B + eps
    const bool b_below = res.max_gap_b_over_a <= res.epsilon;
    if (a_below && !b_below)
        res.verdict = FosdVerdict::ADominates;
    else if (b_below && !a_below)
        res.verdict = FosdVerdict::BDominates;
    else
        res.verdict = FosdVerdict::Neither;
    return res;
}

MeanCI estimate_epat(const EnsembleResult& ensemble, int birth, int d,
                     TypeId required_type)
{
    std::vector<int> hits;
    for (const auto& rep : ensemble.replications) {
        auto it = rep.trajectories.find(birth);
        if (it == rep.trajectories.end())
            continue;
        if (required_type != 0 &&
            rep.records[static_cast<std::size_t>(birth - 1)].type != required_type)
            continue;
        if (d <= 0) {
            hits.push_back(1); // indegree >= 0 from birth onward
            continue;
        }
        const auto& traj = it->second;
        for (std::size_t i = 0; i < traj.size(); ++i)
            if (traj[i] >= d) {
                hits.push_back(static_cast<int>(i) + 1);
                break;
            }
        // trajectories are monotone, so first hit is the hitting time;
        // never reaching d means the trajectory is censored and dropped
    }
    if (static_cast<int>(hits.size()) < 30)
        throw InsufficientSamples("estimate_epat: need >= 30 trajectories reaching d=" +
                                  std::to_string(d) + ", have " +
                                  std::to_string(hits.size()));
    return estimate_elft(hits); // same mean/CI machinery
}

GrowthFit fit_growth(const std::vector<int>& steps, const std::vector<double>& values,
                     GrowthModel model)
{
    if (steps.size() != values.size())
        throw std::invalid_argument("fit_growth: mismatched lengths");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (steps[i] <= 0)
            continue;
        if (model == GrowthModel::Power) {
            if (values[i] <= 0.0)
                continue;
            x.push_back(std::log(static_cast<double>(steps[i])));
            y.push_back(std::log(values[i]));
        } else {
            x.push_back(std::log(static_cast<double>(steps[i])));
            y.push_back(values[i]);
        }
    }
    if (x.size() < 10)
        throw InsufficientSamples("fit_growth: fewer than 10 usable points");
    const LinearFit fit = ols(x, y);
    GrowthFit out;
    out.model = model;
    out.value = fit.slope;
    out.intercept = fit.intercept;
    out.r2 = fit.r2;
    out.n = fit.n;
    return out;
}

void growth_points(const MeanTrajectory& traj, int tail_factor, int max_points,
                   std::vector<int>& steps_out, std::vector<double>& values_out)
{
    steps_out.clear();
    values_out.clear();
    const int t0 = std::max(traj.birth, tail_factor * traj.birth);
    const int t1 = traj.steps.empty() ? 0 : traj.steps.back();
    if (t1 <= t0)
        return;
    const double lr = std::log(static_cast<double>(t1) / t0);
    int last = -1;
    for (int k = 0; k < max_points; ++k) {
        const double f = (max_points == 1) ? 1.0 : static_cast<double>(k) / (max_points - 1);
        int t = static_cast<int>(std::lround(t0 * std::exp(f * lr)));
        t = std::clamp(t, t0, t1);
        if (t == last)
            continue;
        last = t;
        steps_out.push_back(t);
        values_out.push_back(traj.mean_indegree[static_cast<std::size_t>(t - traj.birth)]);
    }
}

namespace {

std::vector<double> trailing_mean(const std::vector<double>& v, int window)
{
    std::vector<double> out(v.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        sum += v[i];
        if (i >= static_cast<std::size_t>(window))
            sum -= v[i - static_cast<std::size_t>(window)];
        const int n = std::min<int>(window, static_cast<int>(i) + 1);
        out[i] = sum / n;
    }
    return out;
}

} // namespace

std::optional<int> crossover_time(const std::vector<int>& steps,
                                  const std::vector<double>& mean_a,
                                  const std::vector<double>& mean_b, int window)
{
    if (steps.size() != mean_a.size() || steps.size() != mean_b.size())
        throw std::invalid_argument("crossover_time: mismatched grids");
    if (steps.empty())
        return std::nullopt;
    window = std::max(1, window);
    const auto a = trailing_mean(mean_a, window);
    const auto b = trailing_mean(mean_b, window);

    // last sampled index where b fails to exceed a
    int last_violation = -1;
    for (int i = 0; i < static_cast<int>(steps.size()); ++i)
        if (b[static_cast<std::size_t>(i)] <= a[static_cast<std::size_t>(i)])
            last_violation = i;
    if (last_violation < 0)
        return steps.front();
    if (last_violation == static_cast<int>(steps.size()) - 1)
        return std::nullopt;
    return steps[static_cast<std::size_t>(last_violation)];
}

KernelEstimate estimate_attachment_kernel(const EnsembleResult& ensemble,
                                          const KernelOptions& options)
{
    const int horizon = ensemble.config.horizon;
    std::vector<double> exposure;
    std::vector<long long> meetings, links;
    auto grow = [](auto& v, std::size_t n) {
        if (v.size() < n)
            v.resize(n, 0);
    };

    for (const auto& rep : ensemble.replications) {
        // Replay edge arrivals to recover start-of-step indegree risk sets.
        std::vector<int> deg(static_cast<std::size_t>(horizon) + 1, 0);
        std::vector<long long> count; // agents (of target type) at each degree
        std::size_t next_edge = 0;
        for (int t = 1; t <= horizon; ++t) {
            const auto& newborn = rep.records[static_cast<std::size_t>(t - 1)];
            if (options.target_type == 0 || newborn.type == options.target_type) {
                grow(count, 1);
                ++count[0];
            }
            grow(exposure, count.size());
            for (std::size_t d = 0; d < count.size(); ++d)
                exposure[d] += static_cast<double>(count[d]);
            while (next_edge < rep.edges.size() && rep.edges[next_edge].step == t) {
                const auto& e = rep.edges[next_edge++];
                const auto& target = rep.records[static_cast<std::size_t>(e.target - 1)];
                const int old = deg[static_cast<std::size_t>(e.target)]++;
                if (options.target_type == 0 || target.type == options.target_type) {
                    grow(count, static_cast<std::size_t>(old) + 2);
                    --count[static_cast<std::size_t>(old)];
                    ++count[static_cast<std::size_t>(old) + 1];
                }
            }
        }
        for (const auto& ev : rep.meetings) {
            if (options.seeker_type != 0 &&
                rep.records[static_cast<std::size_t>(ev.seeker - 1)].type != options.seeker_type)
                continue;
            if (options.target_type != 0 && ev.met_type != options.target_type)
                continue;
            grow(meetings, static_cast<std::size_t>(ev.met_indegree) + 1);
            grow(links, static_cast<std::size_t>(ev.met_indegree) + 1);
            ++meetings[static_cast<std::size_t>(ev.met_indegree)];
            if (ev.linked)
                ++links[static_cast<std::size_t>(ev.met_indegree)];
        }
    }

    KernelEstimate est;
    grow(meetings, exposure.size());
    grow(links, exposure.size());
    for (std::size_t d = 0; d < exposure.size(); ++d) {
        if (exposure[d] <= 0.0)
            continue;
        KernelBin bin;
        bin.degree = static_cast<int>(d);
        bin.meetings = meetings[d];
        bin.links = links[d];
        bin.exposure = exposure[d];
        bin.meet_prob = static_cast<double>(bin.meetings) / bin.exposure;
        bin.link_prob = static_cast<double>(bin.links) / bin.exposure;
        est.bins.push_back(bin);
        if (bin.meetings >= options.min_events)
            est.qualifying.push_back(bin);
    }
    if (est.qualifying.size() < 2)
        throw InsufficientSamples("attachment kernel: fewer than 2 bins reach the event threshold");

    std::vector<double> x, ym, yl;
    for (const auto& bin : est.qualifying) {
        x.push_back(bin.degree);
        ym.push_back(bin.meet_prob);
        yl.push_back(bin.link_prob);
    }
    est.meet_fit = ols(x, ym);
    est.link_fit = ols(x, yl);
    return est;
}

double excess_representation(const EnsembleResult& ensemble, TypeId k, TypeId m,
                             int min_samples)
{
    int samples = 0;
    double best = 0.0;
    for (const auto& rep : ensemble.replications) {
        // friend-type counts from the edge log
        std::map<AgentId, std::pair<int, int>> counts; // source -> (type-m friends, friends)
        for (const auto& e : rep.edges) {
            const auto& src = rep.records[static_cast<std::size_t>(e.source - 1)];
            if (src.type != k)
                continue;
            auto& c = counts[e.source];
            ++c.second;
            if (rep.records[static_cast<std::size_t>(e.target - 1)].type == m)
                ++c.first;
        }
        for (const auto& rec : rep.records) {
            if (rec.type != k || rec.active || rec.links_formed == 0)
                continue;
            auto it = counts.find(rec.id);
            if (it == counts.end())
                continue;
            ++samples;
            best = std::max(best,
                            static_cast<double>(it->second.first) / it->second.second);
        }
    }
    if (samples < min_samples)
        throw InsufficientSamples("excess_representation: need >= " +
                                  std::to_string(min_samples) + " saturated agents, have " +
                                  std::to_string(samples));
    return best;
}

ElftPrediction oracle_elft(const ModelParams& params, HomophilyRegime regime,
                           TypeId type)
{
    ElftPrediction pred;
    if (regime == HomophilyRegime::NonHomophilic) {
        const int l = gregariousness(type, type, 0.0, params);
        pred.value = l;
        pred.alt_value = l;
        pred.deterministic = true;
        return pred;
    }
    const double p = params.type_probs[static_cast<std::size_t>(type - 1)];
    const double denom = params.gamma * p + (1.0 - params.gamma);
    const int l_after = gregariousness(type, type, affinity(type, type, params), params);
    const int l_zero = gregariousness(type, type, 0.0, params);
    pred.value = 1.0 / p + l_after / denom;
    pred.alt_value = 1.0 / p + l_zero / denom;
    return pred;
}

GrowthPrediction oracle_growth(const ModelParams& params, HomophilyRegime regime,
                               double gamma, TypeId type)
{
    if (gamma != 0.0 && gamma != 1.0)
        throw std::invalid_argument(
            "oracle_growth: closed growth laws exist only at gamma 0 or 1");
    const double l = (regime == HomophilyRegime::NonHomophilic)
                         ? mean_gregariousness(params)
                         : gregariousness(type, type, 0.0, params);
    GrowthPrediction pred;
    if (gamma == 0.0) {
        pred.model = GrowthModel::Power;
        if (l <= 1.0) {
            pred.value = 0.0;
            pred.degenerate = true;
        } else {
            pred.value = (l - 1.0) / l;
        }
    } else {
        pred.model = GrowthModel::Log;
        pred.value = l;
    }
    return pred;
}

double lambert_w_minus1(double x)
{
    constexpr double neg_inv_e = -0.36787944117144233; // -1/e
    if (x < neg_inv_e - 1e-15 || x >= 0.0)
        throw std::domain_error("lambert_w_minus1: argument outside [-1/e, 0)");
    if (x <= neg_inv_e)
        return -1.0;

    // Initial guess: branch-point series near -1/e, asymptotic form near 0.
    double w;
    if (x < -0.27) {
        const double p = -std::sqrt(2.0 * (1.0 + std::exp(1.0) * x));
        w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
    } else {
        const double l1 = std::log(-x);
        const double l2 = std::log(-l1);
        w = l1 - l2 + l2 / l1;
    }

    for (int iter = 0; iter < 100; ++iter) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (std::abs(f) <= 1e-13)
            break;
        const double fp = ew * (1.0 + w);
        const double fpp = ew * (2.0 + w);
        const double step = f / (fp - f * fpp / (2.0 * fp)); // Halley
        w -= step;
        if (std::abs(step) <= 1e-16 * std::abs(w))
            break;
    }
    return w;
}

double oracle_crossover(int birth, double mean_greg)
{
    if (mean_greg <= 1.0)
        throw std::domain_error("oracle_crossover: mean gregariousness must exceed 1");
    // The stated argument of W_{-1} is positive and outside the branch's real
    // domain; the negated argument is used (finite, matches the qualitative
    // claims).
    const double arg = -(1.0 / mean_greg) * std::exp(-1.0 / mean_greg);
    const double w = lambert_w_minus1(arg);
    const double multiplier =
        std::pow(-mean_greg * w, mean_greg / (mean_greg - 1.0));
    return birth * multiplier;
}

} // namespace netevo
