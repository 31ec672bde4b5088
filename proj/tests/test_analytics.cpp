#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "netevo/analytics.hpp"

using namespace netevo;

namespace {

ModelParams h0_params()
{
    ModelParams p;
    p.num_types = 2;
    p.type_probs = {0.7, 0.3};
    p.alpha_max = 1.0;
    p.alpha_decay = 1.0;
    p.benefit_scale = 1.0;
    p.link_cost = 0.2;
    return p;
}

AgentRecord rec(AgentId id, TypeId type, int birth, int last_link, int links,
                bool active)
{
    AgentRecord r;
    r.id = id;
    r.type = type;
    r.birth = birth;
    if (last_link > 0)
        r.last_link_step = last_link;
    r.links_formed = links;
    r.active = active;
    return r;
}

// Root of w e^w = x on the lower branch by bisection; the reference the
// closed-form evaluation is checked against.
double w_minus1_bisect(double x)
{
    double lo = -700.0, hi = -1.0; // g(w) = w e^w decreases on (-inf, -1]
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid * std::exp(mid) < x)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("collect_lft_samples filters censored, linkless, type and birth window")
{
    EnsembleResult ens;
    ens.config.horizon = 100;
    ReplicationResult rep;
    rep.records.push_back(rec(1, 1, 1, 3, 4, false));   // lft 3
    rep.records.push_back(rec(2, 1, 2, 2, 4, false));   // lft 1
    rep.records.push_back(rec(3, 2, 3, 10, 4, false));  // type 2
    rep.records.push_back(rec(4, 1, 4, 90, 2, true));   // censored
    rep.records.push_back(rec(5, 1, 5, 0, 0, false));   // never linked
    rep.records.push_back(rec(6, 1, 50, 52, 4, false)); // lft 3
    ens.replications.push_back(rep);

    CHECK(collect_lft_samples(ens) == std::vector<int>{3, 1, 8, 3});
    CHECK(collect_lft_samples(ens, 1) == std::vector<int>{3, 1, 3});
    CHECK(collect_lft_samples(ens, 2) == std::vector<int>{8});
    // min_birth is exclusive (warmup semantics), max_birth inclusive
    CHECK(collect_lft_samples(ens, 1, 2) == std::vector<int>{3});
    CHECK(collect_lft_samples(ens, 1, 0, 2) == std::vector<int>{3, 1});
}

TEST_CASE("estimate_elft: worked mean and CI, sample floor")
{
    std::vector<int> samples;
    for (int i = 0; i < 15; ++i) {
        samples.push_back(2);
        samples.push_back(4);
    }
    auto est = estimate_elft(samples);
    CHECK(est.n == 30);
    CHECK(est.mean == doctest::Approx(3.0).epsilon(1e-15));
    // sd = sqrt(30/29), half width 1.96 sd / sqrt(30)
    CHECK(est.ci_half == doctest::Approx(0.363965).epsilon(1e-4));

    samples.pop_back();
    CHECK_THROWS_AS(estimate_elft(samples), InsufficientSamples);
}

TEST_CASE("lft_pmf: sorted support, normalized mass")
{
    std::vector<int> samples;
    for (int i = 0; i < 20; ++i)
        samples.push_back(5);
    for (int i = 0; i < 10; ++i)
        samples.push_back(2);
    auto dist = lft_pmf(samples);
    CHECK(dist.sample_count == 30);
    CHECK(dist.support == std::vector<int>{2, 5});
    CHECK(dist.pmf[0] == doctest::Approx(1.0 / 3));
    CHECK(dist.pmf[1] == doctest::Approx(2.0 / 3));
}

TEST_CASE("fosd_test: dominance, antisymmetry, identical inputs")
{
    LftDistribution a, b;
    a.support = {3, 4, 5};
    a.pmf = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    a.sample_count = 300;
    b.support = {1, 2, 3};
    b.pmf = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    b.sample_count = 300;

    auto res = fosd_test(a, b, 0.1);
    CHECK(res.verdict == FosdVerdict::ADominates);
    CHECK(res.max_gap_a_over_b == doctest::Approx(0.0));
    CHECK(res.max_gap_b_over_a == doctest::Approx(2.0 / 3));

    auto rev = fosd_test(b, a, 0.1);
    CHECK(rev.verdict == FosdVerdict::BDominates);
    CHECK(rev.max_gap_b_over_a == doctest::Approx(0.0));
    CHECK(rev.max_gap_a_over_b == doctest::Approx(2.0 / 3));

    auto same = fosd_test(a, a, 0.1);
    CHECK(same.verdict == FosdVerdict::Neither);
    CHECK(same.max_gap_a_over_b == 0.0);
    CHECK(same.max_gap_b_over_a == 0.0);

    // an epsilon larger than every gap degrades any verdict to Neither
    CHECK(fosd_test(a, b, 0.9).verdict == FosdVerdict::Neither);

    // default epsilon follows the two-sample DKW-style formula
    auto dflt = fosd_test(a, b);
    CHECK(dflt.epsilon == doctest::Approx(dkw_epsilon(300, 300)).epsilon(1e-15));
    CHECK(dkw_epsilon(300, 300) ==
          doctest::Approx(2.0 * std::sqrt(std::log(40.0) / 600.0)).epsilon(1e-12));
}

TEST_CASE("mean_trajectory: averaging, type conditioning, absent births")
{
    EnsembleResult ens;
    ens.config.horizon = 4;
    ReplicationResult r1, r2;
    r1.records = {rec(1, 1, 1, 0, 0, true), rec(2, 2, 2, 0, 0, true),
                  rec(3, 1, 3, 0, 0, true), rec(4, 1, 4, 0, 0, true)};
    r1.trajectories[2] = {0, 1, 2};
    r2.records = {rec(1, 1, 1, 0, 0, true), rec(2, 1, 2, 0, 0, true),
                  rec(3, 1, 3, 0, 0, true), rec(4, 1, 4, 0, 0, true)};
    r2.trajectories[2] = {2, 2, 2};
    ens.replications = {r1, r2};

    auto traj = mean_trajectory(ens, 2);
    CHECK(traj.n_replications == 2);
    CHECK(traj.steps == std::vector<int>{2, 3, 4});
    CHECK(traj.mean_indegree[0] == doctest::Approx(1.0));
    CHECK(traj.mean_indegree[1] == doctest::Approx(1.5));
    CHECK(traj.mean_indegree[2] == doctest::Approx(2.0));

    auto only2 = mean_trajectory(ens, 2, 2); // agent 2 realized type 2 in r1 only
    CHECK(only2.n_replications == 1);
    CHECK(only2.mean_indegree == std::vector<double>{0, 1, 2});

    CHECK_THROWS_AS(mean_trajectory(ens, 3), InsufficientSamples);
    CHECK_THROWS_AS(mean_trajectory(ens, 5), std::invalid_argument);
}

TEST_CASE("estimate_epat: hitting times, d <= 0 convention, censoring")
{
    EnsembleResult ens;
    ens.config.horizon = 5;
    for (int r = 0; r < 40; ++r) {
        ReplicationResult rep;
        rep.records = {rec(1, 1, 1, 0, 0, true), rec(2, 1, 2, 0, 0, true)};
        // reaches 1 on the second tracked step, 2 on the fourth
        rep.trajectories[2] = {0, 1, 1, 2};
        ens.replications.push_back(rep);
    }
    CHECK(estimate_epat(ens, 2, 0).mean == doctest::Approx(1.0));
    CHECK(estimate_epat(ens, 2, 1).mean == doctest::Approx(2.0));
    CHECK(estimate_epat(ens, 2, 2).mean == doctest::Approx(4.0));
    // monotone in the level d
    CHECK(estimate_epat(ens, 2, 1).mean <= estimate_epat(ens, 2, 2).mean);
    // level never reached: every trajectory censored
    CHECK_THROWS_AS(estimate_epat(ens, 2, 3), InsufficientSamples);
}

TEST_CASE("fit_growth recovers exact synthetic laws")
{
    std::vector<int> steps;
    std::vector<double> power_y, log_y;
    for (int k = 0; k < 20; ++k) {
        int t = static_cast<int>(std::lround(10.0 * std::pow(1.3, k)));
        steps.push_back(t);
        power_y.push_back(2.5 * std::pow(t, 0.75));
        log_y.push_back(4.0 * std::log(t) + 1.0);
    }
    auto pf = fit_growth(steps, power_y, GrowthModel::Power);
    CHECK(pf.model == GrowthModel::Power);
    CHECK(pf.value == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(pf.intercept == doctest::Approx(std::log(2.5)).epsilon(1e-9));
    CHECK(pf.r2 == doctest::Approx(1.0).epsilon(1e-12));

    auto lf = fit_growth(steps, log_y, GrowthModel::Log);
    CHECK(lf.model == GrowthModel::Log);
    CHECK(lf.value == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(lf.intercept == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(lf.r2 == doctest::Approx(1.0).epsilon(1e-12));

    // the true model fits strictly better on each other's data
    CHECK(fit_growth(steps, power_y, GrowthModel::Log).r2 < pf.r2);
    CHECK(fit_growth(steps, log_y, GrowthModel::Power).r2 < lf.r2);

    // zero values are dropped for the power model, not the log model
    power_y[0] = 0.0;
    CHECK(fit_growth(steps, power_y, GrowthModel::Power).n == 19);

    std::vector<int> few(steps.begin(), steps.begin() + 9);
    std::vector<double> few_y(log_y.begin(), log_y.begin() + 9);
    CHECK_THROWS_AS(fit_growth(few, few_y, GrowthModel::Log), InsufficientSamples);
    few_y.pop_back();
    CHECK_THROWS_AS(fit_growth(few, few_y, GrowthModel::Log), std::invalid_argument);
}

TEST_CASE("growth_points: log-spaced tail subsample")
{
    MeanTrajectory traj;
    traj.birth = 20;
    for (int t = 20; t <= 2000; ++t) {
        traj.steps.push_back(t);
        traj.mean_indegree.push_back(0.5 * t);
    }
    std::vector<int> steps;
    std::vector<double> values;
    growth_points(traj, 4, 24, steps, values);
    REQUIRE(!steps.empty());
    CHECK(steps.front() == 80); // tail starts at tail_factor * birth
    CHECK(steps.back() == 2000);
    CHECK(static_cast<int>(steps.size()) <= 24);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i > 0)
            CHECK(steps[i] > steps[i - 1]);
        CHECK(values[i] == doctest::Approx(0.5 * steps[i]));
    }
    // roughly geometric spacing: ratio of consecutive steps is bounded
    for (std::size_t i = 1; i < steps.size(); ++i)
        CHECK(static_cast<double>(steps[i]) / steps[i - 1] < 1.5);
}

TEST_CASE("crossover_time: worked grids")
{
    std::vector<int> steps;
    std::vector<double> a, b;
    for (int t = 1; t <= 100; ++t) {
        steps.push_back(t);
        a.push_back(5.0);
        b.push_back(t / 10.0);
    }
    // b <= a up to and including t = 50
    CHECK(crossover_time(steps, a, b, 1) == 50);

    std::vector<double> below(100, 1.0);
    CHECK_FALSE(crossover_time(steps, a, below, 1).has_value());

    std::vector<double> above(100, 6.0);
    CHECK(crossover_time(steps, a, above, 1) == steps.front());

    // a single-sample dip drags the raw crossover to t = 71; the trailing
    // mean absorbs it and restores the clean verdict
    std::vector<double> dip = above;
    dip[70] = 0.0;
    CHECK(crossover_time(steps, a, dip, 1) == 71);
    CHECK(crossover_time(steps, a, dip, 10) == steps.front());

    CHECK_THROWS_AS(crossover_time(steps, a, std::vector<double>(99, 0.0), 1),
                    std::invalid_argument);
    CHECK_FALSE(crossover_time({}, {}, {}, 1).has_value());
}

TEST_CASE("attachment kernel: exact replay on a hand-built ensemble")
{
    // horizon 3, one replication: 2 links on agent 1, met at indegrees 0 and 1
    EnsembleResult ens;
    ens.config.horizon = 3;
    ReplicationResult rep;
    rep.records = {rec(1, 1, 1, 0, 0, true), rec(2, 1, 2, 2, 1, true),
                   rec(3, 1, 3, 3, 1, true)};
    rep.edges = {{2, 1, 2}, {3, 1, 3}};
    MeetingEvent m1, m2;
    m1.step = 2;
    m1.seeker = 2;
    m1.met = 1;
    m1.met_indegree = 0;
    m1.met_type = 1;
    m1.linked = true;
    m2.step = 3;
    m2.seeker = 3;
    m2.met = 1;
    m2.met_indegree = 1;
    m2.met_type = 1;
    m2.linked = true;
    rep.meetings = {m1, m2};
    ens.replications.push_back(rep);

    KernelOptions opt;
    opt.min_events = 1;
    auto est = estimate_attachment_kernel(ens, opt);
    REQUIRE(est.qualifying.size() == 2);
    // exposure: degree 0 gets 1 + 2 + 2 agent-steps, degree 1 gets 1
    CHECK(est.qualifying[0].degree == 0);
    CHECK(est.qualifying[0].exposure == doctest::Approx(5.0));
    CHECK(est.qualifying[0].meet_prob == doctest::Approx(0.2));
    CHECK(est.qualifying[1].degree == 1);
    CHECK(est.qualifying[1].exposure == doctest::Approx(1.0));
    CHECK(est.qualifying[1].meet_prob == doctest::Approx(1.0));
    CHECK(est.meet_fit.slope == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(est.meet_fit.intercept == doctest::Approx(0.2).epsilon(1e-12));
    // every meeting linked here, so the link kernel coincides
    CHECK(est.link_fit.slope == doctest::Approx(est.meet_fit.slope));

    opt.min_events = 100;
    CHECK_THROWS_AS(estimate_attachment_kernel(ens, opt), InsufficientSamples);
}

TEST_CASE("excess_representation: max friend-share among saturated agents")
{
    EnsembleResult ens;
    ens.config.horizon = 6;
    ReplicationResult rep;
    rep.records = {rec(1, 1, 1, 3, 2, false), rec(2, 2, 2, 0, 0, true),
                   rec(3, 1, 3, 0, 0, true),  rec(4, 1, 4, 6, 2, false),
                   rec(5, 2, 5, 0, 0, true),  rec(6, 2, 6, 0, 0, true)};
    // agent 1 (type 1): friends {2 (t2), 3 (t1)} -> type-2 share 1/2
    // agent 4 (type 1): friends {5 (t2), 6 (t2)} -> type-2 share 1
    rep.edges = {{1, 2, 2}, {1, 3, 3}, {4, 5, 5}, {4, 6, 6}};
    ens.replications.push_back(rep);

    CHECK(excess_representation(ens, 1, 2, 2) == doctest::Approx(1.0));
    CHECK(excess_representation(ens, 1, 1, 2) == doctest::Approx(0.5));
    CHECK_THROWS_AS(excess_representation(ens, 1, 2, 3), InsufficientSamples);
    CHECK_THROWS_AS(excess_representation(ens, 2, 1, 1), InsufficientSamples);
}

TEST_CASE("oracle_elft: deterministic h0 value, h1 arithmetic, monotonicities")
{
    ModelParams p = h0_params();
    auto h0 = oracle_elft(p, HomophilyRegime::NonHomophilic, 1);
    CHECK(h0.deterministic);
    CHECK(h0.value == 4.0);
    CHECK(h0.alt_value == 4.0);

    // exclusive regime: 1/p + L*(after one same-type round of prior) / (gamma p + 1 - gamma)
    p.gamma = 1.0;
    auto g1 = oracle_elft(p, HomophilyRegime::Exclusive, 1);
    CHECK_FALSE(g1.deterministic);
    CHECK(g1.value == doctest::Approx(1.0 / 0.7 + 3.0 / 0.7).epsilon(1e-12));
    CHECK(g1.alt_value == doctest::Approx(1.0 / 0.7 + 4.0 / 0.7).epsilon(1e-12));

    p.gamma = 0.0;
    auto g0 = oracle_elft(p, HomophilyRegime::Exclusive, 1);
    CHECK(g0.value == doctest::Approx(1.0 / 0.7 + 3.0).epsilon(1e-12));

    // rarer type waits longer; more stranger search also waits longer
    double prev = 0.0;
    for (double share : {0.2, 0.4, 0.6, 0.8}) {
        p.type_probs = {share, 1.0 - share};
        p.gamma = 0.5;
        double v = oracle_elft(p, HomophilyRegime::Exclusive, 1).value;
        if (prev > 0.0)
            CHECK(v < prev);
        prev = v;
    }
    p.type_probs = {0.7, 0.3};
    prev = 0.0;
    for (double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        p.gamma = g;
        double v = oracle_elft(p, HomophilyRegime::Exclusive, 1).value;
        if (prev > 0.0)
            CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("oracle_growth: regimes, laws and the degenerate boundary")
{
    ModelParams p = h0_params();
    auto g0 = oracle_growth(p, HomophilyRegime::NonHomophilic, 0.0, 1);
    CHECK(g0.model == GrowthModel::Power);
    CHECK(g0.value == doctest::Approx(0.75).epsilon(1e-15)); // (L-1)/L, L = 4
    CHECK_FALSE(g0.degenerate);

    auto g1 = oracle_growth(p, HomophilyRegime::NonHomophilic, 1.0, 1);
    CHECK(g1.model == GrowthModel::Log);
    CHECK(g1.value == doctest::Approx(4.0).epsilon(1e-15));

    CHECK_THROWS_AS(oracle_growth(p, HomophilyRegime::NonHomophilic, 0.5, 1),
                    std::invalid_argument);

    // exclusive regime with type-dependent capacities
    p.alpha_decay = 0.0;
    p.link_cost_by_type = {0.25, 0.14};
    CHECK(oracle_growth(p, HomophilyRegime::Exclusive, 0.0, 1).value ==
          doctest::Approx(2.0 / 3.0));
    CHECK(oracle_growth(p, HomophilyRegime::Exclusive, 0.0, 2).value ==
          doctest::Approx(5.0 / 6.0));
    CHECK(oracle_growth(p, HomophilyRegime::Exclusive, 1.0, 1).value == 3.0);
    CHECK(oracle_growth(p, HomophilyRegime::Exclusive, 1.0, 2).value == 6.0);

    // L* = 1 gives no sublinear power law
    ModelParams q = h0_params();
    q.link_cost = 0.5;
    auto deg = oracle_growth(q, HomophilyRegime::NonHomophilic, 0.0, 1);
    CHECK(deg.degenerate);
    CHECK(deg.value == 0.0);
}

TEST_CASE("lambert W lower branch: anchors, identity residual, bisection oracle")
{
    CHECK(lambert_w_minus1(-1.0 / std::exp(1.0)) == -1.0);
    CHECK_THROWS_AS(lambert_w_minus1(-0.4), std::domain_error);
    CHECK_THROWS_AS(lambert_w_minus1(0.0), std::domain_error);
    CHECK_THROWS_AS(lambert_w_minus1(0.1), std::domain_error);

    // spot values against the bisection reference
    for (double x : {-0.367, -0.3, -0.19470019576785122, -0.1, -0.05, -0.01, -1e-4}) {
        const double w = lambert_w_minus1(x);
        CHECK(w <= -1.0);
        CHECK(w == doctest::Approx(w_minus1_bisect(x)).epsilon(1e-9));
    }
    CHECK(lambert_w_minus1(-0.1) == doctest::Approx(-3.577152063957297).epsilon(1e-12));

    // defining identity across the domain
    for (int k = 1; k <= 1000; ++k) {
        const double x = -1.0 / std::exp(1.0) + k * (0.3678 / 1001.0);
        const double w = lambert_w_minus1(x);
        CHECK(std::abs(w * std::exp(w) - x) <= 1e-12);
    }
}

TEST_CASE("oracle_crossover: frozen multiplier, linear in birth, monotone in L")
{
    // multiplier for mean gregariousness 4, via the bisection reference
    const double arg = -(1.0 / 4.0) * std::exp(-1.0 / 4.0);
    const double expected = std::pow(-4.0 * w_minus1_bisect(arg), 4.0 / 3.0);
    CHECK(oracle_crossover(1, 4.0) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(oracle_crossover(1, 4.0) == doctest::Approx(22.5458).epsilon(5e-4));
    CHECK(oracle_crossover(20, 4.0) == doctest::Approx(20.0 * expected).epsilon(1e-12));

    for (int i : {1, 5, 10, 50})
        CHECK(oracle_crossover(i, 4.0) / i ==
              doctest::Approx(oracle_crossover(1, 4.0)).epsilon(1e-12));

    double prev = 0.0;
    for (double l : {1.5, 2.0, 3.0, 4.0, 6.0, 10.0}) {
        const double m = oracle_crossover(1, l);
        CHECK(m > 1.0);
        CHECK(m > prev);
        prev = m;
    }
    CHECK_THROWS_AS(oracle_crossover(1, 1.0), std::domain_error);
    CHECK_THROWS_AS(oracle_crossover(1, 0.5), std::domain_error);
}
