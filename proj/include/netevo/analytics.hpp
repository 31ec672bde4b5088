// Estimators for the quantities the closed-form results speak about, the
// closed-form oracles themselves, and the statistical tests that compare the
// two: link-formation-time statistics, stochastic-dominance verdicts,
// popularity growth fits, attachment-kernel measurement, and the Lambert
// W lower branch used by the crossover prediction.
#ifndef NETEVO_ANALYTICS_HPP_
#define NETEVO_ANALYTICS_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include "netevo/model.hpp"
#include "netevo/sim.hpp"

namespace netevo {

struct InsufficientSamples : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MeanCI {
    double mean = 0.0;
    double ci_half = 0.0; // 95% normal-approximation half width
    int n = 0;
};

struct LftDistribution {
    std::vector<int> support; // sorted
    std::vector<double> pmf;  // sums to 1
    int sample_count = 0;
};

enum class FosdVerdict { ADominates, BDominates, Neither };

struct FosdResult {
    FosdVerdict verdict = FosdVerdict::Neither;
    double max_gap_a_over_b = 0.0; // max_x CDF_A(x) - CDF_B(x)
    double max_gap_b_over_a = 0.0;
    double epsilon = 0.0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double slope_se = 0.0;
    int n = 0;
};

enum class GrowthModel { Power, Log };

struct GrowthFit {
    GrowthModel model = GrowthModel::Power;
    double value = 0.0; // exponent b for Power, scale for Log
    double intercept = 0.0;
    double r2 = 0.0;
    int n = 0;
};

struct KernelBin {
    int degree = 0;
    long long meetings = 0;
    long long links = 0;
    double exposure = 0.0; // agent-steps spent at this degree
    double meet_prob = 0.0;
    double link_prob = 0.0;
};

struct KernelEstimate {
    std::vector<KernelBin> bins;       // all observed degrees
    std::vector<KernelBin> qualifying; // bins meeting the event threshold
    LinearFit meet_fit;                // meet_prob vs degree over qualifying bins
    LinearFit link_fit;
};

struct KernelOptions {
    long long min_events = 50; // per-bin meeting count required for the fit
    TypeId seeker_type = 0;    // 0 = any
    TypeId target_type = 0;    // 0 = any
};

// ---- sample extraction -------------------------------------------------

// Uncensored LFT samples (agents that saturated before the horizon and
// formed at least one link), optionally restricted by type and birth window.
std::vector<int> collect_lft_samples(const EnsembleResult& ensemble,
                                     TypeId type = 0, int min_birth = 0,
                                     int max_birth = 0);

// Ensemble-mean indegree trajectory of the agent born at `birth`, on the step
// grid birth..horizon. With `required_type` nonzero only replications where
// that agent realized the given type contribute.
struct MeanTrajectory {
    int birth = 0;
    std::vector<int> steps;
    std::vector<double> mean_indegree;
    int n_replications = 0;
};
MeanTrajectory mean_trajectory(const EnsembleResult& ensemble, int birth,
                               TypeId required_type = 0);

// ---- estimators --------------------------------------------------------

MeanCI estimate_elft(const std::vector<int>& lft_samples); // needs >= 30

LftDistribution lft_pmf(const std::vector<int>& lft_samples); // needs >= 30

// Two-sided DKW-style tolerance at confidence 95% for comparing two
// empirical CDFs built from nA and nB samples.
double dkw_epsilon(int n_a, int n_b);

// A dominates B iff CDF_A <= CDF_B + eps everywhere (A stochastically
// larger). Identical distributions come out Neither.
FosdResult fosd_test(const LftDistribution& a, const LftDistribution& b,
                     std::optional<double> epsilon = std::nullopt);

// Mean first-hitting time of indegree level d (per-replication trajectories
// of one tracked agent). Censored trajectories are dropped; needs >= 30 hits.
MeanCI estimate_epat(const EnsembleResult& ensemble, int birth, int d,
                     TypeId required_type = 0);

// OLS fit of a growth law on (step, mean indegree) points. Power regresses
// ln y on ln t; Log regresses y on ln t. Non-positive y points are dropped
// for the power model; fewer than 10 surviving points is an error.
GrowthFit fit_growth(const std::vector<int>& steps, const std::vector<double>& values,
                     GrowthModel model);

// Log-spaced subset of a mean trajectory restricted to its tail
// (t >= tail_factor * birth), for growth fitting.
void growth_points(const MeanTrajectory& traj, int tail_factor, int max_points,
                   std::vector<int>& steps_out, std::vector<double>& values_out);

// Smallest sampled step after which B exceeds A at every later sampled step;
// absent when no such step exists before the grid ends. Both trajectories
// are smoothed with a trailing mean of `window` samples first.
std::optional<int> crossover_time(const std::vector<int>& steps,
                                  const std::vector<double>& mean_a,
                                  const std::vector<double>& mean_b, int window);

// Risk-set-normalized meeting/link kernel from the ensemble's meeting logs.
// Exposure at degree d counts agent-steps spent at start-of-step indegree d.
KernelEstimate estimate_attachment_kernel(const EnsembleResult& ensemble,
                                          const KernelOptions& options = {});

// Empirical surrogate for the maximum excess representation r_k(m): max over
// saturated type-k agents of the type-m share of their friend set.
double excess_representation(const EnsembleResult& ensemble, TypeId k, TypeId m,
                             int min_samples = 30);

// ---- closed-form oracles -------------------------------------------------

enum class HomophilyRegime { NonHomophilic, Exclusive }; // h = 0 / h = 1

struct ElftPrediction {
    double value = 0.0;     // numerator L*(theta, alpha_theta_theta)
    double alt_value = 0.0; // alternative reading with numerator L*(theta, 0)
    bool deterministic = false;
};

ElftPrediction oracle_elft(const ModelParams& params, HomophilyRegime regime,
                           TypeId type);

struct GrowthPrediction {
    GrowthModel model = GrowthModel::Power;
    double value = 0.0; // exponent or log scale
    bool degenerate = false;
};

// Closed growth laws exist only at gamma exactly 0 or 1.
GrowthPrediction oracle_growth(const ModelParams& params, HomophilyRegime regime,
                               double gamma, TypeId type);

// Lower real branch of the Lambert W function on [-1/e, 0); residual of the
// defining identity is driven below 1e-12.
double lambert_w_minus1(double x);

// Predicted popularity crossover step between the gamma=1 and gamma=0
// trajectories of the agent born at `birth`, for mean gregariousness > 1.
double oracle_crossover(int birth, double mean_greg);

} // namespace netevo

#endif // NETEVO_ANALYTICS_HPP_
