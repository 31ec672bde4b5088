// Exogenous model parameters and the closed-form indices derived from them:
// benefit function, type affinities, gregariousness L*, homophily index h,
// and average gregariousness.
#ifndef NETEVO_MODEL_HPP_
#define NETEVO_MODEL_HPP_

#include <vector>

namespace netevo {

// Types are 1-based: {1, .., num_types}.
using TypeId = int;

struct ModelParams {
    int num_types = 1;
    std::vector<double> type_probs;    // p_k, sums to 1
    double alpha_max = 1.0;            // same-type affinity
    double alpha_decay = 1.0;          // eta, affinity decay per unit type distance
    double benefit_scale = 1.0;        // A in v(x) = A ln(1+x)
    double link_cost = 0.2;            // c
    double gamma = 0.0;                // stranger-meeting probability
    // Optional per-type cost override (c_k); empty means link_cost for all.
    // Heterogeneous costs are how type-dependent gregariousness is configured.
    std::vector<double> link_cost_by_type;

    double cost_for(TypeId t) const
    {
        return link_cost_by_type.empty() ? link_cost
                                         : link_cost_by_type[static_cast<std::size_t>(t - 1)];
    }

    // Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

// v(x) = A ln(1+x): concave, increasing, v(0)=0. Throws on x < 0.
double benefit_value(double x, const ModelParams& params);

// alpha_max * eta^|ti - tj|; symmetric, equal for equal type distances.
double affinity(TypeId ti, TypeId tj, const ModelParams& params);

// L*: largest n such that every incremental link to `target`-type agents is
// profitable given accumulated benefit `prior_benefit`. Iterates marginals;
// concavity makes the first non-positive marginal terminal.
int gregariousness(TypeId own, TypeId target, double prior_benefit,
                   const ModelParams& params);

// Exogenous homophily index h_k in [0,1]; 0 for distance-indifferent
// affinities (eta=1), 1 when no cross-type link is ever profitable.
double homophily_index(TypeId k, const ModelParams& params);

// Mean gregariousness over the type distribution: sum_k p_k L*_k(k,0).
double mean_gregariousness(const ModelParams& params);

} // namespace netevo

#endif // NETEVO_MODEL_HPP_
