#include "netevo/model.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace netevo {

namespace {

void check_type(TypeId t, const ModelParams& params)
{
    if (t < 1 || t > params.num_types)
        throw std::out_of_range("type id " + std::to_string(t) + " outside {1.." +
                                std::to_string(params.num_types) + "}");
}

} // namespace

void ModelParams::validate() const
{
    if (num_types < 1)
        throw std::invalid_argument("num_types must be positive");
    if (static_cast<int>(type_probs.size()) != num_types)
        throw std::invalid_argument("type_probs length does not match num_types");
    double sum = 0.0;
    for (double p : type_probs) {
        if (p <= 0.0)
            throw std::invalid_argument("every type probability must be > 0");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("type_probs must sum to 1 within 1e-12");
    if (alpha_max <= 0.0)
        throw std::invalid_argument("alpha_max must be positive");
    if (alpha_decay < 0.0 || alpha_decay > 1.0)
        throw std::invalid_argument("alpha_decay must lie in [0,1]");
    if (benefit_scale <= 0.0)
        throw std::invalid_argument("benefit_scale must be positive");
    if (link_cost <= 0.0)
        throw std::invalid_argument("link_cost must be positive");
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("gamma must lie in [0,1]");
    if (!link_cost_by_type.empty()) {
        if (static_cast<int>(link_cost_by_type.size()) != num_types)
            throw std::invalid_argument("per-type cost list length does not match num_types");
        for (double c : link_cost_by_type)
            if (c <= 0.0)
                throw std::invalid_argument("every per-type cost must be positive");
    }
}

double benefit_value(double x, const ModelParams& params)
{
    if (x < 0.0)
        throw std::domain_error("benefit_value: negative argument");
    return params.benefit_scale * std::log1p(x);
}

double affinity(TypeId ti, TypeId tj, const ModelParams& params)
{
    check_type(ti, params);
    check_type(tj, params);
    int d = std::abs(ti - tj);
    double decay = 1.0;
    for (int k = 0; k < d; ++k)
        decay *= params.alpha_decay;
    return params.alpha_max * decay;
}

int gregariousness(TypeId own, TypeId target, double prior_benefit,
                   const ModelParams& params)
{
    if (params.cost_for(own) <= 0.0)
        throw std::invalid_argument("unbounded gregariousness: link cost must be positive");
    if (prior_benefit < 0.0)
        throw std::domain_error("gregariousness: negative prior benefit");
    const double a = affinity(own, target, params);
    const double c = params.cost_for(own);
    if (a <= 0.0)
        return 0;
    int n = 0;
    while (benefit_value(prior_benefit + (n + 1) * a, params) -
               benefit_value(prior_benefit + n * a, params) >
           c)
        ++n;
    return n;
}

double homophily_index(TypeId k, const ModelParams& params)
{
    check_type(k, params);
    if (params.num_types == 1)
        return 0.0; // no cross-type links to be intolerant of

    // h_k = sum_{m != k} p_m (1 - ratio_m) / sum_{m != k} p_m, where
    // ratio_m = L*(m,0) / (L*(m,0) + L*(k, alpha_km L*(m,0))). This is the
    // closed form rearranged so the extreme cases evaluate exactly: every
    // ratio 1 gives h = 0 and every ratio 0 gives h = 1.
    double num = 0.0, den = 0.0;
    for (TypeId m = 1; m <= params.num_types; ++m) {
        if (m == k)
            continue;
        const double pm = params.type_probs[static_cast<std::size_t>(m - 1)];
        const int cross = gregariousness(k, m, 0.0, params);
        const int self_after =
            gregariousness(k, k, affinity(k, m, params) * cross, params);
        const double ratio =
            (cross + self_after == 0)
                ? 0.0 // no links of either kind possible
                : static_cast<double>(cross) / static_cast<double>(cross + self_after);
        num += pm * (1.0 - ratio);
        den += pm;
    }
    double h = num / den;
    if (h < 0.0 || h > 1.0) {
        if (h > -1e-9 && h < 1.0 + 1e-9)
            return h < 0.5 ? 0.0 : 1.0;
        throw std::domain_error("homophily index outside [0,1]");
    }
    return h;
}

double mean_gregariousness(const ModelParams& params)
{
    double sum = 0.0;
    for (TypeId k = 1; k <= params.num_types; ++k)
        sum += params.type_probs[static_cast<std::size_t>(k - 1)] *
               gregariousness(k, k, 0.0, params);
    return sum;
}

} // namespace netevo
