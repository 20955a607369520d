#pragma once

#include <span>
#include <vector>

namespace hunkbench {

/// G sampled outputs for one prompt.
struct RolloutGroup {
    std::vector<double> rewards;
    std::vector<double> logp_new;
    std::vector<double> logp_old;
    std::vector<double> kl_estimate;
};

struct GrpoConfig {
    double epsilon = 0.2;
    double beta = 0.0;
};

/// Throws GroupTooSmall when fewer than two rewards are given, and
/// std::invalid_argument when the per-output vectors differ in length.
void validate(const RolloutGroup& group);
void validate(const GrpoConfig& config);

/// (r_i - mean) / std with the population std; all zeros when std == 0.
std::vector<double> standardize_advantages(std::span<const double> rewards);

/// exp(logp_new - logp_old).
double prob_ratio(double logp_new, double logp_old);

/// min(rho * A, clip(rho, 1 - eps, 1 + eps) * A).
double clipped_term(double rho, double advantage, double epsilon);

/// Per-group surrogate: mean clipped term minus beta times mean KL.
double group_objective(const RolloutGroup& group, const GrpoConfig& config);

/// Mean of group_objective over all groups.
double grpo_objective(std::span<const RolloutGroup> groups, const GrpoConfig& config);

}  // namespace hunkbench
