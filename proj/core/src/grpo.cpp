#include "hunkbench/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hunkbench/error.hpp"

namespace hunkbench {

void validate(const RolloutGroup& group) {
    const auto g = group.rewards.size();
    if (g < 2) throw GroupTooSmall("group has " + std::to_string(g) + " outputs, need at least 2");
    if (group.logp_new.size() != g || group.logp_old.size() != g || group.kl_estimate.size() != g)
        throw std::invalid_argument("rollout group vectors differ in length");
}

void validate(const GrpoConfig& config) {
    if (!(config.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(config.beta >= 0.0)) throw std::invalid_argument("beta must be non-negative");
}

std::vector<double> standardize_advantages(std::span<const double> rewards) {
    const auto g = rewards.size();
    if (g < 2) throw GroupTooSmall("group has " + std::to_string(g) + " rewards, need at least 2");
    // Equal rewards carry no signal. Test this directly: the rounded mean of
    // equal values can differ from them and leave a spurious nonzero std.
    std::vector<double> out(g, 0.0);
    if (std::all_of(rewards.begin(), rewards.end(), [&](double r) { return r == rewards.front(); })) return out;
    const double n = static_cast<double>(g);
    const double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / n;
    double ss = 0.0;
    for (double r : rewards) ss += (r - mean) * (r - mean);
    const double sd = std::sqrt(ss / n);

    if (sd == 0.0) return out;
    for (std::size_t i = 0; i < g; ++i) out[i] = (rewards[i] - mean) / sd;
    return out;
}

double prob_ratio(double logp_new, double logp_old) { return std::exp(logp_new - logp_old); }

double clipped_term(double rho, double advantage, double epsilon) {
    const double clipped = std::clamp(rho, 1.0 - epsilon, 1.0 + epsilon);
    return std::min(rho * advantage, clipped * advantage);
}

double group_objective(const RolloutGroup& group, const GrpoConfig& config) {
    validate(group);
    const auto adv = standardize_advantages(group.rewards);
    const double n = static_cast<double>(adv.size());
    double surrogate = 0.0;
    double kl = 0.0;
    for (std::size_t i = 0; i < adv.size(); ++i) {
        surrogate += clipped_term(prob_ratio(group.logp_new[i], group.logp_old[i]), adv[i], config.epsilon);
        kl += group.kl_estimate[i];
    }
    return surrogate / n - config.beta * (kl / n);
}

double grpo_objective(std::span<const RolloutGroup> groups, const GrpoConfig& config) {
    validate(config);
    if (groups.empty()) throw EmptyInput("no rollout groups");
    double total = 0.0;
    for (const auto& g : groups) total += group_objective(g, config);
    return total / static_cast<double>(groups.size());
}

}  // namespace hunkbench
