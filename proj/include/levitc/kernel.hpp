#pragma once

#include "levitc/grid.hpp"

#include <array>
#include <string>
#include <vector>

namespace levitc {

struct JumpWeights {
    std::vector<double> nu_k; // index k + K1, one weight per branch offset
    double lambda_hat = 0.0;  // sum of the weights
};

// One-step law of the chain over offsets k in [-K1, K2].
struct TransitionKernel {
    std::array<double, 3> p_diff{}; // offsets {-1, 0, +1}
    std::vector<double> nu_k;
    double lambda_hat = 0.0;
    std::vector<double> p_total;
    int K1 = 0, K2 = 0;

    double p_at(int k) const { return p_total[static_cast<size_t>(k + K1)]; }
};

// Gap between the kernel's one-step moments and the generator's.
// "full" targets use the untruncated measure (the local-consistency
// statement); "domain" targets integrate over the kernel's own support,
// which isolates the discretization error from the tail truncation.
struct ConsistencyReport {
    double kernel_mean = 0.0;
    double kernel_second = 0.0;
    double mean_error = 0.0;
    double var_error = 0.0;
    double mean_constant = 0.0; // mean_error / dt^2
    double var_constant = 0.0;
    double mean_error_domain = 0.0;
    double var_error_domain = 0.0;
    double mean_constant_domain = 0.0;
    double var_constant_domain = 0.0;
    double kernel_var = 0.0; // second moment about the kernel mean
    double var_error_central = 0.0;
    double var_constant_central = 0.0;
};

JumpWeights jump_weights(const ModelSpec& model, const GridSpec& grid);
std::array<double, 3> diffusion_probs(const ModelSpec& model, const GridSpec& grid);
TransitionKernel transition_kernel(const ModelSpec& model, const GridSpec& grid);
ConsistencyReport consistency_report(const TransitionKernel& kernel, const ModelSpec& model,
                                     const GridSpec& grid);

// diagnostic dump (columns: k, offset, nu_k, p_total)
std::string kernel_csv(const TransitionKernel& kernel, const GridSpec& grid);

} // namespace levitc
