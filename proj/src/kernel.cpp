#include "levitc/kernel.hpp"
#include "levitc/quadrature.hpp"
#include "levitc/common.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace levitc {

namespace {

// integral of the jump density over [lo, hi] minus the (-eps, eps) hole
double cell_weight(const ModelSpec& model, const GridSpec& grid, double lo, double hi) {
    auto piece = [&](double a, double b) {
        if (b - a <= 0.0) return 0.0;
        return simpson_fixed([&](double z) { return levy_density(model, z); }, a, b, 33);
    };
    if (grid.epsilon > 0.0) {
        return piece(lo, std::min(hi, -grid.epsilon)) + piece(std::max(lo, grid.epsilon), hi);
    }
    return piece(lo, hi);
}

} // namespace

JumpWeights jump_weights(const ModelSpec& model, const GridSpec& grid) {
    JumpWeights w;
    w.nu_k.assign(static_cast<size_t>(grid.Lbar()), 0.0);
    if (model.family == Family::diffusion ||
        (model.family == Family::merton && model.merton_lambda == 0.0))
        return w;
    for (int k = -grid.K1; k <= grid.K2; ++k) {
        const double lo = std::max((k - 0.5) * grid.h_x, -grid.B1);
        const double hi = std::min((k + 0.5) * grid.h_x, grid.B2);
        w.nu_k[static_cast<size_t>(k + grid.K1)] = cell_weight(model, grid, lo, hi);
    }
    w.lambda_hat = std::accumulate(w.nu_k.begin(), w.nu_k.end(), 0.0);
    return w;
}

std::array<double, 3> diffusion_probs(const ModelSpec&, const GridSpec& grid) {
    const double drift = grid.a_hat * grid.dt / (2.0 * grid.h_x);
    const double diff = grid.sigma_d2 * grid.dt / (2.0 * grid.h_x * grid.h_x);
    std::array<double, 3> p{-drift + diff, 1.0 - 2.0 * diff, drift + diff};
    for (double& v : p) {
        if (v < 0.0) {
            if (v < -1e-12)
                throw grid_infeasible("positivity: negative diffusion probability " +
                                      std::to_string(v));
            v = 0.0; // rounding residue of 1 - sigma_d^2 dt / h_x^2
        }
    }
    return p;
}

TransitionKernel transition_kernel(const ModelSpec& model, const GridSpec& grid) {
    TransitionKernel ker;
    ker.K1 = grid.K1;
    ker.K2 = grid.K2;
    ker.p_diff = diffusion_probs(model, grid);
    auto jw = jump_weights(model, grid);
    ker.nu_k = std::move(jw.nu_k);
    ker.lambda_hat = jw.lambda_hat;
    if (ker.lambda_hat * grid.dt > 1.0)
        throw grid_infeasible("stability: lambda_hat dt = " +
                              std::to_string(ker.lambda_hat * grid.dt) + " exceeds 1");

    const double keep = 1.0 - ker.lambda_hat * grid.dt;
    ker.p_total.assign(ker.nu_k.size(), 0.0);
    for (int k = -ker.K1; k <= ker.K2; ++k) {
        const size_t idx = static_cast<size_t>(k + ker.K1);
        double p = grid.dt * ker.nu_k[idx];
        if (std::abs(k) <= 1) p += keep * ker.p_diff[static_cast<size_t>(k + 1)];
        ker.p_total[idx] = p;
    }
    // row sums to 1 analytically; scrub the quadrature rounding
    const double sum = std::accumulate(ker.p_total.begin(), ker.p_total.end(), 0.0);
    if (std::fabs(sum - 1.0) > 1e-10)
        throw error("kernel row sum " + std::to_string(sum) + " is off by more than 1e-10");
    for (double& p : ker.p_total) p /= sum;
    return ker;
}

ConsistencyReport consistency_report(const TransitionKernel& kernel, const ModelSpec& model,
                                     const GridSpec& grid) {
    ConsistencyReport rep;
    for (int k = -kernel.K1; k <= kernel.K2; ++k) {
        const double dx = k * grid.h_x;
        const double p = kernel.p_at(k);
        rep.kernel_mean += dx * p;
        rep.kernel_second += dx * dx * p;
    }

    // generator moments of the untruncated dynamics
    double jump_mean = 0.0, jump_second = 0.0;
    switch (model.family) {
    case Family::diffusion:
        break;
    case Family::merton:
        jump_mean = model.merton_lambda * model.merton_alpha;
        jump_second = model.merton_lambda * (model.merton_xi * model.merton_xi +
                                             model.merton_alpha * model.merton_alpha);
        break;
    case Family::vg:
        jump_mean = grid.sjp.lambda_eps * grid.sjp.theta_eps;
        jump_second = grid.sjp.sigma_j2;
        break;
    }
    rep.mean_error = std::fabs(rep.kernel_mean - (grid.a_hat + jump_mean) * grid.dt);
    rep.var_error =
        std::fabs(rep.kernel_second - (grid.sigma_d2 + jump_second) * grid.dt);

    // same check against the measure restricted to the kernel's support
    double dom_mean = 0.0, dom_second = 0.0;
    if (model.family != Family::diffusion &&
        !(model.family == Family::merton && model.merton_lambda == 0.0)) {
        auto moment = [&](int pow) {
            auto f = [&](double z) { return std::pow(z, pow) * levy_density(model, z); };
            if (grid.epsilon > 0.0)
                return adaptive_simpson(f, -grid.B1, -grid.epsilon, 1e-13) +
                       adaptive_simpson(f, grid.epsilon, grid.B2, 1e-13);
            return adaptive_simpson(f, -grid.B1, 0.0, 1e-13) +
                   adaptive_simpson(f, 0.0, grid.B2, 1e-13);
        };
        dom_mean = moment(1);
        dom_second = moment(2);
    }
    rep.mean_error_domain = std::fabs(rep.kernel_mean - (grid.a_hat + dom_mean) * grid.dt);
    rep.var_error_domain =
        std::fabs(rep.kernel_second - (grid.sigma_d2 + dom_second) * grid.dt);

    // centered version: for pure diffusion the raw moments match exactly, so
    // the mean^2 term is the whole one-step variance gap
    rep.kernel_var = rep.kernel_second - rep.kernel_mean * rep.kernel_mean;
    rep.var_error_central =
        std::fabs(rep.kernel_var - (grid.sigma_d2 + dom_second) * grid.dt);

    const double dt2 = grid.dt * grid.dt;
    rep.mean_constant = rep.mean_error / dt2;
    rep.var_constant = rep.var_error / dt2;
    rep.mean_constant_domain = rep.mean_error_domain / dt2;
    rep.var_constant_domain = rep.var_error_domain / dt2;
    rep.var_constant_central = rep.var_error_central / dt2;
    return rep;
}

std::string kernel_csv(const TransitionKernel& kernel, const GridSpec& grid) {
    std::string out = "# levitc " + std::string(version_string) +
                      " kernel family=" + family_name(grid.family) +
                      " N=" + std::to_string(grid.N) + " Lbar=" + std::to_string(grid.Lbar()) +
                      "\nk,offset,nu_k,p_total\n";
    char line[128];
    for (int k = -kernel.K1; k <= kernel.K2; ++k) {
        const size_t idx = static_cast<size_t>(k + kernel.K1);
        std::snprintf(line, sizeof(line), "%d,%.10g,%.10g,%.10g\n", k, k * grid.h_x,
                      kernel.nu_k[idx], kernel.p_total[idx]);
        out += line;
    }
    return out;
}

} // namespace levitc
