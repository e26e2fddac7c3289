#include "levitc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace levitc {

namespace {

int smallest_odd_at_least(double x) {
    int n = static_cast<int>(std::ceil(x));
    if (n % 2 == 0) ++n;
    return std::max(n, 3);
}

} // namespace

GridSpec build_grid(const ModelSpec& model, const MarketSpec& market, int N,
                    const GridSizing& sizing) {
    model.validate();
    market.validate();
    if (N < 2) throw config_error("grid.N must be >= 2");
    if (!moment_check(model).finite_second_moment)
        throw model_error("second exponential moment of the jump measure is infinite");

    GridSpec g;
    g.N = N;
    g.T = market.T;
    g.dt = market.T / N;
    g.x0 = std::log(market.S0);
    g.family = model.family;

    const double sigma_x = process_std(model);
    g.h_x = sigma_x * std::sqrt(g.dt);
    g.h_y = g.h_x;

    // share grid
    const int mbar = sizing.mbar > 0 ? sizing.mbar : N;
    if (mbar < 1) throw config_error("grid.Mbar must be >= 1");
    if (!(sizing.y_span >= 0.0 && sizing.y_span <= 1.0))
        throw config_error("grid.y_span must be in [0, 1]");
    g.K3 = std::clamp(static_cast<int>(std::lround(sizing.y_span * (mbar - 1))), 0, mbar - 1);
    g.K4 = mbar - 1 - g.K3;
    g.y_center = sizing.y_center;
    g.i0 = g.K3 + static_cast<int>(std::lround((market.y0 - sizing.y_center) / g.h_y));
    if (g.i0 < 0 || g.i0 >= mbar)
        throw config_error("market.y0 falls outside the share grid");

    // small-jump split and diffusion-part coefficients
    switch (model.family) {
    case Family::diffusion:
        g.sigma_d2 = model.sigma * model.sigma;
        g.a_hat = model.mu - 0.5 * g.sigma_d2;
        g.activity_bound = 0.0;
        break;
    case Family::merton:
        g.sigma_d2 = model.sigma * model.sigma;
        g.a_hat = model.mu - 0.5 * g.sigma_d2 - merton_compensator(model);
        g.activity_bound = model.merton_lambda;
        break;
    case Family::vg:
        g.epsilon = sizing.epsilon > 0.0 ? sizing.epsilon : 1.5 * g.h_x;
        g.sjp = small_jump_params(model, g.epsilon);
        g.sigma_d2 = g.sjp.sigma_eps2;
        g.a_hat = model.mu - 0.5 * g.sigma_d2 - g.sjp.omega_eps;
        g.activity_bound = g.sjp.lambda_eps;
        break;
    }

    // branch count
    int lbar = 3;
    if (sizing.lbar > 0) {
        lbar = sizing.lbar;
        if (lbar < 3 || lbar % 2 == 0) throw config_error("grid.Lbar must be odd and >= 3");
    } else {
        switch (model.family) {
        case Family::diffusion:
            lbar = 3;
            break;
        case Family::merton:
            lbar = model.merton_lambda == 0.0
                       ? 3
                       : smallest_odd_at_least(
                             (6.0 * model.merton_xi + 2.0 * std::fabs(model.merton_alpha)) / g.h_x);
            break;
        case Family::vg:
            lbar = std::max(5, smallest_odd_at_least(std::sqrt(g.sjp.sigma_j2) / sigma_x *
                                                     std::sqrt(static_cast<double>(N))));
            break;
        }
    }
    g.K1 = g.K2 = (lbar - 1) / 2;
    g.B1 = (g.K1 + 0.5) * g.h_x;
    g.B2 = (g.K2 + 0.5) * g.h_x;

    // feasibility of the explicit scheme
    if (g.dt * g.activity_bound > 1.0)
        throw grid_infeasible("stability: dt * activity = " +
                              std::to_string(g.dt * g.activity_bound) + " exceeds 1");
    if (g.sigma_d2 * g.dt > g.h_x * g.h_x * (1.0 + 1e-12))
        throw grid_infeasible("stability: sigma_d^2 dt exceeds h_x^2");
    if (g.sigma_d2 < g.h_x * std::fabs(g.a_hat))
        throw grid_infeasible("positivity: sigma_d^2 = " + std::to_string(g.sigma_d2) +
                              " below h_x |a_hat| = " +
                              std::to_string(g.h_x * std::fabs(g.a_hat)));
    return g;
}

} // namespace levitc
