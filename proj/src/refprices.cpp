#include "levitc/refprices.hpp"
#include "levitc/kernel.hpp"
#include "levitc/common.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace levitc {

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace

double bs_price(double S0, double K, double T, double r, double sigma) {
    if (!(S0 > 0.0) || !(K > 0.0))
        throw config_error("bs_price: spot and strike must be positive");
    if (T < 0.0 || sigma < 0.0)
        throw config_error("bs_price: maturity and volatility must be nonnegative");
    if (T == 0.0) return std::max(S0 - K, 0.0);
    if (sigma == 0.0) return std::max(S0 - K * std::exp(-r * T), 0.0);
    const double sq = sigma * std::sqrt(T);
    const double d1 = (std::log(S0 / K) + (r + 0.5 * sigma * sigma) * T) / sq;
    const double d2 = d1 - sq;
    return S0 * norm_cdf(d1) - K * std::exp(-r * T) * norm_cdf(d2);
}

double merton_series_price(const ModelSpec& model, const MarketSpec& market, int n_terms) {
    model.validate();
    market.validate();
    if (model.family != Family::merton)
        throw config_error("merton_series_price: model family must be merton");
    if (n_terms < 1)
        throw config_error("merton_series_price: n_terms must be >= 1");
    const double lambda = model.merton_lambda;
    if (lambda == 0.0)
        return bs_price(market.S0, market.K, market.T, market.r, model.sigma);

    // jump risk left unpriced: jump law unchanged, price drift set to r, the
    // compensator lambda*mbar pulled out of the per-term rate
    const double gexp = model.merton_alpha + 0.5 * model.merton_xi * model.merton_xi;
    const double mbar = std::exp(gexp) - 1.0;
    const double lambda_p = lambda * (1.0 + mbar);
    const double T = market.T;

    double weight = std::exp(-lambda_p * T);
    double sum = 0.0;
    for (int n = 0; n < n_terms; ++n) {
        const double sigma_n =
            std::sqrt(model.sigma * model.sigma + n * model.merton_xi * model.merton_xi / T);
        const double r_n = market.r - lambda * mbar + n * gexp / T;
        sum += weight * bs_price(market.S0, market.K, T, r_n, sigma_n);
        weight *= lambda_p * T / (n + 1);
    }
    return sum;
}

PideConfig pide_desk_config(const ModelSpec& model) {
    PideConfig cfg;
    switch (model.family) {
    case Family::diffusion:
        cfg.dx = 5e-4;
        cfg.n_time = 2000;
        cfg.x_halfwidth = 1.6;
        cfg.trunc = 0.0;
        break;
    case Family::merton:
        cfg.dx = 1e-3;
        cfg.n_time = 2000;
        cfg.x_halfwidth = 2.8;
        cfg.trunc = 2.0;
        break;
    case Family::vg:
        cfg.dx = 0.0033;
        cfg.n_time = 3200;
        cfg.x_halfwidth = 2.6;
        cfg.trunc = 0.5;
        break;
    }
    return cfg;
}

double pide_price(const ModelSpec& model, const MarketSpec& market, const PideConfig& cfg) {
    model.validate();
    market.validate();
    if (!(cfg.dx > 0.0) || cfg.n_time < 1 || !(cfg.x_halfwidth > 0.0))
        throw config_error("pide: dx, n_time and x_halfwidth must be positive");

    const double dx = cfg.dx;
    const double lnK = std::log(market.K);
    const double lnS = std::log(market.S0);
    if (std::fabs(lnS - lnK) > 0.5 * cfg.x_halfwidth)
        throw config_error("pide: spot too far from the strike for this grid");

    // nodes x_i = lnK + (i - half) dx; the strike kink sits on a node
    const int half = static_cast<int>(std::ceil(cfg.x_halfwidth / dx));
    const int n = 2 * half + 1;

    // jump part: cell weights on the same dx lattice, truncated at |z| <= trunc
    const bool jumps = (model.family == Family::merton && model.merton_lambda > 0.0) ||
                       model.family == Family::vg;
    std::vector<double> nu;
    int KJ = 0;
    double sigma_d2, m_hat, lambda_hat = 0.0;
    if (jumps) {
        if (!(cfg.trunc > 0.0))
            throw config_error("pide: trunc must be positive for jump families");
        KJ = static_cast<int>(std::ceil(cfg.trunc / dx));
        GridSpec jg;
        jg.h_x = dx;
        jg.K1 = jg.K2 = KJ;
        jg.B1 = jg.B2 = (KJ + 0.5) * dx;
        jg.family = model.family;
        if (model.family == Family::vg) jg.epsilon = cfg.epsilon_factor * dx;
        const JumpWeights jw = jump_weights(model, jg);
        nu = jw.nu_k;
        lambda_hat = jw.lambda_hat;
        if (model.family == Family::vg) {
            const SmallJumpParams sjp = small_jump_params(model, jg.epsilon);
            sigma_d2 = sjp.sigma_eps2;
            m_hat = sjp.omega_eps;
        } else {
            sigma_d2 = model.sigma * model.sigma;
            m_hat = merton_compensator(model);
        }
    } else {
        sigma_d2 = model.sigma * model.sigma;
        m_hat = 0.0;
    }

    const double T = market.T;
    const double r = market.r;
    const double dtp = T / cfg.n_time;
    if (lambda_hat * dtp > 1.0)
        throw grid_infeasible("pide explicit part: lambda_hat dt = " +
                              std::to_string(lambda_hat * dtp) + " exceeds 1");

    const double b = r - 0.5 * sigma_d2 - m_hat;
    const double diff = 0.5 * sigma_d2 / (dx * dx);
    const double adv = 0.5 * b / dx;
    const double sub = -dtp * (diff - adv);
    const double diag = 1.0 + dtp * (r + lambda_hat + 2.0 * diff);
    const double sup = -dtp * (diff + adv);

    auto x_at = [&](int i) { return lnK + (i - half) * dx; };

    std::vector<double> C(n);
    for (int i = 0; i < n; ++i) C[i] = std::max(std::exp(x_at(i)) - market.K, 0.0);

    // padded copy for the explicit integral: zero below the grid, the
    // discounted-forward lateral value above it
    std::vector<double> pad(n + 2 * KJ), rhs(n), scratch(n);
    for (int m = 1; m <= cfg.n_time; ++m) {
        const double tau_old = (m - 1) * dtp;
        const double tau_new = m * dtp;

        if (jumps) {
            std::fill(pad.begin(), pad.begin() + KJ, 0.0);
            std::copy(C.begin(), C.end(), pad.begin() + KJ);
            const double disc = market.K * std::exp(-r * tau_old);
            for (int q = 0; q < KJ; ++q)
                pad[static_cast<size_t>(n + KJ + q)] = std::exp(x_at(n + q)) - disc;
            for (int i = 0; i < n; ++i) {
                const double* c = pad.data() + i;
                double acc = 0.0;
                for (int k = 0; k <= 2 * KJ; ++k) acc += nu[static_cast<size_t>(k)] * c[k];
                rhs[i] = C[static_cast<size_t>(i)] + dtp * acc;
            }
        } else {
            std::copy(C.begin(), C.end(), rhs.begin());
        }

        // Thomas solve with Dirichlet ends
        C[0] = 0.0;
        C[static_cast<size_t>(n - 1)] = std::exp(x_at(n - 1)) - market.K * std::exp(-r * tau_new);
        rhs[1] -= sub * C[0];
        rhs[static_cast<size_t>(n - 2)] -= sup * C[static_cast<size_t>(n - 1)];
        scratch[1] = sup / diag;
        rhs[1] /= diag;
        for (int i = 2; i <= n - 2; ++i) {
            const double w = diag - sub * scratch[static_cast<size_t>(i - 1)];
            scratch[static_cast<size_t>(i)] = sup / w;
            rhs[static_cast<size_t>(i)] =
                (rhs[static_cast<size_t>(i)] - sub * rhs[static_cast<size_t>(i - 1)]) / w;
        }
        C[static_cast<size_t>(n - 2)] = rhs[static_cast<size_t>(n - 2)];
        for (int i = n - 3; i >= 1; --i)
            C[static_cast<size_t>(i)] = rhs[static_cast<size_t>(i)] -
                                        scratch[static_cast<size_t>(i + 1)] *
                                            C[static_cast<size_t>(i + 1)];
    }

    // linear interpolation at the spot (exact when ATM)
    const double pos = (lnS - lnK) / dx + half;
    const int i0 = std::clamp(static_cast<int>(std::floor(pos)), 0, n - 2);
    const double w = pos - i0;
    return (1.0 - w) * C[static_cast<size_t>(i0)] + w * C[static_cast<size_t>(i0 + 1)];
}

} // namespace levitc
