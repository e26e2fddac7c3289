#pragma once

#include "levitc/levy.hpp"
#include "levitc/market.hpp"

namespace levitc {

// European call under lognormal dynamics, closed form.
double bs_price(double S0, double K, double T, double r, double sigma);

// Poisson-weighted sum of lognormal call prices for the risk-neutral Merton
// dynamics (jump risk unpriced, price drift replaced by r). Terms decay
// factorially; n_terms = 60 puts the tail far below double precision.
double merton_series_price(const ModelSpec& model, const MarketSpec& market,
                           int n_terms = 60);

// Backward finite-difference solve of the pricing equation: implicit
// drift/diffusion/discount, explicit jump integral. One config per call;
// `pide_desk_config` returns per-family resolutions tuned to finish in
// seconds while staying inside the quoted accuracy bands.
struct PideConfig {
    double dx = 1e-3;        // log-price step
    int n_time = 2000;       // time steps
    double x_halfwidth = 2.8; // grid reaches ln K +- this
    double trunc = 2.0;      // jump integral truncated at |z| <= trunc
    double epsilon_factor = 1.5; // vg: small-jump cutoff = factor * dx
};

PideConfig pide_desk_config(const ModelSpec& model);

// Price of the call at S0 by the scheme above. The model's mu is ignored:
// the solve is risk-neutral and takes its drift from market.r and the
// family's compensators. Throws grid_infeasible when the explicit part
// violates lambda_hat * dt <= 1.
double pide_price(const ModelSpec& model, const MarketSpec& market,
                  const PideConfig& config);

} // namespace levitc
