#pragma once

#include "levitc/levy.hpp"
#include "levitc/market.hpp"

#include <cstdint>
#include <vector>

namespace levitc {

// Terminal-law sampling, exact per family (no path discretization), so the
// estimates carry statistical error only.
struct SimConfig {
    std::uint64_t n_paths = 1'000'000;
    std::uint64_t seed = 0;

    void validate() const {
        if (n_paths < 1) throw config_error("sim.n_paths must be >= 1");
    }
};

struct McResult {
    double price = 0.0;
    double std_error = 0.0;
    std::uint64_t n_paths = 0;
};

// Copy of the model with the price drift replaced by r, which makes the
// discounted price a martingale.
ModelSpec risk_neutralize(const ModelSpec& model, double r);

// Draws of S_T = S0 exp(X_T). Chunked substreams keyed off sim.seed: the
// sample is identical for a given config regardless of thread count.
std::vector<double> simulate_terminal(const ModelSpec& model, const MarketSpec& market,
                                      const SimConfig& sim);

// Discounted mean of the call payoff with its standard error.
McResult mc_call_price(const ModelSpec& model, const MarketSpec& market,
                       const SimConfig& sim);

} // namespace levitc
