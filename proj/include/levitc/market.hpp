#pragma once

#include "levitc/common.hpp"

#include <cmath>

namespace levitc {

// Option contract, market data and the investor's preferences.
struct MarketSpec {
    double S0 = 0.0;      // spot price
    double K = 0.0;       // strike
    double T = 0.0;       // maturity in years
    double r = 0.0;       // risk-free rate, continuously compounded
    double theta_b = 0.0; // proportional cost when buying stock
    double theta_s = 0.0; // proportional cost when selling stock
    double gamma = 0.0;   // exponential risk aversion
    double y0 = 0.0;      // initial share holding

    void validate() const {
        if (!(S0 > 0.0)) throw config_error("market.S0 must be > 0");
        if (!(K > 0.0)) throw config_error("market.K must be > 0");
        if (!(T > 0.0)) throw config_error("market.T must be > 0");
        if (!std::isfinite(r)) throw config_error("market.r must be finite");
        if (!(theta_b >= 0.0)) throw config_error("market.theta_b must be >= 0");
        if (!(theta_s >= 0.0 && theta_s < 1.0))
            throw config_error("market.theta_s must be in [0, 1)");
        if (!(gamma > 0.0)) throw config_error("market.gamma must be > 0");
        if (!std::isfinite(y0)) throw config_error("market.y0 must be finite");
    }

    // discount factor over the remaining life [t, T]
    double discount(double t) const { return std::exp(-r * (T - t)); }
};

} // namespace levitc
