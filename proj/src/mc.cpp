#include "levitc/mc.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace levitc {

namespace {

constexpr std::uint64_t chunk_size = 65536;

// distinct, well-mixed stream per (seed, chunk) pair
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

struct TerminalSampler {
    ModelSpec model;
    double T;
    double drift = 0.0; // deterministic part of X_T

    TerminalSampler(const ModelSpec& m, double horizon) : model(m), T(horizon) {
        switch (model.family) {
        case Family::diffusion:
            drift = (model.mu - 0.5 * model.sigma * model.sigma) * T;
            break;
        case Family::merton:
            drift = (model.mu - 0.5 * model.sigma * model.sigma - merton_compensator(model)) * T;
            break;
        case Family::vg:
            drift = (model.mu - vg_omega(model)) * T;
            break;
        }
    }

    double x_T(std::mt19937_64& rng) const {
        std::normal_distribution<double> norm;
        switch (model.family) {
        case Family::diffusion:
            return drift + model.sigma * std::sqrt(T) * norm(rng);
        case Family::merton: {
            double x = drift + model.sigma * std::sqrt(T) * norm(rng);
            std::poisson_distribution<int> pois(model.merton_lambda * T);
            const int jumps = pois(rng);
            for (int i = 0; i < jumps; ++i)
                x += model.merton_alpha + model.merton_xi * norm(rng);
            return x;
        }
        case Family::vg: {
            // gamma-subordinated Brownian motion: clock ~ Gamma(T/kappa, kappa)
            std::gamma_distribution<double> gam(T / model.vg_kappa, model.vg_kappa);
            const double g = gam(rng);
            return drift + model.vg_theta * g + model.vg_sigma_bar * std::sqrt(g) * norm(rng);
        }
        }
        return drift;
    }
};

struct ChunkStats {
    double sum = 0.0;
    double sum2 = 0.0;
};

} // namespace

ModelSpec risk_neutralize(const ModelSpec& model, double r) {
    ModelSpec rn = model;
    rn.mu = r;
    return rn;
}

std::vector<double> simulate_terminal(const ModelSpec& model, const MarketSpec& market,
                                      const SimConfig& sim) {
    model.validate();
    market.validate();
    sim.validate();
    const TerminalSampler sampler(model, market.T);
    const auto n_chunks = static_cast<long>((sim.n_paths + chunk_size - 1) / chunk_size);
    std::vector<double> out(sim.n_paths);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long c = 0; c < n_chunks; ++c) {
        std::mt19937_64 rng(splitmix64(sim.seed ^ static_cast<std::uint64_t>(c + 1)));
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk_size;
        const std::uint64_t hi = std::min(lo + chunk_size, sim.n_paths);
        for (std::uint64_t i = lo; i < hi; ++i)
            out[i] = market.S0 * std::exp(sampler.x_T(rng));
    }
    return out;
}

McResult mc_call_price(const ModelSpec& model, const MarketSpec& market, const SimConfig& sim) {
    model.validate();
    market.validate();
    sim.validate();
    const TerminalSampler sampler(model, market.T);
    const auto n_chunks = static_cast<long>((sim.n_paths + chunk_size - 1) / chunk_size);

    // chunks run in any order; the final reduction is serial in chunk index,
    // so the estimate is bit-identical for every thread count
    std::vector<ChunkStats> partial(static_cast<size_t>(n_chunks));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long c = 0; c < n_chunks; ++c) {
        std::mt19937_64 rng(splitmix64(sim.seed ^ static_cast<std::uint64_t>(c + 1)));
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk_size;
        const std::uint64_t hi = std::min(lo + chunk_size, sim.n_paths);
        ChunkStats st;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const double s = market.S0 * std::exp(sampler.x_T(rng));
            const double pay = s > market.K ? s - market.K : 0.0;
            st.sum += pay;
            st.sum2 += pay * pay;
        }
        partial[static_cast<size_t>(c)] = st;
    }

    double sum = 0.0, sum2 = 0.0;
    for (const ChunkStats& st : partial) {
        sum += st.sum;
        sum2 += st.sum2;
    }
    const double n = static_cast<double>(sim.n_paths);
    const double mean = sum / n;
    const double var = std::max(sum2 / n - mean * mean, 0.0);
    const double disc = market.discount(0.0);
    McResult res;
    res.price = disc * mean;
    res.std_error = disc * std::sqrt(var / n);
    res.n_paths = sim.n_paths;
    return res;
}

} // namespace levitc
