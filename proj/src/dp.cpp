#include "levitc/dp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace levitc {

const char* kind_name(ValueKind kind) {
    switch (kind) {
    case ValueKind::none: return "none";
    case ValueKind::writer: return "writer";
    case ValueKind::buyer: return "buyer";
    }
    return "?";
}

double cash_value(double y, double s, double theta_b, double theta_s) {
    return y <= 0.0 ? (1.0 + theta_b) * y * s : (1.0 - theta_s) * y * s;
}

ValueSurface terminal_surface(ValueKind kind, const GridSpec& grid, const MarketSpec& market) {
    ValueSurface surf;
    surf.n = grid.N;
    surf.grid = grid;
    const long nodes = surf.nodes();
    const int M = grid.Mbar();
    surf.W.resize(static_cast<size_t>(nodes) * static_cast<size_t>(M));
    for (long j = 0; j < nodes; ++j) {
        const double s = std::exp(grid.x_at(grid.N, j));
        const bool exercised = (1.0 - market.theta_s) * s > market.K;
        for (int i = 0; i < M; ++i) {
            const double y = grid.y_at(i);
            double arg;
            switch (kind) {
            case ValueKind::none:
                arg = cash_value(y, s, market.theta_b, market.theta_s);
                break;
            case ValueKind::writer:
                arg = exercised
                          ? cash_value(y - 1.0, s, market.theta_b, market.theta_s) + market.K
                          : cash_value(y, s, market.theta_b, market.theta_s);
                break;
            case ValueKind::buyer:
                arg = exercised
                          ? cash_value(y + 1.0, s, market.theta_b, market.theta_s) - market.K
                          : cash_value(y, s, market.theta_b, market.theta_s);
                break;
            default:
                arg = 0.0;
            }
            surf.W[static_cast<size_t>(j) * M + i] = -market.gamma * arg;
        }
    }
    return surf;
}

namespace {

// kernel entries with positive probability, offset-ascending
struct ActiveKernel {
    std::vector<int> off;
    std::vector<double> lnp;
};

ActiveKernel active_entries(const TransitionKernel& kernel) {
    ActiveKernel a;
    for (int k = -kernel.K1; k <= kernel.K2; ++k) {
        const double p = kernel.p_at(k);
        if (p > 0.0) {
            a.off.push_back(k);
            a.lnp.push_back(std::log(p));
        }
    }
    return a;
}

struct NodeBuffers {
    std::vector<double> maxv, acc, expect;
    explicit NodeBuffers(int m) : maxv(m), acc(m), expect(m) {}
};

// expectation + trade search for one tree node
void process_node(long j, const ValueSurface& next, const ActiveKernel& ak,
                  const GridSpec& grid, const MarketSpec& market, double inflate,
                  NodeBuffers& buf, double* out_row) {
    const int M = grid.Mbar();
    const int n = next.n - 1;
    const double* next_w = next.W.data();

    std::fill(buf.maxv.begin(), buf.maxv.end(), -std::numeric_limits<double>::infinity());
    for (size_t t = 0; t < ak.off.size(); ++t) {
        const double* row =
            next_w + static_cast<size_t>(j + ak.off[t] + grid.K1) * static_cast<size_t>(M);
        const double lp = ak.lnp[t];
        for (int i = 0; i < M; ++i) {
            const double v = lp + row[i];
            if (v > buf.maxv[i]) buf.maxv[i] = v;
        }
    }
    std::fill(buf.acc.begin(), buf.acc.end(), 0.0);
    for (size_t t = 0; t < ak.off.size(); ++t) {
        const double* row =
            next_w + static_cast<size_t>(j + ak.off[t] + grid.K1) * static_cast<size_t>(M);
        const double lp = ak.lnp[t];
        for (int i = 0; i < M; ++i) buf.acc[i] += std::exp(lp + row[i] - buf.maxv[i]);
    }
    for (int i = 0; i < M; ++i) buf.expect[i] = buf.maxv[i] + std::log(buf.acc[i]);

    const double s = std::exp(grid.x_at(n, j));
    const double buy_cost = inflate * (1.0 + market.theta_b) * s * grid.h_y;
    const double sell_gain = inflate * (1.0 - market.theta_s) * s * grid.h_y;
    for (int i = 0; i < M; ++i) {
        double best = buf.expect[i];
        for (int d = 1;; ++d) {
            bool any = false;
            if (i + d < M) {
                any = true;
                const double cand = buy_cost * d + buf.expect[i + d];
                if (cand < best) best = cand;
            }
            if (i - d >= 0) {
                any = true;
                const double cand = -sell_gain * d + buf.expect[i - d];
                if (cand < best) best = cand;
            }
            if (!any) break;
        }
        out_row[i] = best;
    }
}

template <bool Parallel>
ValueSurface step_impl(const ValueSurface& next, const TransitionKernel& kernel,
                       const GridSpec& grid, const MarketSpec& market) {
    if (next.n < 1) throw error("backward_step requires a surface at n >= 1");
    ValueSurface out;
    out.n = next.n - 1;
    out.grid = grid;
    const long nodes = out.nodes();
    const int M = grid.Mbar();
    out.W.resize(static_cast<size_t>(nodes) * static_cast<size_t>(M));

    const ActiveKernel ak = active_entries(kernel);
    const double t_n = out.n * grid.dt;
    const double inflate = market.gamma * std::exp(market.r * (market.T - t_n));

#ifdef _OPENMP
    if constexpr (Parallel) {
#pragma omp parallel
        {
            NodeBuffers buf(M);
#pragma omp for schedule(static)
            for (long j = 0; j < nodes; ++j)
                process_node(j, next, ak, grid, market, inflate, buf,
                             out.W.data() + static_cast<size_t>(j) * M);
        }
        return out;
    }
#endif
    NodeBuffers buf(M);
    for (long j = 0; j < nodes; ++j)
        process_node(j, next, ak, grid, market, inflate, buf,
                     out.W.data() + static_cast<size_t>(j) * M);
    return out;
}

void dump_surface(std::ostream& os, const ValueSurface& surf) {
    char line[160];
    const int M = surf.grid.Mbar();
    for (long j = 0; j < surf.nodes(); ++j) {
        const double x = surf.grid.x_at(surf.n, j);
        for (int i = 0; i < M; ++i) {
            std::snprintf(line, sizeof(line), "%d,%ld,%.10g,%.10g,%.10g\n", surf.n, j, x,
                          surf.grid.y_at(i), surf.at(j, i));
            os << line;
        }
    }
}

} // namespace

ValueSurface backward_step(const ValueSurface& next, const TransitionKernel& kernel,
                           const GridSpec& grid, const MarketSpec& market) {
    return step_impl<true>(next, kernel, grid, market);
}

ValueSurface backward_step_serial(const ValueSurface& next, const TransitionKernel& kernel,
                                  const GridSpec& grid, const MarketSpec& market) {
    return step_impl<false>(next, kernel, grid, market);
}

ValueSurface solve(ValueKind kind, const ModelSpec& model, const MarketSpec& market,
                   const GridSpec& grid, std::ostream* surface_dump, bool use_parallel) {
    const auto start = std::chrono::steady_clock::now();
    const auto kernel = transition_kernel(model, grid);
    ValueSurface surf = terminal_surface(kind, grid, market);
    if (surface_dump) dump_surface(*surface_dump, surf);
    while (surf.n > 0) {
        surf = use_parallel ? backward_step(surf, kernel, grid, market)
                            : backward_step_serial(surf, kernel, grid, market);
        for (double w : surf.W)
            if (!std::isfinite(w))
                throw error("value surface lost finiteness at step " + std::to_string(surf.n));
        if (surface_dump) dump_surface(*surface_dump, surf);
    }
    surf.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return surf;
}

PriceResult indifference_price(ValueKind kind, const ValueSurface& surface_0_no_option,
                               const ValueSurface& surface_0_with_option,
                               const MarketSpec& market, const GridSpec& grid) {
    if (kind == ValueKind::none)
        throw config_error("indifference_price needs kind writer or buyer");
    if (surface_0_no_option.n != 0 || surface_0_with_option.n != 0)
        throw error("indifference_price expects root surfaces (n = 0)");
    auto same_geometry = [&grid](const GridSpec& g) {
        return g.N == grid.N && g.K1 == grid.K1 && g.K2 == grid.K2 && g.K3 == grid.K3 &&
               g.K4 == grid.K4 && g.h_x == grid.h_x && g.h_y == grid.h_y && g.dt == grid.dt &&
               g.x0 == grid.x0 && g.i0 == grid.i0 && g.epsilon == grid.epsilon;
    };
    if (!same_geometry(surface_0_no_option.grid) || !same_geometry(surface_0_with_option.grid))
        throw grid_mismatch("surfaces were built on different grids");

    const double w0 = surface_0_no_option.at(0, grid.i0);
    const double wj = surface_0_with_option.at(0, grid.i0);
    const double factor = std::exp(-market.r * market.T) / market.gamma;

    PriceResult res;
    res.kind = kind;
    res.price = kind == ValueKind::writer ? factor * (wj - w0) : factor * (w0 - wj);
    res.Q0_at_y0 = w0;
    res.Qj_at_y0 = wj;
    res.N = grid.N;
    res.Lbar = grid.Lbar();
    res.Mbar = grid.Mbar();
    res.runtime = surface_0_no_option.runtime + surface_0_with_option.runtime;
    return res;
}

PriceResult price_option(ValueKind kind, const ModelSpec& model, const MarketSpec& market,
                         const GridSpec& grid) {
    const auto base = solve(ValueKind::none, model, market, grid);
    const auto with = solve(kind, model, market, grid);
    return indifference_price(kind, base, with, market, grid);
}

std::string price_record(const PriceResult& result, bool include_runtime) {
    char buf[256];
    std::string out;
    out += "kind=" + std::string(kind_name(result.kind)) + "\n";
    std::snprintf(buf, sizeof(buf), "price=%.10g\nQ0_at_y0=%.10g\nQj_at_y0=%.10g\n",
                  result.price, result.Q0_at_y0, result.Qj_at_y0);
    out += buf;
    std::snprintf(buf, sizeof(buf), "N=%d\nLbar=%d\nMbar=%d\n", result.N, result.Lbar,
                  result.Mbar);
    out += buf;
    if (include_runtime) {
        std::snprintf(buf, sizeof(buf), "runtime=%.3f\n", result.runtime);
        out += buf;
    }
    return out;
}

} // namespace levitc
