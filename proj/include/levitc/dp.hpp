#pragma once

#include "levitc/kernel.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace levitc {

enum class ValueKind { none, writer, buyer };
const char* kind_name(ValueKind kind);

// Log-domain value surface: W = ln Q over (tree node, share index) at one
// time slice. Node j at step n sits at log-price x0 + (j - n K1) h_x.
struct ValueSurface {
    int n = 0;
    GridSpec grid;
    std::vector<double> W; // node-major, W[j * Mbar + i]
    double runtime = 0.0;  // seconds spent producing this surface

    long nodes() const { return grid.nodes_at(n); }
    double at(long j, int i) const {
        return W[static_cast<size_t>(j) * static_cast<size_t>(grid.Mbar()) +
                 static_cast<size_t>(i)];
    }
};

// liquidation value of y shares at price s under proportional costs
double cash_value(double y, double s, double theta_b, double theta_s);

ValueSurface terminal_surface(ValueKind kind, const GridSpec& grid, const MarketSpec& market);

// One backward sweep: expectation (time step) then trade search (control
// step). The OpenMP build parallelizes over tree nodes; the serial variant
// is the reference the parallel one must match bit for bit.
ValueSurface backward_step(const ValueSurface& next, const TransitionKernel& kernel,
                           const GridSpec& grid, const MarketSpec& market);
ValueSurface backward_step_serial(const ValueSurface& next, const TransitionKernel& kernel,
                                  const GridSpec& grid, const MarketSpec& market);

ValueSurface solve(ValueKind kind, const ModelSpec& model, const MarketSpec& market,
                   const GridSpec& grid, std::ostream* surface_dump = nullptr,
                   bool use_parallel = true);

struct PriceResult {
    ValueKind kind = ValueKind::writer;
    double price = 0.0;
    double Q0_at_y0 = 0.0; // root log-values the price formula consumed
    double Qj_at_y0 = 0.0;
    int N = 0;
    int Lbar = 0;
    int Mbar = 0;
    double runtime = 0.0;
};

PriceResult indifference_price(ValueKind kind, const ValueSurface& surface_0_no_option,
                               const ValueSurface& surface_0_with_option,
                               const MarketSpec& market, const GridSpec& grid);

// builds the kernel, runs the paired solves and applies the price formula
PriceResult price_option(ValueKind kind, const ModelSpec& model, const MarketSpec& market,
                         const GridSpec& grid);

std::string price_record(const PriceResult& result, bool include_runtime = true);

} // namespace levitc
