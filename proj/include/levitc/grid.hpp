#pragma once

#include "levitc/levy.hpp"
#include "levitc/market.hpp"

namespace levitc {

// Sizing overrides for build_grid. Zero means "derive from the model".
struct GridSizing {
    int lbar = 0;             // branches per node (odd); 0 = family rule
    int mbar = 0;             // share-grid size; 0 = N
    double y_center = 0.0;    // share value placed at index K3
    double y_span = 1.0 / 3.0; // fraction of share nodes below y_center
    double epsilon = 0.0;     // VG small-jump cutoff; 0 = 1.5 h_x
};

// Geometry of the recombining lattice plus the model-derived coefficients
// the finite-difference scheme needs. Immutable once built.
struct GridSpec {
    int N = 0;        // time steps
    double T = 0.0;   // horizon
    double dt = 0.0;  // T / N
    double x0 = 0.0;  // log spot

    double h_x = 0.0; // log-price step = process_std * sqrt(dt)
    int K1 = 0, K2 = 0;

    double h_y = 0.0; // share step (= h_x)
    int K3 = 0, K4 = 0;
    double y_center = 0.0;
    int i0 = 0;       // share index holding the initial position

    double epsilon = 0.0; // VG jump truncation around 0 (0 otherwise)
    double B1 = 0.0, B2 = 0.0; // jump-integral domain [-B1, B2]

    Family family = Family::diffusion;
    double sigma_d2 = 0.0;       // variance of the diffusion part per unit time
    double a_hat = 0.0;          // drift of the diffusion part
    double activity_bound = 0.0; // upper bound for the truncated activity
    SmallJumpParams sjp;         // populated for VG only

    int Lbar() const { return K1 + K2 + 1; }
    int Mbar() const { return K3 + K4 + 1; }
    long nodes_at(int n) const { return static_cast<long>(n) * (Lbar() - 1) + 1; }
    double x_at(int n, long j) const { return x0 + (static_cast<double>(j) - static_cast<double>(n) * K1) * h_x; }
    double y_at(int i) const { return y_center + (i - K3) * h_y; }
};

GridSpec build_grid(const ModelSpec& model, const MarketSpec& market, int N,
                    const GridSizing& sizing = {});

} // namespace levitc
