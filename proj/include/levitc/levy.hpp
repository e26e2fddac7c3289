#pragma once

#include "levitc/common.hpp"

namespace levitc {

enum class Family { diffusion, merton, vg };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// Exponential Levy model for the stock: S_t = S0 * exp(X_t). `mu` is the
// drift of the *price* (E[S_t] = S0 e^{mu t}); the log-drift carries the
// usual convexity and jump compensators.
struct ModelSpec {
    Family family = Family::diffusion;
    double mu = 0.0;
    double sigma = 0.0; // Brownian volatility (diffusion/merton); unused for vg

    // merton: jump sizes are Normal(alpha, xi^2), arriving at rate lambda
    double merton_alpha = 0.0;
    double merton_xi = 0.0;
    double merton_lambda = 0.0;

    // vg: Brownian motion with drift theta and volatility sigma_bar, run on a
    // gamma clock with variance rate kappa
    double vg_theta = 0.0;
    double vg_sigma_bar = 0.0;
    double vg_kappa = 0.0;

    static ModelSpec make_diffusion(double mu, double sigma);
    static ModelSpec make_merton(double mu, double sigma, double alpha, double xi, double lambda);
    static ModelSpec make_vg(double mu, double theta, double sigma_bar, double kappa);

    void validate() const; // throws model_error naming the offending field
};

// Quantities of the small-jump Brownian substitution at truncation level
// epsilon: jumps with |z| < epsilon are replaced by a Brownian component of
// matched variance, the rest stay as a finite-activity jump part.
struct SmallJumpParams {
    double epsilon = 0.0;
    double sigma_eps2 = 0.0; // integral of z^2 nu(dz) over |z| < eps
    double omega_eps = 0.0;  // integral of (e^z - 1) nu(dz) over |z| >= eps
    double lambda_eps = 0.0; // integral of nu(dz) over |z| >= eps
    double theta_eps = 0.0;  // mean jump size of the retained part
    double sigma_j2 = 0.0;   // integral of z^2 nu(dz) over |z| >= eps
};

struct MomentReport {
    bool finite_second_moment = false;
    double right_tail_rate = 0.0; // exponential decay rate of nu on z > 0
    double left_tail_rate = 0.0;  // ... and on z < 0 (+inf for Gaussian tails)
    double tail_integral = 0.0;   // integral of e^{2z} nu(dz) over |z| >= 1
};

// Levy density nu(z). Throws no_jump_component for the diffusion family and
// singular_point for VG at z = 0.
double levy_density(const ModelSpec& model, double z);

// m = lambda (e^{alpha + xi^2/2} - 1), the expected relative price jump rate.
double merton_compensator(const ModelSpec& model);

// omega = integral of (e^z - 1) nu(dz) for VG, in closed form.
double vg_omega(const ModelSpec& model);

// Integral of nu over [lo, hi] (quadrature; the interval must not contain 0
// for VG). Exposed for tests and diagnostics.
double levy_mass(const ModelSpec& model, double lo, double hi);

// Integral of (e^z - 1) nu(dz) over the whole axis, by quadrature.
double exp_compensator_quadrature(const ModelSpec& model);

SmallJumpParams small_jump_params(const ModelSpec& model, double epsilon);

// Standard deviation of X_1: sqrt(E[X_1^2] - drift^2 terms dropped), i.e. the
// square root of the variance rate of the log-price.
double process_std(const ModelSpec& model);

MomentReport moment_check(const ModelSpec& model);

} // namespace levitc
