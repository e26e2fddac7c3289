#include "levitc/levy.hpp"
#include "levitc/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace levitc {

namespace {

constexpr double inv_sqrt_2pi = 0.3989422804014326779;

double normal_pdf(double x, double mean, double sd) {
    const double t = (x - mean) / sd;
    return inv_sqrt_2pi / sd * std::exp(-0.5 * t * t);
}

struct VgConsts {
    double a; // tilt theta / sigma_bar^2
    double b; // decay sqrt(theta^2 + 2 sigma_bar^2 / kappa) / sigma_bar^2
    double kappa;
};

VgConsts vg_consts(const ModelSpec& m) {
    const double s2 = m.vg_sigma_bar * m.vg_sigma_bar;
    return {m.vg_theta / s2, std::sqrt(m.vg_theta * m.vg_theta + 2.0 * s2 / m.vg_kappa) / s2,
            m.vg_kappa};
}

// nu(z) for VG: exp(a z - b |z|) / (kappa |z|).
double vg_density(const VgConsts& c, double z) {
    return std::exp(c.a * z - c.b * std::fabs(z)) / (c.kappa * std::fabs(z));
}

// Upper cut for a tail integral whose integrand decays like exp(-rate * z):
// the neglected mass is below exp(-50) of the integrand scale at the cut.
double tail_cut(double start, double rate) { return start + 50.0 / rate; }

} // namespace

const char* family_name(Family f) {
    switch (f) {
    case Family::diffusion: return "diffusion";
    case Family::merton: return "merton";
    case Family::vg: return "vg";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "diffusion") return Family::diffusion;
    if (name == "merton") return Family::merton;
    if (name == "vg") return Family::vg;
    throw model_error("unknown model family '" + name + "' (expected diffusion|merton|vg)");
}

ModelSpec ModelSpec::make_diffusion(double mu, double sigma) {
    ModelSpec m;
    m.family = Family::diffusion;
    m.mu = mu;
    m.sigma = sigma;
    m.validate();
    return m;
}

ModelSpec ModelSpec::make_merton(double mu, double sigma, double alpha, double xi, double lambda) {
    ModelSpec m;
    m.family = Family::merton;
    m.mu = mu;
    m.sigma = sigma;
    m.merton_alpha = alpha;
    m.merton_xi = xi;
    m.merton_lambda = lambda;
    m.validate();
    return m;
}

ModelSpec ModelSpec::make_vg(double mu, double theta, double sigma_bar, double kappa) {
    ModelSpec m;
    m.family = Family::vg;
    m.mu = mu;
    m.vg_theta = theta;
    m.vg_sigma_bar = sigma_bar;
    m.vg_kappa = kappa;
    m.validate();
    return m;
}

void ModelSpec::validate() const {
    if (!std::isfinite(mu)) throw model_error("model.mu must be finite");
    switch (family) {
    case Family::diffusion:
        if (!(sigma > 0.0)) throw model_error("model.sigma must be > 0 for the diffusion family");
        break;
    case Family::merton:
        if (!(sigma > 0.0)) throw model_error("model.sigma must be > 0 for the merton family");
        if (merton_lambda < 0.0) throw model_error("model.lambda must be >= 0");
        if (merton_lambda > 0.0 && !(merton_xi > 0.0))
            throw model_error("model.xi must be > 0 when model.lambda > 0");
        if (!std::isfinite(merton_alpha)) throw model_error("model.alpha must be finite");
        break;
    case Family::vg:
        if (!(vg_sigma_bar > 0.0)) throw model_error("model.sigma_bar must be > 0");
        if (!(vg_kappa > 0.0)) throw model_error("model.kappa must be > 0");
        if (!std::isfinite(vg_theta)) throw model_error("model.theta must be finite");
        break;
    }
}

double levy_density(const ModelSpec& model, double z) {
    switch (model.family) {
    case Family::diffusion:
        throw no_jump_component("diffusion family has no jump measure");
    case Family::merton:
        return model.merton_lambda * normal_pdf(z, model.merton_alpha, model.merton_xi);
    case Family::vg: {
        if (z == 0.0) throw singular_point("VG density is singular at z = 0");
        return vg_density(vg_consts(model), z);
    }
    }
    return 0.0;
}

double merton_compensator(const ModelSpec& model) {
    if (model.family != Family::merton)
        throw no_jump_component("merton_compensator requires the merton family");
    return model.merton_lambda *
           (std::exp(model.merton_alpha + 0.5 * model.merton_xi * model.merton_xi) - 1.0);
}

double vg_omega(const ModelSpec& model) {
    if (model.family != Family::vg) throw no_jump_component("vg_omega requires the vg family");
    const double s2 = model.vg_sigma_bar * model.vg_sigma_bar;
    const double arg = 1.0 - model.vg_kappa * model.vg_theta - 0.5 * model.vg_kappa * s2;
    if (!(arg > 0.0))
        throw model_error("vg exponential moment does not exist for these parameters");
    return -std::log(arg) / model.vg_kappa;
}

double levy_mass(const ModelSpec& model, double lo, double hi) {
    if (lo >= hi) return 0.0;
    if (model.family == Family::vg && lo < 0.0 && hi > 0.0)
        throw singular_point("levy_mass interval must not straddle z = 0 for VG");
    return adaptive_simpson([&](double z) { return levy_density(model, z); }, lo, hi);
}

double exp_compensator_quadrature(const ModelSpec& model) {
    switch (model.family) {
    case Family::diffusion:
        return 0.0;
    case Family::merton: {
        if (model.merton_lambda == 0.0) return 0.0;
        const double lo = model.merton_alpha - 12.0 * model.merton_xi;
        const double hi = model.merton_alpha + 0.5 + 12.0 * model.merton_xi;
        return adaptive_simpson(
            [&](double z) { return std::expm1(z) * levy_density(model, z); }, lo, hi, 1e-12);
    }
    case Family::vg: {
        const VgConsts c = vg_consts(model);
        if (!(c.b - c.a > 1.0))
            throw model_error("vg exponential moment does not exist for these parameters");
        // right tail decays at rate b - a - 1, left at b + a
        const double right =
            adaptive_simpson([&](double z) { return std::expm1(z) * vg_density(c, z); }, 1e-12,
                             tail_cut(0.0, c.b - c.a - 1.0), 1e-12);
        const double left =
            adaptive_simpson([&](double z) { return std::expm1(z) * vg_density(c, z); },
                             -tail_cut(0.0, c.b + c.a), -1e-12, 1e-12);
        return left + right;
    }
    }
    return 0.0;
}

SmallJumpParams small_jump_params(const ModelSpec& model, double epsilon) {
    if (!(epsilon > 0.0)) throw invalid_truncation("epsilon must be > 0");
    if (model.family == Family::diffusion)
        throw no_jump_component("small_jump_params requires a family with jumps");

    SmallJumpParams out;
    out.epsilon = epsilon;

    if (model.family == Family::merton) {
        const double al = model.merton_alpha, xi = model.merton_xi, lam = model.merton_lambda;
        if (lam == 0.0) return out;
        auto dens = [&](double z) { return lam * normal_pdf(z, al, xi); };
        const double lo = al - 12.0 * xi, hi = al + 12.0 * xi;
        out.sigma_eps2 = adaptive_simpson([&](double z) { return z * z * dens(z); },
                                          std::max(-epsilon, lo), std::min(epsilon, hi));
        auto tail = [&](auto f) {
            double acc = 0.0;
            if (-epsilon > lo)
                acc += adaptive_simpson(f, lo, -epsilon);
            if (epsilon < hi)
                acc += adaptive_simpson(f, epsilon, std::max(hi, epsilon + 0.5 + 2.0 * xi));
            return acc;
        };
        out.lambda_eps = tail([&](double z) { return dens(z); });
        out.sigma_j2 = tail([&](double z) { return z * z * dens(z); });
        out.omega_eps = tail([&](double z) { return std::expm1(z) * dens(z); });
        out.theta_eps = out.lambda_eps > 0.0
                            ? tail([&](double z) { return z * dens(z); }) / out.lambda_eps
                            : 0.0;
        return out;
    }

    const VgConsts c = vg_consts(model);
    // z^2 nu(z) = |z| exp(a z - b |z|) / kappa is bounded at the origin; use
    // that closed form so quadrature never evaluates nu itself at 0.
    auto z2nu = [&](double z) {
        return std::fabs(z) * std::exp(c.a * z - c.b * std::fabs(z)) / c.kappa;
    };
    out.sigma_eps2 =
        adaptive_simpson(z2nu, -epsilon, 0.0) + adaptive_simpson(z2nu, 0.0, epsilon);

    const double rr = c.b - c.a; // nu decay rate on the right tail
    const double rl = c.b + c.a; // ... and on the left
    auto two_tails = [&](auto f, double rate_r, double rate_l) {
        return adaptive_simpson(f, epsilon, tail_cut(epsilon, rate_r), 1e-12) +
               adaptive_simpson(f, -tail_cut(epsilon, rate_l), -epsilon, 1e-12);
    };
    auto nu = [&](double z) { return vg_density(c, z); };
    out.lambda_eps = two_tails(nu, rr, rl);
    out.sigma_j2 = two_tails([&](double z) { return z * z * nu(z); }, rr, rl);
    out.theta_eps = two_tails([&](double z) { return z * nu(z); }, rr, rl) / out.lambda_eps;
    if (!(rr > 1.0))
        throw model_error("vg exponential moment does not exist for these parameters");
    out.omega_eps = two_tails([&](double z) { return std::expm1(z) * nu(z); }, rr - 1.0, rl);
    return out;
}

double process_std(const ModelSpec& model) {
    switch (model.family) {
    case Family::diffusion:
        return model.sigma;
    case Family::merton: {
        const double al = model.merton_alpha, xi = model.merton_xi, lam = model.merton_lambda;
        return std::sqrt(model.sigma * model.sigma + lam * xi * xi + lam * al * al);
    }
    case Family::vg: {
        const double th = model.vg_theta;
        return std::sqrt(model.vg_sigma_bar * model.vg_sigma_bar + th * th * model.vg_kappa);
    }
    }
    return 0.0;
}

MomentReport moment_check(const ModelSpec& model) {
    MomentReport rep;
    const double inf = std::numeric_limits<double>::infinity();
    switch (model.family) {
    case Family::diffusion:
        rep.finite_second_moment = true;
        rep.right_tail_rate = inf;
        rep.left_tail_rate = inf;
        rep.tail_integral = 0.0;
        return rep;
    case Family::merton: {
        rep.finite_second_moment = true; // Gaussian tails dominate e^{2z}
        rep.right_tail_rate = inf;
        rep.left_tail_rate = inf;
        if (model.merton_lambda > 0.0) {
            const double al = model.merton_alpha, xi = model.merton_xi;
            auto f = [&](double z) {
                return std::exp(2.0 * z) * levy_density(model, z);
            };
            const double peak = al + 2.0 * xi * xi; // mode of e^{2z} * density
            rep.tail_integral = adaptive_simpson(f, 1.0, std::max(1.0, peak) + 12.0 * xi, 1e-12) +
                                adaptive_simpson(f, al - 12.0 * xi < -1.0 ? al - 12.0 * xi : -13.0,
                                                 -1.0, 1e-12);
        }
        return rep;
    }
    case Family::vg: {
        const VgConsts c = vg_consts(model);
        rep.right_tail_rate = c.b - c.a;
        rep.left_tail_rate = c.b + c.a;
        rep.finite_second_moment = rep.right_tail_rate > 2.0;
        if (rep.finite_second_moment) {
            auto f = [&](double z) { return std::exp(2.0 * z) * vg_density(c, z); };
            rep.tail_integral =
                adaptive_simpson(f, 1.0, tail_cut(1.0, rep.right_tail_rate - 2.0), 1e-12) +
                adaptive_simpson(f, -tail_cut(1.0, rep.left_tail_rate + 2.0), -1.0, 1e-12);
        } else {
            rep.tail_integral = inf;
        }
        return rep;
    }
    }
    return rep;
}

} // namespace levitc
