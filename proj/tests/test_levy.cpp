#include <doctest.h>

#include "levitc/levy.hpp"
#include "levitc/quadrature.hpp"

#include <cmath>

using namespace levitc;

// parameter sets used throughout the numerical study
static ModelSpec table_diffusion() { return ModelSpec::make_diffusion(0.1, 0.25); }
static ModelSpec table_merton() { return ModelSpec::make_merton(0.1, 0.25, 0.0, 0.5, 0.8); }
static ModelSpec table_vg() { return ModelSpec::make_vg(0.1, -0.1, 0.2, 0.1); }

TEST_CASE("model validation rejects bad fields") {
    CHECK_THROWS_AS(ModelSpec::make_diffusion(0.1, 0.0), model_error);
    CHECK_THROWS_AS(ModelSpec::make_diffusion(0.1, -1.0), model_error);
    CHECK_THROWS_AS(ModelSpec::make_merton(0.1, 0.25, 0.0, -0.5, 0.8), model_error);
    CHECK_THROWS_AS(ModelSpec::make_merton(0.1, 0.25, 0.0, 0.0, 0.8), model_error);
    CHECK_THROWS_AS(ModelSpec::make_merton(0.1, 0.25, 0.0, 0.5, -0.1), model_error);
    CHECK_THROWS_AS(ModelSpec::make_vg(0.1, -0.1, 0.0, 0.1), model_error);
    CHECK_THROWS_AS(ModelSpec::make_vg(0.1, -0.1, 0.2, 0.0), model_error);
    CHECK_NOTHROW(ModelSpec::make_merton(0.1, 0.25, 0.0, 0.0, 0.0)); // jump-free merton is fine
    CHECK(family_from_name("vg") == Family::vg);
    CHECK_THROWS_AS(family_from_name("nig"), model_error);
}

TEST_CASE("levy density values") {
    const auto mert = table_merton();
    CHECK(levy_density(mert, 0.3) == doctest::Approx(0.5331593646268794).epsilon(1e-12));
    CHECK(levy_density(mert, -0.7) == doctest::Approx(0.2395639450171918).epsilon(1e-12));

    const auto vg = table_vg();
    CHECK(levy_density(vg, 0.05) == doctest::Approx(57.30095937203802).epsilon(1e-12));
    CHECK(levy_density(vg, -0.05) == doctest::Approx(73.57588823428846).epsilon(1e-12));

    CHECK_THROWS_AS(levy_density(table_diffusion(), 0.1), no_jump_component);
    CHECK_THROWS_AS(levy_density(vg, 0.0), singular_point);
}

TEST_CASE("merton compensator closed form") {
    CHECK(merton_compensator(table_merton()) ==
          doctest::Approx(0.1065187624534611).epsilon(1e-14));
    CHECK(merton_compensator(ModelSpec::make_merton(0.0, 0.2, 0.1, 0.3, 1.5)) ==
          doctest::Approx(0.2340593554020324).epsilon(1e-14));
    CHECK(merton_compensator(ModelSpec::make_merton(0.1, 0.25, 0.0, 0.0, 0.0)) == 0.0);
    CHECK_THROWS_AS(merton_compensator(table_vg()), no_jump_component);
}

TEST_CASE("vg omega closed form") {
    CHECK(vg_omega(table_vg()) == doctest::Approx(-0.07968169649176874).epsilon(1e-14));
    CHECK_THROWS_AS(vg_omega(table_merton()), no_jump_component);
    // exponential moment blows up once kappa*(theta + sigma_bar^2/2) >= 1
    CHECK_THROWS_AS(vg_omega(ModelSpec::make_vg(0.0, 2.0, 1.0, 0.5)), model_error);
}

TEST_CASE("quadrature cross-checks the closed-form compensators") {
    CHECK(exp_compensator_quadrature(table_merton()) ==
          doctest::Approx(merton_compensator(table_merton())).epsilon(1e-10));
    CHECK(exp_compensator_quadrature(table_vg()) ==
          doctest::Approx(vg_omega(table_vg())).epsilon(1e-10));
    CHECK(exp_compensator_quadrature(table_diffusion()) == 0.0);
}

TEST_CASE("levy mass recovers the total activity") {
    const auto mert = table_merton();
    CHECK(levy_mass(mert, -6.0, 6.0) == doctest::Approx(0.8).epsilon(1e-10));
    // VG mass must be split around the singularity
    CHECK_THROWS_AS(levy_mass(table_vg(), -1.0, 1.0), singular_point);
    CHECK_THROWS_AS(levy_mass(table_diffusion(), -1.0, 1.0), no_jump_component);
    CHECK(levy_mass(table_vg(), 0.0006, 10.0) + levy_mass(table_vg(), -10.0, -0.0006) ==
          doctest::Approx(74.95030410029331).epsilon(1e-8));
}

TEST_CASE("small jump split: merton") {
    const auto p = small_jump_params(table_merton(), 0.3);
    CHECK(p.sigma_eps2 == doctest::Approx(0.010324848205938655).epsilon(1e-9));
    CHECK(p.lambda_eps == doctest::Approx(0.4388049884001177).epsilon(1e-9));
    CHECK(p.sigma_j2 == doctest::Approx(0.18967515179406134).epsilon(1e-9));
    CHECK(p.theta_eps == doctest::Approx(0.0).epsilon(1e-12)); // symmetric jump law
    CHECK(p.omega_eps == doctest::Approx(0.10133354074309331).epsilon(1e-9));
    // split preserves the total second moment lambda*(xi^2 + alpha^2)
    CHECK(p.sigma_eps2 + p.sigma_j2 == doctest::Approx(0.2).epsilon(1e-10));
    // epsilon below every jump: the split degenerates to the full measure
    const auto q = small_jump_params(table_merton(), 1e-8);
    CHECK(q.lambda_eps == doctest::Approx(0.8).epsilon(1e-8));
    CHECK(q.omega_eps == doctest::Approx(0.1065187624534611).epsilon(1e-7));
    CHECK(q.sigma_eps2 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("small jump split: vg across the epsilon ladder") {
    const auto vg = table_vg();
    struct Row {
        double eps, sigma_eps, lambda_eps, sigma_j, theta_eps, omega_eps;
    };
    // independently integrated values for the truncation levels used by the chain
    const Row rows[] = {
        {0.042953463, 0.09988283399312352, 4.736135682470951, 0.17613466289604136,
         -0.015856816721180391, -0.05976703436972371},
        {0.030372685, 0.07704334035047125, 7.821647074559536, 0.18725470276508798,
         -0.010889487193803225, -0.06782233018117874},
        {0.024799194, 0.06543000496957328, 10.012542520016416, 0.19162180055954389,
         -0.008919174896344810, -0.07112540122984845},
    };
    for (const auto& row : rows) {
        CAPTURE(row.eps);
        const auto p = small_jump_params(vg, row.eps);
        CHECK(std::sqrt(p.sigma_eps2) == doctest::Approx(row.sigma_eps).epsilon(1e-8));
        CHECK(p.lambda_eps == doctest::Approx(row.lambda_eps).epsilon(1e-8));
        CHECK(std::sqrt(p.sigma_j2) == doctest::Approx(row.sigma_j).epsilon(1e-8));
        CHECK(p.theta_eps == doctest::Approx(row.theta_eps).epsilon(1e-8));
        CHECK(p.omega_eps == doctest::Approx(row.omega_eps).epsilon(1e-8));
        // variance split is exact: sigma_eps^2 + sigma_J^2 = sigma_bar^2 + theta^2 kappa
        CHECK(p.sigma_eps2 + p.sigma_j2 == doctest::Approx(0.041).epsilon(1e-9));
    }
    CHECK(small_jump_params(vg, 0.0006).lambda_eps ==
          doctest::Approx(74.95030410029331).epsilon(1e-8));
    CHECK(small_jump_params(vg, 0.00496).lambda_eps ==
          doctest::Approx(34.60712237051654).epsilon(1e-8));
    // truncated jump mean tends to the full first moment  int z nu = theta
    CHECK(small_jump_params(vg, 0.0006).lambda_eps * small_jump_params(vg, 0.0006).theta_eps ==
          doctest::Approx(-0.1).epsilon(1e-5));
    // huge epsilon swallows everything
    CHECK(small_jump_params(vg, 5.0).lambda_eps == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(small_jump_params(vg, 0.0), invalid_truncation);
    CHECK_THROWS_AS(small_jump_params(table_diffusion(), 0.1), no_jump_component);
}

TEST_CASE("process standard deviation per unit time") {
    CHECK(process_std(table_diffusion()) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(process_std(table_merton()) == doctest::Approx(0.5123475382979799).epsilon(1e-12));
    CHECK(process_std(table_vg()) == doctest::Approx(0.20248456731316587).epsilon(1e-12));
    CHECK(process_std(table_vg()) == doctest::Approx(std::sqrt(0.041)).epsilon(1e-15));
}

TEST_CASE("second exponential moment report") {
    const auto d = moment_check(table_diffusion());
    CHECK(d.finite_second_moment);
    CHECK(d.tail_integral == 0.0);

    const auto m = moment_check(table_merton());
    CHECK(m.finite_second_moment);
    CHECK(std::isinf(m.right_tail_rate));
    CHECK(m.tail_integral == doctest::Approx(0.21104311797051851).epsilon(1e-8));

    const auto v = moment_check(table_vg());
    CHECK(v.finite_second_moment);
    CHECK(v.right_tail_rate == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(v.left_tail_rate == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(v.tail_integral == doctest::Approx(1.643206375187e-10).epsilon(1e-4));

    // heavy right tail: rate B - A <= 2 means the variance of S_T blows up
    const auto bad = moment_check(ModelSpec::make_vg(0.0, 1.0, 1.0, 50.0));
    CHECK_FALSE(bad.finite_second_moment);
    CHECK(std::isinf(bad.tail_integral));
}

TEST_CASE("adaptive simpson handles generic integrands") {
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, 3.141592653589793) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(simpson_fixed([](double x) { return x * x; }, 0.0, 1.0, 33) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}
