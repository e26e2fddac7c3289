#include <doctest.h>

#include "levitc/refprices.hpp"

#include <cmath>

using namespace levitc;

static MarketSpec atm_market() {
    MarketSpec mk;
    mk.S0 = 15.0;
    mk.K = 15.0;
    mk.T = 1.0;
    mk.r = 0.1;
    mk.gamma = 0.001;
    return mk;
}

TEST_CASE("black-scholes closed form") {
    // frozen against an independent high-precision evaluation
    CHECK(std::fabs(bs_price(15.0, 15.0, 1.0, 0.1, 0.25) - 2.246368616746695) < 1e-12);

    // degenerate limits
    CHECK(bs_price(20.0, 15.0, 0.0, 0.1, 0.25) == doctest::Approx(5.0));
    CHECK(bs_price(10.0, 15.0, 0.0, 0.1, 0.25) == 0.0);
    CHECK(bs_price(15.0, 15.0, 1.0, 0.1, 0.0) ==
          doctest::Approx(15.0 - 15.0 * std::exp(-0.1)).epsilon(1e-12));

    // deep in the money converges to the discounted forward payoff
    CHECK(bs_price(100.0, 15.0, 1.0, 0.1, 0.25) ==
          doctest::Approx(100.0 - 15.0 * std::exp(-0.1)).epsilon(1e-9));
}

TEST_CASE("jump-diffusion series price") {
    const ModelSpec m = ModelSpec::make_merton(0.1, 0.25, 0.0, 0.5, 0.8);
    const MarketSpec mk = atm_market();

    CHECK(std::fabs(merton_series_price(m, mk) - 3.477645262573014) < 1e-10);

    // series already converged well before the default term count
    CHECK(std::fabs(merton_series_price(m, mk, 30) - merton_series_price(m, mk, 60)) < 1e-10);

    // no jumps collapses to black-scholes
    const ModelSpec nojump = ModelSpec::make_merton(0.1, 0.25, 0.0, 0.5, 0.0);
    CHECK(merton_series_price(nojump, mk) ==
          doctest::Approx(bs_price(15.0, 15.0, 1.0, 0.1, 0.25)).epsilon(1e-12));
}

TEST_CASE("finite-difference benchmark agrees with the closed forms") {
    const MarketSpec mk = atm_market();

    const ModelSpec dif = ModelSpec::make_diffusion(0.1, 0.25);
    const double p_dif = pide_price(dif, mk, pide_desk_config(dif));
    CHECK(std::fabs(p_dif - bs_price(15.0, 15.0, 1.0, 0.1, 0.25)) < 1e-3);
    CHECK(std::fabs(p_dif - 2.2462613753) < 1e-6); // frozen regression value

    const ModelSpec vg = ModelSpec::make_vg(0.1, -0.1, 0.2, 0.1);
    const double p_vg = pide_price(vg, mk, pide_desk_config(vg));
    CHECK(std::fabs(p_vg - 1.9828483582) < 1e-6); // frozen regression value

    // coarse grid keeps this test quick; the full-resolution run lives in
    // the acceptance suite
    const ModelSpec mer = ModelSpec::make_merton(0.1, 0.25, 0.0, 0.5, 0.8);
    PideConfig pc;
    pc.dx = 2e-3;
    pc.n_time = 500;
    pc.x_halfwidth = 2.8;
    pc.trunc = 2.0;
    const double p_mer = pide_price(mer, mk, pc);
    CHECK(std::fabs(p_mer - merton_series_price(mer, mk)) < 1e-2);
    CHECK(std::fabs(p_mer - 3.4713567900) < 1e-6); // frozen regression value
}

TEST_CASE("benchmark grid refinement moves toward the reference") {
    const MarketSpec mk = atm_market();
    const ModelSpec dif = ModelSpec::make_diffusion(0.1, 0.25);
    const double exact = bs_price(15.0, 15.0, 1.0, 0.1, 0.25);

    PideConfig coarse;
    coarse.dx = 4e-3;
    coarse.n_time = 500;
    coarse.x_halfwidth = 1.6;
    PideConfig fine = coarse;
    fine.dx = 1e-3;
    fine.n_time = 2000;

    const double e_coarse = std::fabs(pide_price(dif, mk, coarse) - exact);
    const double e_fine = std::fabs(pide_price(dif, mk, fine) - exact);
    CHECK(e_fine < e_coarse);
}

TEST_CASE("benchmark rejects an unstable time step") {
    const MarketSpec mk = atm_market();
    const ModelSpec vg = ModelSpec::make_vg(0.1, -0.1, 0.2, 0.1);
    PideConfig pc = pide_desk_config(vg);
    pc.n_time = 10; // explicit jump term would exceed the stability bound
    CHECK_THROWS_AS(pide_price(vg, mk, pc), grid_infeasible);
}
