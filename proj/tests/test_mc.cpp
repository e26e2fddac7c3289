#include <doctest.h>

#include "levitc/mc.hpp"
#include "levitc/refprices.hpp"

#include <cmath>

#ifdef LEVITC_HAVE_OPENMP
#include <omp.h>
#endif

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

static SimConfig quick_sim() {
    SimConfig sim;
    sim.n_paths = 1'000'000;
    sim.seed = 20260822;
    return sim;
}

TEST_CASE("risk neutralization fixes the price drift") {
    const MarketSpec mk = atm_market();
    for (ModelSpec m : {ModelSpec::make_diffusion(0.1, 0.25),
                        ModelSpec::make_merton(0.1, 0.25, 0.0, 0.5, 0.8),
                        ModelSpec::make_vg(0.1, -0.1, 0.2, 0.1)}) {
        const ModelSpec q = risk_neutralize(m, mk.r);
        CHECK(q.mu == mk.r);
        CHECK(q.family == m.family);
    }
}

TEST_CASE("martingale identity under the pricing measure") {
    const MarketSpec mk = atm_market();
    const double forward = mk.S0 * std::exp(mk.r * mk.T);
    for (ModelSpec m : {ModelSpec::make_diffusion(0.1, 0.25),
                        ModelSpec::make_merton(0.1, 0.25, 0.0, 0.5, 0.8),
                        ModelSpec::make_vg(0.1, -0.1, 0.2, 0.1)}) {
        const ModelSpec q = risk_neutralize(m, mk.r);
        const auto sample = simulate_terminal(q, mk, quick_sim());
        double mean = 0.0, second = 0.0;
        for (double s : sample) {
            mean += s;
            second += s * s;
        }
        const double n = static_cast<double>(sample.size());
        mean /= n;
        const double se = std::sqrt((second / n - mean * mean) / n);
        CHECK(std::fabs(mean - forward) < 3.0 * se);
    }
}

TEST_CASE("call prices hit the independent references") {
    const MarketSpec mk = atm_market();
    const SimConfig sim = quick_sim();
    struct Target {
        ModelSpec model;
        double price;
    };
    const Target targets[] = {
        {ModelSpec::make_diffusion(0.1, 0.25), 2.246368616746695},
        {ModelSpec::make_merton(0.1, 0.25, 0.0, 0.5, 0.8), 3.477645262573014},
        {ModelSpec::make_vg(0.1, -0.1, 0.2, 0.1), 1.997103291218},
    };
    for (const Target& t : targets) {
        const McResult r = mc_call_price(risk_neutralize(t.model, mk.r), mk, sim);
        CHECK(r.n_paths == sim.n_paths);
        CHECK(r.std_error > 0.0);
        CHECK(std::fabs(r.price - t.price) < 3.0 * r.std_error);
    }
}

TEST_CASE("a seed pins the estimate exactly") {
    const MarketSpec mk = atm_market();
    const ModelSpec q = risk_neutralize(ModelSpec::make_merton(0.1, 0.25, 0.0, 0.5, 0.8), mk.r);
    SimConfig sim;
    sim.n_paths = 100'000;
    sim.seed = 11;

    const McResult a = mc_call_price(q, mk, sim);
    const McResult b = mc_call_price(q, mk, sim);
    CHECK(a.price == b.price);
    CHECK(a.std_error == b.std_error);

    sim.seed = 12;
    const McResult c = mc_call_price(q, mk, sim);
    CHECK(a.price != c.price);
}

#ifdef LEVITC_HAVE_OPENMP
TEST_CASE("thread count does not change the draws") {
    const MarketSpec mk = atm_market();
    const ModelSpec q = risk_neutralize(ModelSpec::make_vg(0.1, -0.1, 0.2, 0.1), mk.r);
    SimConfig sim;
    sim.n_paths = 300'000; // spans several chunks
    sim.seed = 5;

    const int before = omp_get_max_threads();
    omp_set_num_threads(1);
    const McResult serial = mc_call_price(q, mk, sim);
    omp_set_num_threads(3);
    const McResult threaded = mc_call_price(q, mk, sim);
    omp_set_num_threads(before);

    CHECK(serial.price == threaded.price);
    CHECK(serial.std_error == threaded.std_error);
}
#endif
