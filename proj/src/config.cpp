#include "levitc/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace levitc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw config_error(where + ": " + what);
}

double num(const json& j, const std::string& where, const char* key, double fallback,
           bool required = false) {
    if (!j.contains(key)) {
        if (required) fail(where + "." + key, "missing required field");
        return fallback;
    }
    const json& v = j.at(key);
    if (!v.is_number()) fail(where + "." + key, "expected a number");
    return v.get<double>();
}

long integer(const json& j, const std::string& where, const char* key, long fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
    return v.get<long>();
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> known) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) { ok = true; break; }
        if (!ok) fail(where + "." + it.key(), "unknown field");
    }
}

ModelSpec parse_model(const json& j) {
    if (!j.is_object()) fail("model", "expected an object");
    if (!j.contains("family")) fail("model.family", "missing required field");
    if (!j.at("family").is_string()) fail("model.family", "expected a string");
    const Family family = family_from_name(j.at("family").get<std::string>());
    const double mu = num(j, "model", "mu", 0.0, true);
    ModelSpec m;
    switch (family) {
    case Family::diffusion:
        reject_unknown(j, "model", {"family", "mu", "sigma"});
        m = ModelSpec::make_diffusion(mu, num(j, "model", "sigma", 0.0, true));
        break;
    case Family::merton:
        reject_unknown(j, "model", {"family", "mu", "sigma", "alpha", "xi", "lambda"});
        m = ModelSpec::make_merton(mu, num(j, "model", "sigma", 0.0, true),
                                   num(j, "model", "alpha", 0.0),
                                   num(j, "model", "xi", 0.0, true),
                                   num(j, "model", "lambda", 0.0, true));
        break;
    case Family::vg:
        reject_unknown(j, "model", {"family", "mu", "theta", "sigma_bar", "kappa"});
        m = ModelSpec::make_vg(mu, num(j, "model", "theta", 0.0, true),
                               num(j, "model", "sigma_bar", 0.0, true),
                               num(j, "model", "kappa", 0.0, true));
        break;
    }
    m.validate();
    return m;
}

MarketSpec parse_market(const json& j) {
    if (!j.is_object()) fail("market", "expected an object");
    reject_unknown(j, "market",
                   {"S0", "K", "T", "r", "theta_b", "theta_s", "gamma", "y0"});
    MarketSpec mk;
    mk.S0 = num(j, "market", "S0", 0.0, true);
    mk.K = num(j, "market", "K", 0.0, true);
    mk.T = num(j, "market", "T", 0.0, true);
    mk.r = num(j, "market", "r", 0.0, true);
    mk.theta_b = num(j, "market", "theta_b", 0.0);
    mk.theta_s = num(j, "market", "theta_s", 0.0);
    mk.gamma = num(j, "market", "gamma", 0.0, true);
    mk.y0 = num(j, "market", "y0", 0.0);
    mk.validate();
    return mk;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config: expected a JSON object");
    reject_unknown(j, "config", {"model", "market", "grid", "pide", "mc", "sweep"});
    if (!j.contains("model")) throw config_error("config.model: missing required section");
    if (!j.contains("market")) throw config_error("config.market: missing required section");

    RunConfig cfg;
    cfg.model = parse_model(j.at("model"));
    cfg.market = parse_market(j.at("market"));

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        if (!g.is_object()) fail("grid", "expected an object");
        reject_unknown(g, "grid", {"N", "lbar", "mbar", "y_center", "y_span", "epsilon"});
        cfg.N = static_cast<int>(integer(g, "grid", "N", cfg.N));
        if (cfg.N < 2) fail("grid.N", "must be >= 2");
        cfg.sizing.lbar = static_cast<int>(integer(g, "grid", "lbar", 0));
        cfg.sizing.mbar = static_cast<int>(integer(g, "grid", "mbar", 0));
        cfg.sizing.y_center = num(g, "grid", "y_center", 0.0);
        cfg.sizing.y_span = num(g, "grid", "y_span", cfg.sizing.y_span);
        cfg.sizing.epsilon = num(g, "grid", "epsilon", 0.0);
    }

    if (j.contains("pide")) {
        const json& p = j.at("pide");
        if (!p.is_object()) fail("pide", "expected an object");
        reject_unknown(p, "pide", {"dx", "n_time", "x_halfwidth", "trunc", "epsilon_factor"});
        PideConfig pc = pide_desk_config(cfg.model);
        pc.dx = num(p, "pide", "dx", pc.dx);
        pc.n_time = static_cast<int>(integer(p, "pide", "n_time", pc.n_time));
        pc.x_halfwidth = num(p, "pide", "x_halfwidth", pc.x_halfwidth);
        pc.trunc = num(p, "pide", "trunc", pc.trunc);
        pc.epsilon_factor = num(p, "pide", "epsilon_factor", pc.epsilon_factor);
        cfg.pide = pc;
    }

    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        if (!s.is_object()) fail("sweep", "expected an object");
        reject_unknown(s, "sweep", {"values", "min", "max", "count"});
        SweepRange sr;
        if (s.contains("values")) {
            if (s.contains("min") || s.contains("max") || s.contains("count"))
                fail("sweep", "give either values or a min/max/count range, not both");
            const json& v = s.at("values");
            if (!v.is_array() || v.empty()) fail("sweep.values", "expected a nonempty array");
            for (const json& e : v) {
                if (!e.is_number()) fail("sweep.values", "expected numbers");
                sr.values.push_back(e.get<double>());
            }
        } else {
            const double lo = num(s, "sweep", "min", 0.0, true);
            const double hi = num(s, "sweep", "max", 0.0, true);
            const long n = integer(s, "sweep", "count", 0);
            if (n < 2) fail("sweep.count", "must be >= 2");
            if (!(hi > lo)) fail("sweep.max", "must exceed sweep.min");
            for (long k = 0; k < n; ++k)
                sr.values.push_back(lo + (hi - lo) * static_cast<double>(k) /
                                             static_cast<double>(n - 1));
        }
        cfg.sweep = sr;
    }

    if (j.contains("mc")) {
        const json& m = j.at("mc");
        if (!m.is_object()) fail("mc", "expected an object");
        reject_unknown(m, "mc", {"n_paths", "seed"});
        SimConfig sc;
        const long paths = integer(m, "mc", "n_paths", static_cast<long>(sc.n_paths));
        if (paths < 1) fail("mc.n_paths", "must be >= 1");
        sc.n_paths = static_cast<std::uint64_t>(paths);
        sc.seed = static_cast<std::uint64_t>(integer(m, "mc", "seed", 0));
        cfg.sim = sc;
    }

    cfg.raw = j.dump();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    json& m = j["model"];
    m["family"] = family_name(cfg.model.family);
    m["mu"] = cfg.model.mu;
    switch (cfg.model.family) {
    case Family::diffusion:
        m["sigma"] = cfg.model.sigma;
        break;
    case Family::merton:
        m["sigma"] = cfg.model.sigma;
        m["alpha"] = cfg.model.merton_alpha;
        m["xi"] = cfg.model.merton_xi;
        m["lambda"] = cfg.model.merton_lambda;
        break;
    case Family::vg:
        m["theta"] = cfg.model.vg_theta;
        m["sigma_bar"] = cfg.model.vg_sigma_bar;
        m["kappa"] = cfg.model.vg_kappa;
        break;
    }
    json& mk = j["market"];
    mk["S0"] = cfg.market.S0;
    mk["K"] = cfg.market.K;
    mk["T"] = cfg.market.T;
    mk["r"] = cfg.market.r;
    mk["theta_b"] = cfg.market.theta_b;
    mk["theta_s"] = cfg.market.theta_s;
    mk["gamma"] = cfg.market.gamma;
    mk["y0"] = cfg.market.y0;
    json& g = j["grid"];
    g["N"] = cfg.N;
    g["lbar"] = cfg.sizing.lbar;
    g["mbar"] = cfg.sizing.mbar;
    g["y_center"] = cfg.sizing.y_center;
    g["y_span"] = cfg.sizing.y_span;
    g["epsilon"] = cfg.sizing.epsilon;
    if (cfg.pide) {
        json& p = j["pide"];
        p["dx"] = cfg.pide->dx;
        p["n_time"] = cfg.pide->n_time;
        p["x_halfwidth"] = cfg.pide->x_halfwidth;
        p["trunc"] = cfg.pide->trunc;
        p["epsilon_factor"] = cfg.pide->epsilon_factor;
    }
    if (cfg.sim) {
        json& s = j["mc"];
        s["n_paths"] = cfg.sim->n_paths;
        s["seed"] = cfg.sim->seed;
    }
    if (cfg.sweep) j["sweep"]["values"] = cfg.sweep->values;
    return j.dump(2);
}

} // namespace levitc
