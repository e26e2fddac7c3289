#include "levitc/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace levitc {

namespace {

std::string fmt10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmtg(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void require_family(const RunConfig& cfg, Family f, const char* table) {
    if (cfg.model.family != f)
        throw config_error(std::string("table ") + table + " requires model.family=" +
                           family_name(f));
}

// largest schedule entry allowed by the config's N cap
template <typename T>
std::vector<T> capped(const std::vector<T>& schedule, int cap,
                      int (*n_of)(const T&), const char* table) {
    std::vector<T> out;
    for (const T& row : schedule)
        if (n_of(row) <= cap) out.push_back(row);
    if (out.empty())
        throw config_error(std::string("grid.N=") + std::to_string(cap) +
                           " is below the smallest row of table " + table);
    return out;
}

int id_int(const int& n) { return n; }

MarketSpec with_cost(MarketSpec mk, double cost) {
    mk.theta_b = cost;
    mk.theta_s = cost;
    return mk;
}

MarketSpec with_gamma(MarketSpec mk, double gamma) {
    mk.gamma = gamma;
    return mk;
}

// y_span shrunk (never widened) until the writer's full hedge band [0, 1]
// is interior to the share grid
GridSizing cover_writer_band(const ModelSpec& model, const MarketSpec& market, int N,
                             GridSizing sizing) {
    GridSpec trial = build_grid(model, market, N, sizing);
    const int mbar = trial.Mbar();
    const int k4_min = static_cast<int>(std::ceil(1.0 / trial.h_y)) + 1;
    const int k3_max = mbar - 1 - k4_min;
    if (k3_max < 0)
        throw grid_infeasible("share grid cannot reach y=1 at this N; raise grid.Mbar");
    if (trial.K4 < k4_min)
        sizing.y_span = static_cast<double>(k3_max) / static_cast<double>(mbar - 1);
    return sizing;
}

std::string trend_name(const std::vector<double>& v) {
    bool inc = true, dec = true, strict_inc = true, strict_dec = true;
    for (size_t i = 1; i < v.size(); ++i) {
        const double d = v[i] - v[i - 1];
        if (d < 0) { inc = false; strict_inc = false; }
        if (d > 0) { dec = false; strict_dec = false; }
        if (d <= 0) strict_inc = false;
        if (d >= 0) strict_dec = false;
    }
    if (strict_inc) return "strictly-increasing";
    if (strict_dec) return "strictly-decreasing";
    if (inc && dec) return "flat";
    if (inc) return "nondecreasing";
    if (dec) return "nonincreasing";
    return "none";
}

} // namespace

TableKind table_kind_from_name(const std::string& name) {
    if (name == "atm") return TableKind::atm;
    if (name == "convergence_diffusion") return TableKind::convergence_diffusion;
    if (name == "truncation_merton") return TableKind::truncation_merton;
    if (name == "convergence_merton") return TableKind::convergence_merton;
    if (name == "convergence_vg") return TableKind::convergence_vg;
    if (name == "costs") return TableKind::costs;
    throw config_error("unknown table kind: " + name);
}

const char* table_kind_name(TableKind kind) {
    switch (kind) {
    case TableKind::atm: return "atm";
    case TableKind::convergence_diffusion: return "convergence_diffusion";
    case TableKind::truncation_merton: return "truncation_merton";
    case TableKind::convergence_merton: return "convergence_merton";
    case TableKind::convergence_vg: return "convergence_vg";
    case TableKind::costs: return "costs";
    }
    return "?";
}

SweepAxis sweep_axis_from_name(const std::string& name) {
    if (name == "cost") return SweepAxis::cost;
    if (name == "gamma") return SweepAxis::gamma;
    if (name == "mu") return SweepAxis::mu;
    if (name == "spot") return SweepAxis::spot;
    throw config_error("unknown sweep axis: " + name);
}

const char* sweep_axis_name(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::cost: return "cost";
    case SweepAxis::gamma: return "gamma";
    case SweepAxis::mu: return "mu";
    case SweepAxis::spot: return "spot";
    }
    return "?";
}

PricePair price_pair(const ModelSpec& model, const MarketSpec& market, const GridSpec& grid,
                     std::ostream* surface_dump) {
    ValueSurface s_none = solve(ValueKind::none, model, market, grid);
    ValueSurface s_writer = solve(ValueKind::writer, model, market, grid, surface_dump);
    ValueSurface s_buyer = solve(ValueKind::buyer, model, market, grid);
    PricePair pair;
    pair.writer = indifference_price(ValueKind::writer, s_none, s_writer, market, grid);
    pair.buyer = indifference_price(ValueKind::buyer, s_none, s_buyer, market, grid);
    return pair;
}

std::string csv_metadata(const RunConfig& config, const std::string& context) {
    std::string echo = config.raw;
    if (echo.empty()) echo = nlohmann::json::parse(serialize_config(config)).dump();
    std::string out = "# levitc ";
    out += version_string;
    if (!context.empty()) {
        out += ' ';
        out += context;
    }
    out += "\n# config ";
    out += echo;
    out += '\n';
    return out;
}

PriceRun run_price(const RunConfig& cfg, std::ostream* surface_dump) {
    std::ostringstream os;
    GridSpec grid = build_grid(cfg.model, cfg.market, cfg.N, cfg.sizing);
    PricePair pair = price_pair(cfg.model, cfg.market, grid, surface_dump);

    os << "levitc " << version_string << "\n";
    os << "model: " << family_name(cfg.model.family) << " mu=" << fmtg(cfg.model.mu);
    switch (cfg.model.family) {
    case Family::diffusion:
        os << " sigma=" << fmtg(cfg.model.sigma);
        break;
    case Family::merton:
        os << " sigma=" << fmtg(cfg.model.sigma) << " alpha=" << fmtg(cfg.model.merton_alpha)
           << " xi=" << fmtg(cfg.model.merton_xi) << " lambda=" << fmtg(cfg.model.merton_lambda);
        break;
    case Family::vg:
        os << " theta=" << fmtg(cfg.model.vg_theta) << " sigma_bar=" << fmtg(cfg.model.vg_sigma_bar)
           << " kappa=" << fmtg(cfg.model.vg_kappa);
        break;
    }
    os << "\nmarket: S0=" << fmtg(cfg.market.S0) << " K=" << fmtg(cfg.market.K)
       << " T=" << fmtg(cfg.market.T) << " r=" << fmtg(cfg.market.r)
       << " theta_b=" << fmtg(cfg.market.theta_b) << " theta_s=" << fmtg(cfg.market.theta_s)
       << " gamma=" << fmtg(cfg.market.gamma) << " y0=" << fmtg(cfg.market.y0) << "\n";
    os << "grid: N=" << grid.N << " Lbar=" << grid.Lbar() << " Mbar=" << grid.Mbar()
       << " h_x=" << fmtg(grid.h_x) << " shares=[" << fmtg(grid.y_at(0)) << ", "
       << fmtg(grid.y_at(grid.Mbar() - 1)) << "]\n";
    os << "writer: " << fmt10(pair.writer.price) << "  (" << fmtg(pair.writer.runtime) << "s)\n";
    os << "buyer:  " << fmt10(pair.buyer.price) << "  (" << fmtg(pair.buyer.runtime) << "s)\n";

    switch (cfg.model.family) {
    case Family::diffusion:
        os << "reference closed formula: "
           << fmt10(bs_price(cfg.market.S0, cfg.market.K, cfg.market.T, cfg.market.r,
                             cfg.model.sigma))
           << "\n";
        break;
    case Family::merton:
        os << "reference closed formula: " << fmt10(merton_series_price(cfg.model, cfg.market))
           << "\n";
        break;
    case Family::vg:
        break;
    }
    if (cfg.pide)
        os << "reference pide: " << fmt10(pide_price(cfg.model, cfg.market, *cfg.pide)) << "\n";
    if (cfg.sim) {
        McResult mc = mc_call_price(cfg.model, cfg.market, *cfg.sim);
        os << "reference mc: " << fmt10(mc.price) << " +/- " << fmtg(mc.std_error) << "\n";
    }

    PriceRun run;
    run.pair = pair;
    run.report = os.str();
    run.csv = csv_metadata(cfg, "price");
    run.csv += "kind,price,N,Lbar,Mbar\n";
    for (const PriceResult* r : {&pair.writer, &pair.buyer}) {
        run.csv += kind_name(r->kind);
        run.csv += ',' + fmt10(r->price) + ',' + std::to_string(r->N) + ',' +
                   std::to_string(r->Lbar) + ',' + std::to_string(r->Mbar) + '\n';
    }
    return run;
}

namespace {

std::string table_atm(const RunConfig& cfg) {
    std::string out = csv_metadata(cfg, "table=atm");
    out += "family,closed_formula,pide\n";
    std::string closed;
    switch (cfg.model.family) {
    case Family::diffusion:
        closed = fmt10(bs_price(cfg.market.S0, cfg.market.K, cfg.market.T, cfg.market.r,
                                cfg.model.sigma));
        break;
    case Family::merton:
        closed = fmt10(merton_series_price(cfg.model, cfg.market));
        break;
    case Family::vg:
        closed = ""; // no closed formula wired up for vg
        break;
    }
    const PideConfig pc = cfg.pide ? *cfg.pide : pide_desk_config(cfg.model);
    out += std::string(family_name(cfg.model.family)) + ',' + closed + ',' +
           fmt10(pide_price(cfg.model, cfg.market, pc)) + '\n';
    return out;
}

std::string table_convergence_diffusion(const RunConfig& cfg) {
    require_family(cfg, Family::diffusion, "convergence_diffusion");
    static const std::vector<int> schedule{50, 100, 200, 400, 800, 1600, 3200, 3500};
    const std::vector<int> rows = capped(schedule, cfg.N, id_int, "convergence_diffusion");
    static const double gammas[] = {1e-4, 1e-3, 1e-2};
    std::string out = csv_metadata(cfg, "table=convergence_diffusion");
    out += "N";
    for (double g : gammas) out += ",gamma_" + fmtg(g);
    out += '\n';
    for (int n : rows) {
        out += std::to_string(n);
        for (double g : gammas) {
            MarketSpec mk = with_gamma(with_cost(cfg.market, 0.0), g);
            GridSpec grid = build_grid(cfg.model, mk, n, cfg.sizing);
            out += ',' + fmt10(price_option(ValueKind::writer, cfg.model, mk, grid).price);
        }
        out += '\n';
    }
    return out;
}

std::string table_truncation_merton(const RunConfig& cfg) {
    require_family(cfg, Family::merton, "truncation_merton");
    static const std::vector<int> schedule{50, 100, 150, 200};
    const std::vector<int> rows = capped(schedule, cfg.N, id_int, "truncation_merton");
    static const int lbars[] = {51, 71, 91, 101, 111};
    std::string out = csv_metadata(cfg, "table=truncation_merton");
    out += "N";
    for (int lb : lbars) out += ",Lbar_" + std::to_string(lb);
    out += '\n';
    for (int n : rows) {
        out += std::to_string(n);
        for (int lb : lbars) {
            GridSizing sz = cfg.sizing;
            sz.lbar = lb;
            GridSpec grid = build_grid(cfg.model, cfg.market, n, sz);
            out += ',' + fmt10(price_option(ValueKind::writer, cfg.model, cfg.market, grid).price);
        }
        out += '\n';
    }
    return out;
}

std::string table_convergence_merton(const RunConfig& cfg) {
    require_family(cfg, Family::merton, "convergence_merton");
    struct Row { int n, lbar; };
    static const std::vector<Row> schedule{{50, 61},   {75, 75},   {100, 91}, {125, 97},
                                           {150, 105}, {175, 113}, {200, 121}};
    std::vector<Row> rows;
    for (const Row& r : schedule)
        if (r.n <= cfg.N) rows.push_back(r);
    if (rows.empty())
        throw config_error("grid.N=" + std::to_string(cfg.N) +
                           " is below the smallest row of table convergence_merton");
    std::string out = csv_metadata(cfg, "table=convergence_merton");
    out += "N,Lbar,writer_price\n";
    for (const Row& r : rows) {
        GridSizing sz = cfg.sizing;
        sz.lbar = r.lbar;
        GridSpec grid = build_grid(cfg.model, cfg.market, r.n, sz);
        out += std::to_string(r.n) + ',' + std::to_string(r.lbar) + ',' +
               fmt10(price_option(ValueKind::writer, cfg.model, cfg.market, grid).price) + '\n';
    }
    return out;
}

std::string table_convergence_vg(const RunConfig& cfg) {
    require_family(cfg, Family::vg, "convergence_vg");
    static const std::vector<int> schedule{50, 100, 150, 200, 250, 300, 350};
    const std::vector<int> rows = capped(schedule, cfg.N, id_int, "convergence_vg");
    std::string out = csv_metadata(cfg, "table=convergence_vg");
    out += "N,Lbar,lambda_eps,y_span,writer_price\n";
    for (int n : rows) {
        GridSizing sz = cfg.sizing;
        if (sz.lbar == 0) sz.lbar = 43;
        sz = cover_writer_band(cfg.model, cfg.market, n, sz);
        GridSpec grid = build_grid(cfg.model, cfg.market, n, sz);
        out += std::to_string(n) + ',' + std::to_string(grid.Lbar()) + ',' +
               fmt10(grid.sjp.lambda_eps) + ',' + fmtg(sz.y_span) + ',' +
               fmt10(price_option(ValueKind::writer, cfg.model, cfg.market, grid).price) + '\n';
    }
    return out;
}

std::string table_costs(const RunConfig& cfg) {
    static const double costs[] = {0.0, 0.01, 0.02, 0.03, 0.04};
    std::string out = csv_metadata(cfg, "table=costs");
    out += "family,cost,writer_price\n";
    for (double c : costs) {
        MarketSpec mk = with_cost(cfg.market, c);
        GridSpec grid = build_grid(cfg.model, mk, cfg.N, cfg.sizing);
        out += std::string(family_name(cfg.model.family)) + ',' + fmtg(c) + ',' +
               fmt10(price_option(ValueKind::writer, cfg.model, mk, grid).price) + '\n';
    }
    return out;
}

} // namespace

std::string run_table(const RunConfig& cfg, TableKind kind) {
    switch (kind) {
    case TableKind::atm: return table_atm(cfg);
    case TableKind::convergence_diffusion: return table_convergence_diffusion(cfg);
    case TableKind::truncation_merton: return table_truncation_merton(cfg);
    case TableKind::convergence_merton: return table_convergence_merton(cfg);
    case TableKind::convergence_vg: return table_convergence_vg(cfg);
    case TableKind::costs: return table_costs(cfg);
    }
    throw config_error("unknown table kind");
}

std::string run_sweep(const RunConfig& cfg, SweepAxis axis) {
    std::vector<double> values;
    if (cfg.sweep) {
        values = cfg.sweep->values;
    } else {
        switch (axis) {
        case SweepAxis::cost: values = {0.0, 0.01, 0.02, 0.03, 0.04}; break;
        case SweepAxis::gamma: values = {1e-3, 0.01, 0.04, 0.1, 0.2, 0.3}; break;
        case SweepAxis::mu: values = {0.0, 0.1, 0.2, 0.3}; break;
        case SweepAxis::spot:
            for (double f : {0.8, 0.9, 1.0, 1.1, 1.2}) values.push_back(f * cfg.market.S0);
            break;
        }
    }

    std::string out = csv_metadata(cfg, std::string("sweep axis=") + sweep_axis_name(axis));
    out += std::string(sweep_axis_name(axis)) + ",writer_price,buyer_price\n";
    std::vector<double> writers, buyers;
    for (double v : values) {
        ModelSpec model = cfg.model;
        MarketSpec mk = cfg.market;
        switch (axis) {
        case SweepAxis::cost: mk = with_cost(mk, v); break;
        case SweepAxis::gamma: mk = with_gamma(mk, v); break;
        case SweepAxis::mu: model.mu = v; break;
        case SweepAxis::spot: mk.S0 = v; break;
        }
        model.validate();
        mk.validate();
        GridSpec grid = build_grid(model, mk, cfg.N, cfg.sizing);
        PricePair pair = price_pair(model, mk, grid);
        writers.push_back(pair.writer.price);
        buyers.push_back(pair.buyer.price);
        out += fmtg(v) + (',' + fmt10(pair.writer.price)) + ',' + fmt10(pair.buyer.price) + '\n';
    }
    out += "# monotonicity writer=" + trend_name(writers) + " buyer=" + trend_name(buyers) + '\n';
    return out;
}

CheckReport run_check(const RunConfig& cfg) {
    CheckReport rep;
    std::ostringstream os;
    GridSpec grid = build_grid(cfg.model, cfg.market, cfg.N, cfg.sizing);
    TransitionKernel kernel = transition_kernel(cfg.model, grid);
    ConsistencyReport cons = consistency_report(kernel, cfg.model, grid);

    double total = 0.0, min_p = kernel.p_total.empty() ? 0.0 : kernel.p_total[0];
    for (double p : kernel.p_total) {
        total += p;
        if (p < min_p) min_p = p;
    }
    const double residual = total - 1.0;
    const double lam_dt = kernel.lambda_hat * grid.dt;
    const double margin = 1.0 - lam_dt;

    double nu_total = 0.0;
    for (double nu : kernel.nu_k) nu_total += nu;
    double activity = 0.0;
    switch (cfg.model.family) {
    case Family::diffusion: activity = 0.0; break;
    case Family::merton: activity = cfg.model.merton_lambda; break;
    case Family::vg: activity = grid.sjp.lambda_eps; break;
    }
    const double coverage = activity > 0.0 ? nu_total / activity : 1.0;

    os << "levitc " << version_string << " check\n";
    os << "model: " << family_name(cfg.model.family) << "  grid: N=" << grid.N
       << " Lbar=" << grid.Lbar() << " Mbar=" << grid.Mbar() << " h_x=" << fmtg(grid.h_x)
       << " dt=" << fmtg(grid.dt) << "\n";
    os << "jump domain: [" << fmtg(-grid.B1) << ", " << fmtg(grid.B2) << "]";
    if (grid.family == Family::vg) os << "  small-jump cutoff: " << fmtg(grid.epsilon);
    os << "\n";
    os << "p_diff = {" << fmt10(kernel.p_diff[0]) << ", " << fmt10(kernel.p_diff[1]) << ", "
       << fmt10(kernel.p_diff[2]) << "}\n";
    os << "row sum residual: " << fmtg(residual) << "  min probability: " << fmtg(min_p) << "\n";
    os << "retained activity: " << fmt10(kernel.lambda_hat)
       << "  stability lambda_hat*dt = " << fmtg(lam_dt) << " (margin " << fmtg(margin) << ")\n";
    os << "levy coverage inside domain: " << fmtg(coverage) << "\n";
    os << "local consistency: mean error " << fmtg(cons.mean_error) << ", variance error "
       << fmtg(cons.var_error) << " (in-domain " << fmtg(cons.mean_error_domain) << ", "
       << fmtg(cons.var_error_domain) << ")\n";

    struct Gate { const char* name; bool pass; };
    const Gate gates[] = {
        {"row-sum residual < 1e-12", std::fabs(residual) < 1e-12},
        {"probabilities nonnegative", min_p >= 0.0},
        {"stability margin positive", margin > 0.0},
        {"diffusion branch probabilities valid",
         kernel.p_diff[0] >= 0.0 && kernel.p_diff[1] >= 0.0 && kernel.p_diff[2] >= 0.0},
    };
    for (const Gate& g : gates) {
        os << (g.pass ? "  [ok] " : "  [FAIL] ") << g.name << "\n";
        if (!g.pass) rep.ok = false;
    }
    rep.text = os.str();
    return rep;
}

} // namespace levitc
