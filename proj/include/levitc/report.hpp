#pragma once

#include "levitc/config.hpp"
#include "levitc/dp.hpp"

#include <string>

namespace levitc {

enum class TableKind {
    atm,                    // reference prices, closed formula vs pide, all families
    convergence_diffusion,  // N ladder x gamma columns, zero costs
    truncation_merton,      // N rows x Lbar columns
    convergence_merton,     // (N, Lbar) ladder
    convergence_vg,         // N ladder at fixed Lbar, with retained activity
    costs                   // writer price per transaction cost level
};
TableKind table_kind_from_name(const std::string& name);
const char* table_kind_name(TableKind kind);

enum class SweepAxis { cost, gamma, mu, spot };
SweepAxis sweep_axis_from_name(const std::string& name);
const char* sweep_axis_name(SweepAxis axis);

// writer and buyer prices off one shared no-option solve; the optional
// stream receives the writer value-surface dump
struct PricePair {
    PriceResult writer;
    PriceResult buyer;
};
PricePair price_pair(const ModelSpec& model, const MarketSpec& market, const GridSpec& grid,
                     std::ostream* surface_dump = nullptr);

// "# levitc <version> ..." plus a one-line config echo; every CSV starts
// with this. Deliberately carries no timestamps or runtimes so identical
// runs produce identical bytes.
std::string csv_metadata(const RunConfig& config, const std::string& context);

// one computation, both renderings
struct PriceRun {
    PricePair pair;
    std::string report; // human-readable, includes runtimes
    std::string csv;    // deterministic bytes
};
PriceRun run_price(const RunConfig& config, std::ostream* surface_dump = nullptr);
std::string run_table(const RunConfig& config, TableKind kind);
std::string run_sweep(const RunConfig& config, SweepAxis axis);

struct CheckReport {
    std::string text;
    bool ok = true;
};
CheckReport run_check(const RunConfig& config);

} // namespace levitc
