#pragma once

#include "levitc/grid.hpp"
#include "levitc/levy.hpp"
#include "levitc/market.hpp"
#include "levitc/mc.hpp"
#include "levitc/refprices.hpp"

#include <optional>
#include <string>
#include <vector>

namespace levitc {

// Axis values for cmd_sweep; a {min,max,count} range in the file is
// materialized into explicit values at parse time.
struct SweepRange {
    std::vector<double> values;
};

// One run = one config file: model + market always, the rest per command.
// Parsing is strict: unknown keys and wrong types fail with the offending
// field named.
struct RunConfig {
    ModelSpec model;
    MarketSpec market;
    int N = 100;
    GridSizing sizing;
    std::optional<PideConfig> pide;
    std::optional<SimConfig> sim;
    std::optional<SweepRange> sweep;
    std::string raw; // original text, echoed into CSV metadata
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

// Round-trip form: parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig& config);

} // namespace levitc
