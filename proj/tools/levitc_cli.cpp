#include "levitc/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace levitc;

#ifdef LEVITC_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

// exit codes: 0 ok, 1 internal, 2 bad config, 3 infeasible grid, 4 failed check
constexpr int exit_internal = 1;
constexpr int exit_config = 2;
constexpr int exit_grid = 3;
constexpr int exit_check = 4;

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "levitc: cannot write " << path << "\n";
        return false;
    }
    f << text;
    return true;
}

// CSV goes to --out when given, stdout otherwise
bool deliver(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return true;
    }
    return write_file(out_path, text);
}

} // namespace

int main(int argc, char** argv) {
#ifdef LEVITC_HAVE_OPENMP
    if (const char* env = std::getenv("LEVITC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif

    CLI::App app{"utility indifference prices for European calls under proportional transaction costs"};
    app.require_subcommand(1);

    std::string config_path, out_path, table_name, axis_name, dump_path;
    bool strict = false;

    CLI::App* cmd_price = app.add_subcommand("price", "writer and buyer indifference prices");
    cmd_price->add_option("--config", config_path, "config file")->required();
    cmd_price->add_option("--out", out_path, "write a CSV record here");
    cmd_price->add_option("--dump-surface", dump_path, "dump the writer value surface per step");

    CLI::App* cmd_table = app.add_subcommand("table", "price tables on fixed schedules");
    cmd_table
        ->add_option("kind", table_name,
                     "atm | convergence_diffusion | truncation_merton | convergence_merton | "
                     "convergence_vg | costs")
        ->required();
    cmd_table->add_option("--config", config_path, "config file")->required();
    cmd_table->add_option("--out", out_path, "write the CSV here instead of stdout");

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "writer/buyer prices along one axis");
    cmd_sweep->add_option("axis", axis_name, "cost | gamma | mu | spot")->required();
    cmd_sweep->add_option("--config", config_path, "config file")->required();
    cmd_sweep->add_option("--out", out_path, "write the CSV here instead of stdout");

    CLI::App* cmd_check = app.add_subcommand("check", "kernel consistency and stability report");
    cmd_check->add_option("--config", config_path, "config file")->required();
    cmd_check->add_option("--out", out_path, "write the report here as well");
    cmd_check->add_flag("--strict", strict, "exit 4 when any gate fails");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = load_config(config_path);

        if (cmd_price->parsed()) {
            std::ofstream dump;
            std::ostream* dump_stream = nullptr;
            if (!dump_path.empty()) {
                dump.open(dump_path, std::ios::binary);
                if (!dump) {
                    std::cerr << "levitc: cannot write " << dump_path << "\n";
                    return exit_internal;
                }
                dump_stream = &dump;
            }
            PriceRun run = run_price(cfg, dump_stream);
            std::cout << run.report;
            if (!out_path.empty() && !write_file(out_path, run.csv)) return exit_internal;
        } else if (cmd_table->parsed()) {
            const std::string csv = run_table(cfg, table_kind_from_name(table_name));
            if (!deliver(out_path, csv)) return exit_internal;
        } else if (cmd_sweep->parsed()) {
            const std::string csv = run_sweep(cfg, sweep_axis_from_name(axis_name));
            if (!deliver(out_path, csv)) return exit_internal;
        } else if (cmd_check->parsed()) {
            CheckReport rep = run_check(cfg);
            std::cout << rep.text;
            if (!out_path.empty() && !write_file(out_path, rep.text)) return exit_internal;
            if (strict && !rep.ok) return exit_check;
        }
    } catch (const config_error& e) {
        std::cerr << "levitc: " << e.what() << "\n";
        return exit_config;
    } catch (const grid_infeasible& e) {
        std::cerr << "levitc: " << e.what() << "\n";
        return exit_grid;
    } catch (const error& e) {
        std::cerr << "levitc: " << e.what() << "\n";
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "levitc: " << e.what() << "\n";
        return exit_internal;
    }
    return 0;
}
