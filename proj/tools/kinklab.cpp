#include "kinklab/config.hpp"
#include "kinklab/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"kinklab: kink construction, internal-mode spectra, Darboux cascades and "
                 "hypothesis certification for even polynomial field theories"};
    app.require_subcommand(1);

    std::string config_path, out_dir, eps_list;
    double grid_L = -1.0, tol = -1.0;
    int grid_n = -1;
    app.add_option("--config", config_path, "flat key = value configuration file");
    app.add_option("--out", out_dir, "output directory for CSV/SVG artifacts");
    app.add_option("--eps", eps_list, "comma-separated epsilon list");
    app.add_option("--grid-L", grid_L, "half length of the spatial grid");
    app.add_option("--grid-n", grid_n, "number of grid nodes (odd)");
    app.add_option("--tol", tol, "tolerance override for verdicts");

    const std::vector<std::string> commands = {"kink",       "spectrum",  "darboux",
                                               "check-repulsivity", "scattering", "resonances",
                                               "fgr",         "phi8-figure", "certify"};
    for (const auto& c : commands) app.add_subcommand(c)->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        kinklab::RunConfig cfg = config_path.empty() ? kinklab::RunConfig()
                                                     : kinklab::RunConfig::from_file(config_path);
        if (!out_dir.empty()) cfg.set("out.dir", out_dir);
        if (!eps_list.empty()) cfg.set("eps.list", eps_list);
        if (grid_L > 0.0) cfg.set("grid.L", std::to_string(grid_L));
        if (grid_n > 0) cfg.set("grid.n", std::to_string(grid_n));
        if (tol >= 0.0) cfg.set("tol", std::to_string(tol));
        return kinklab::cli::run(app.get_subcommands().front()->get_name(), cfg, std::cout, std::cerr);
    } catch (const kinklab::invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
