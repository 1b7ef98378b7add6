#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <thread>

#include "fuchsian/config.hpp"
#include "fuchsian/runners.hpp"
#include "fuchsian/util.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Orbit enumeration and limit-measure experiments for Fuchsian groups"};
    app.set_version_flag("--version", std::string("fuchsian ") + fuchsian::tool_version());

    std::string subcommand;
    fuchsian::RunOptions opts;
    opts.workers = std::max(1u, std::thread::hardware_concurrency());
    std::size_t budget = 0;

    app.add_option("subcommand", subcommand,
                   "one of: enumerate, exponent, ps, compare, marginal, sectors, fejer, annuli")
        ->required();
    app.add_option("--config", opts.config_path, "experiment config file")->required();
    app.add_option("--out", opts.out_dir, "output directory (overrides run.output_dir)");
    app.add_option("--workers", opts.workers, "worker thread count");
    app.add_option("--budget-elements", budget, "orbit element budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (budget > 0) opts.budget_elements = budget;

    try {
        const auto files = fuchsian::run_subcommand(subcommand, opts);
        std::printf("wrote %zu artifact(s) + manifest.json\n", files.size());
        for (const auto& f : files) std::printf("  %s\n", f.c_str());
        return 0;
    } catch (const fuchsian::unknown_subcommand_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const fuchsian::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 3;
    } catch (const fuchsian::group_spec_error& e) {
        std::fprintf(stderr, "group spec error: %s\n", e.what());
        return 3;
    } catch (const fuchsian::resource_error& e) {
        std::fprintf(stderr, "resource error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
