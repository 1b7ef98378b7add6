#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuchsian {

struct RunOptions {
    std::string config_path;
    std::string out_dir;  // overrides run.output_dir when nonempty
    unsigned workers = 1;
    std::optional<std::size_t> budget_elements;
};

/// Runs one CLI subcommand (enumerate, exponent, ps, compare, marginal,
/// sectors, fejer, annuli), writing its artifacts and a manifest into the
/// output directory. Returns the artifact file names (manifest excluded).
/// Throws config_error / group_spec_error (exit 3) and resource_error (exit 4);
/// an unknown subcommand throws unknown_subcommand_error (exit 2).
std::vector<std::string> run_subcommand(const std::string& name, const RunOptions& opts);

struct unknown_subcommand_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* tool_version();

}  // namespace fuchsian
