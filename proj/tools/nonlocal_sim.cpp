// SPDX-License-Identifier: Apache-2.0
// nonlocal-sim: run one configured simulation, or compare 1D schemes.
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/sim.hpp"

namespace {
constexpr int kConfigError = 2;
constexpr int kSolverError = 3;
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-local aggregation-diffusion simulator"};
    std::string config_path;
    std::optional<std::string> output;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> compare;
    bool quiet = false;
    app.add_option("--config", config_path, "key = value configuration file")->required();
    app.add_option("--output", output, "output directory (overrides the config)");
    app.add_option("--seed", seed, "random seed (overrides the config)");
    app.add_option("--compare", compare, "run these 1D schemes side by side instead (fd,fv,fem,fem_explicit)")
        ->delimiter(',');
    app.add_flag("--quiet", quiet, "no progress output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    try {
        auto config = nonlocal::SimConfig::load(config_path);
        if (output) config.output = *output;
        if (seed) config.seed = *seed;
        config.validate();
        std::ostream* log = quiet ? nullptr : &std::cout;
        if (!compare.empty()) {
            const auto report = nonlocal::compare_schemes(config, compare, log);
            if (!quiet) std::cout << "report: " << report.string() << '\n';
        } else {
            const auto result = nonlocal::run(config, log);
            if (!quiet) std::cout << "diagnostics: " << result.diagnostics.string() << '\n';
        }
    } catch (const nonlocal::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const nonlocal::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolverError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
