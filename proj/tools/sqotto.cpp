// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

// sqotto: analytic curves, Monte-Carlo cycles and squeeze calibration of the
// squeezed-bath Otto engine in a tapered ion trap.
//
// Exit codes: 0 ok, 2 config error, 3 infeasible scenario, 4 numerical failure.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sqotto/errors.hpp"
#include "sqotto/experiments.hpp"
#include "sqotto/scenario.hpp"

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> ensemble;
    std::optional<int> repetitions;
};

using Command = std::function<sqotto::CommandResult(const sqotto::Scenario&, const std::string&)>;

int run(const Flags& flags, const Command& command, bool calibration_ensemble)
{
    try {
        sqotto::Scenario scenario = flags.config.empty() ? sqotto::Scenario{}
                                                         : sqotto::load_scenario(flags.config);
        if (flags.seed)
            scenario.seed = *flags.seed;
        if (flags.ensemble)
            (calibration_ensemble ? scenario.calibration_ensemble : scenario.ensemble) = *flags.ensemble;
        if (flags.repetitions)
            scenario.repetitions = *flags.repetitions;
        scenario.validate();

        const std::string out_dir = sqotto::resolve_output_dir(flags.out);
        const sqotto::CommandResult result = command(scenario, out_dir);
        for (const auto& f : result.files)
            std::cout << "wrote " << f << '\n';
        std::cout << result.message << '\n';
        return result.exit_code;
    } catch (const sqotto::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return sqotto::exit_config_error;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return sqotto::exit_config_error;
    } catch (const sqotto::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return sqotto::exit_infeasible;
    } catch (const sqotto::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return sqotto::exit_numerical_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return sqotto::exit_numerical_failure;
    }
}

void add_flags(CLI::App* app, Flags& flags)
{
    app->add_option("--config", flags.config, "INI scenario file")->check(CLI::ExistingFile);
    app->add_option("--seed", flags.seed, "master seed (mandatory for simulate/calibrate)");
    app->add_option("--out", flags.out, "output directory (default $SQOTTO_OUTPUT_DIR or sqotto_out)");
    app->add_option("--ensemble", flags.ensemble, "trajectories per ensemble")->check(CLI::PositiveNumber);
    app->add_option("--repetitions", flags.repetitions, "cycles per point")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Squeezed-bath Otto engine in a tapered ion trap"};
    app.set_version_flag("--version", std::string(SQOTTO_VERSION));
    app.require_subcommand(1);
    Flags flags;

    int status = 0;
    const auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                          Command command, bool calibration_ensemble = false) {
        CLI::App* sub = parent->add_subcommand(name, help);
        add_flags(sub, flags);
        sub->callback([&, command, calibration_ensemble] {
            status = run(flags, command, calibration_ensemble);
        });
    };

    CLI::App* analytic = app.add_subcommand("analytic", "closed-form curves");
    analytic->require_subcommand(1);
    leaf(analytic, "fig1", "efficiency at max power versus squeezing", sqotto::cmd_analytic_fig1);
    leaf(analytic, "table", "closed forms next to numeric power maximisation", sqotto::cmd_analytic_table);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo simulation");
    simulate->require_subcommand(1);
    leaf(simulate, "cycle", "thermal and squeezed cycle traces", sqotto::cmd_simulate_cycle);
    leaf(simulate, "sweep", "efficiency versus squeezing", sqotto::cmd_simulate_sweep);

    leaf(&app, "calibrate", "squeeze strength calibration", sqotto::cmd_calibrate, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return sqotto::exit_config_error;
    }
    return status;
}
