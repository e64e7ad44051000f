// Command-line front end: run scenario sweeps, check configs, list presets.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>

#include "ris_noma/config.hpp"
#include "ris_noma/errors.hpp"
#include "ris_noma/runner.hpp"

namespace {

ris_noma::Scenario load(const std::string& preset, const std::string& config)
{
    ris_noma::Scenario s = ris_noma::default_scenario();
    if (!preset.empty()) ris_noma::parse_config_file(ris_noma::preset_path(preset), s);
    if (!config.empty()) ris_noma::parse_config_file(config, s);
    return s;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage, ergodic rate, throughput and energy efficiency of active/passive RIS NOMA and OMA "
                 "downlinks with hardware impairments, by closed form and Monte Carlo."};
    app.set_version_flag("--version", ris_noma::version_string());
    app.require_subcommand(1);

    std::string config, preset, out_dir;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    bool analytic_only = false, mc_only = false;

    auto* run = app.add_subcommand("run", "Evaluate every configured curve over the sweep grid");
    run->add_option("config", config, "Scenario config file (key = value)");
    run->add_option("--out", out_dir, "Output directory")->required();
    auto* t_opt = run->add_option("--trials", trials, "Monte Carlo trials per grid point");
    auto* s_opt = run->add_option("--seed", seed, "Base seed");
    auto* a_flag = run->add_flag("--analytic-only", analytic_only, "Skip Monte Carlo");
    run->add_flag("--mc-only", mc_only, "Skip closed forms")->excludes(a_flag);
    run->add_option("--preset", preset, "Preset loaded before the config file");

    std::string vconfig, vpreset;
    auto* val = app.add_subcommand("validate", "Check a config: guards, derived constants, asymptote status");
    val->add_option("config", vconfig, "Scenario config file");
    val->add_option("--preset", vpreset, "Preset loaded before the config file");

    app.add_subcommand("presets", "List shipped presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("presets")) {
            std::vector<std::string> names;
            for (const auto& e : std::filesystem::directory_iterator(ris_noma::preset_directory()))
                if (e.path().extension() == ".cfg") names.push_back(e.path().stem().string());
            std::sort(names.begin(), names.end());
            for (const auto& n : names) std::cout << n << '\n';
            return 0;
        }
        if (app.got_subcommand("validate")) {
            if (vconfig.empty() && vpreset.empty()) throw ris_noma::ConfigError("validate needs a config or --preset");
            const auto s = load(vpreset, vconfig);
            std::cout << ris_noma::validation_report(s);
            ris_noma::validate(s);
            std::cout << "config valid\n";
            return 0;
        }
        if (config.empty() && preset.empty()) throw ris_noma::ConfigError("run needs a config or --preset");
        ris_noma::RunFlags flags;
        flags.analytic_only = analytic_only;
        flags.mc_only = mc_only;
        if (*t_opt) flags.trials = trials;
        if (*s_opt) flags.seed = seed;
        const auto man = ris_noma::run_scenario(load(preset, config), out_dir, flags);
        for (const auto& w : man.warnings) std::cerr << "warning: " << w << '\n';
        for (const auto& f : man.files) std::cout << (std::filesystem::path(out_dir) / f).string() << '\n';
        return 0;
    } catch (const ris_noma::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
