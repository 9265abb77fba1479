// turbmix: reconstruct isotropic turbulence spectra as weighted Gaussian
// mixtures and synthesize divergence-free stochastic velocity fields.
#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "run_config.hpp"

namespace {

using turbmix::cli::ConfigError;
using turbmix::cli::RunConfig;

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string seed;
    int ensemble = -1;
    int workers = -1;
    bool renormalize = false;
    double amplitude_scale = 0.0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "configuration file");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--seed", flags.seed, "base random seed (u64)");
    cmd->add_option("--ensemble", flags.ensemble, "ensemble size");
    cmd->add_option("--workers", flags.workers, "worker pool size");
    cmd->add_flag("--renormalize", flags.renormalize,
                  "scale mixture weights to unit sum");
    cmd->add_option("--amplitude-scale", flags.amplitude_scale)->group("");
}

RunConfig resolve(const CommonFlags& flags) {
    RunConfig config;
    if (!flags.config_path.empty()) config.load_file(flags.config_path);
    if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
    if (!flags.seed.empty()) {
        try {
            config.seed = std::stoull(flags.seed);
        } catch (const std::exception&) {
            throw ConfigError("--seed expects an unsigned integer");
        }
    }
    if (flags.ensemble >= 0) config.ensemble = flags.ensemble;
    if (flags.workers >= 0) config.workers = flags.workers;
    if (flags.renormalize) config.renormalize = true;
    if (flags.amplitude_scale != 0.0) config.amplitude_scale = flags.amplitude_scale;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"turbulence spectrum mixtures and stochastic field synthesis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", turbmix::cli::version_string());

    CommonFlags flags;
    auto* spectra = app.add_subcommand(
        "spectra", "tabulate the model spectrum and weighting density");
    auto* mixture = app.add_subcommand(
        "mixture", "discretize the weighting into a Gaussian mixture");
    auto* synthesize = app.add_subcommand(
        "synthesize", "generate stochastic velocity field snapshots");
    auto* estimate = app.add_subcommand(
        "estimate", "estimate one-dimensional spectra from snapshots");
    auto* validate = app.add_subcommand(
        "validate", "run the synthesis chain and verify it against targets");
    for (auto* cmd : {spectra, mixture, synthesize, estimate, validate})
        add_common(cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const RunConfig config = resolve(flags);
        if (spectra->parsed()) return turbmix::cli::cmd_spectra(config);
        if (mixture->parsed()) return turbmix::cli::cmd_mixture(config);
        if (synthesize->parsed()) return turbmix::cli::cmd_synthesize(config);
        if (estimate->parsed()) return turbmix::cli::cmd_estimate(config);
        if (validate->parsed()) return turbmix::cli::cmd_validate(config);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
