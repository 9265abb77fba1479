#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "turbmix/mixture.hpp"
#include "turbmix/spectrum_model.hpp"

namespace turbmix::cli {

/// Resolved run configuration. Every value a command may use lives here;
/// manifests are this struct serialized back to the config format, so a
/// manifest re-run reproduces the outputs byte for byte.
struct RunConfig {
    static constexpr double unset = std::numeric_limits<double>::quiet_NaN();

    // model
    std::string family = "von_karman";
    double u_t = unset;  ///< either u_t directly or T_u * u_0
    double T_u = unset;
    double u_0 = unset;  ///< mean flow velocity; also the frequency-map speed
    double lambda = 0.008;
    double k_d = unset;

    // mixture grid
    std::string grid_mode = "auto";  ///< auto | explicit
    std::string mixture_file;        ///< load an exported table instead
    double k_min = unset;
    double k_max = unset;
    double per_decade = 5.0;
    double l_0 = unset;
    double l_M = unset;
    int M = 0;
    bool renormalize = false;

    // synthesis
    int dimension = 2;
    long n = 256;
    double h = 0.001;
    double rho_0 = 1.0;
    std::uint64_t seed = 20240101;
    int ensemble = 100;
    double amplitude_scale = 1.0;  ///< test hook, hidden flag

    // estimation
    int est_component = 0;
    int est_axis = 0;
    std::string input;  ///< directory of snapshots for `estimate`

    // spectra tables
    double spectra_k_lo = unset;
    double spectra_k_hi = unset;
    int spectra_k_count = 200;
    double spectra_l_lo = unset;
    double spectra_l_hi = unset;
    int spectra_l_count = 200;

    // run
    std::string out_dir = "out";
    bool field_text = false;  ///< also write snapshots as delimited text
    int workers = 0;          ///< 0 = hardware concurrency (capped)

    void load_file(const std::string& path);
    void apply_key(const std::string& key, const std::string& value);
    std::string serialize() const;

    /// Model with u_t resolved from (T_u, u_0) when not given directly.
    SpectrumModel model() const;
    GridPolicy grid_policy() const;
    GaussianMixture mixture() const;

    /// Band for reconstruction-error reporting: the configured k band, or
    /// the band the grid resolves (k_hi = 2 pi/(per_decade l_0), two
    /// decades down) when only an explicit grid was given.
    std::pair<double, double> report_band(const GaussianMixture& mix) const;

    int resolved_workers() const;
};

/// Thrown for malformed or contradictory configuration; mapped to exit 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string version_string();

}  // namespace turbmix::cli
