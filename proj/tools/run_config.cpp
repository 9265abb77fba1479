#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

namespace turbmix::cli {

namespace {
constexpr double pi = std::numbers::pi;

bool is_set(double v) { return !std::isnan(v); }

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("expected a boolean, got '" + v + "'");
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    }
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}
}  // namespace

void RunConfig::load_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        apply_key(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void RunConfig::apply_key(const std::string& key, const std::string& value) {
    if (key == "model.family") family = value;
    else if (key == "model.u_t") u_t = parse_double(key, value);
    else if (key == "model.T_u") T_u = parse_double(key, value);
    else if (key == "model.u_0") u_0 = parse_double(key, value);
    else if (key == "model.lambda") lambda = parse_double(key, value);
    else if (key == "model.k_d") k_d = parse_double(key, value);
    else if (key == "mixture.mode") grid_mode = value;
    else if (key == "mixture.file") mixture_file = value;
    else if (key == "mixture.k_min") k_min = parse_double(key, value);
    else if (key == "mixture.k_max") k_max = parse_double(key, value);
    else if (key == "mixture.per_decade") per_decade = parse_double(key, value);
    else if (key == "mixture.l_0") l_0 = parse_double(key, value);
    else if (key == "mixture.l_M") l_M = parse_double(key, value);
    else if (key == "mixture.M") M = static_cast<int>(parse_long(key, value));
    else if (key == "mixture.renormalize") renormalize = parse_bool(value);
    else if (key == "synthesis.dimension") dimension = static_cast<int>(parse_long(key, value));
    else if (key == "synthesis.n") n = parse_long(key, value);
    else if (key == "synthesis.h") h = parse_double(key, value);
    else if (key == "synthesis.rho_0") rho_0 = parse_double(key, value);
    else if (key == "synthesis.seed") seed = static_cast<std::uint64_t>(parse_long(key, value));
    else if (key == "synthesis.ensemble") ensemble = static_cast<int>(parse_long(key, value));
    else if (key == "synthesis.amplitude_scale") amplitude_scale = parse_double(key, value);
    else if (key == "estimate.component") est_component = static_cast<int>(parse_long(key, value));
    else if (key == "estimate.axis") est_axis = static_cast<int>(parse_long(key, value));
    else if (key == "estimate.input") input = value;
    else if (key == "spectra.k_lo") spectra_k_lo = parse_double(key, value);
    else if (key == "spectra.k_hi") spectra_k_hi = parse_double(key, value);
    else if (key == "spectra.k_count") spectra_k_count = static_cast<int>(parse_long(key, value));
    else if (key == "spectra.l_lo") spectra_l_lo = parse_double(key, value);
    else if (key == "spectra.l_hi") spectra_l_hi = parse_double(key, value);
    else if (key == "spectra.l_count") spectra_l_count = static_cast<int>(parse_long(key, value));
    else if (key == "output.dir") out_dir = value;
    else if (key == "output.field_text") field_text = parse_bool(value);
    else if (key == "run.workers") workers = static_cast<int>(parse_long(key, value));
    else throw ConfigError("unknown config key: " + key);
}

std::string RunConfig::serialize() const {
    std::ostringstream os;
    os.precision(17);
    os << "model.family = " << family << "\n";
    if (is_set(u_t)) os << "model.u_t = " << u_t << "\n";
    if (is_set(T_u)) os << "model.T_u = " << T_u << "\n";
    if (is_set(u_0)) os << "model.u_0 = " << u_0 << "\n";
    os << "model.lambda = " << lambda << "\n";
    if (is_set(k_d)) os << "model.k_d = " << k_d << "\n";
    os << "mixture.mode = " << grid_mode << "\n";
    if (!mixture_file.empty()) os << "mixture.file = " << mixture_file << "\n";
    if (is_set(k_min)) os << "mixture.k_min = " << k_min << "\n";
    if (is_set(k_max)) os << "mixture.k_max = " << k_max << "\n";
    os << "mixture.per_decade = " << per_decade << "\n";
    if (is_set(l_0)) os << "mixture.l_0 = " << l_0 << "\n";
    if (is_set(l_M)) os << "mixture.l_M = " << l_M << "\n";
    if (M > 0) os << "mixture.M = " << M << "\n";
    os << "mixture.renormalize = " << (renormalize ? "true" : "false") << "\n";
    os << "synthesis.dimension = " << dimension << "\n";
    os << "synthesis.n = " << n << "\n";
    os << "synthesis.h = " << h << "\n";
    os << "synthesis.rho_0 = " << rho_0 << "\n";
    os << "synthesis.seed = " << seed << "\n";
    os << "synthesis.ensemble = " << ensemble << "\n";
    if (amplitude_scale != 1.0)
        os << "synthesis.amplitude_scale = " << amplitude_scale << "\n";
    os << "estimate.component = " << est_component << "\n";
    os << "estimate.axis = " << est_axis << "\n";
    if (!input.empty()) os << "estimate.input = " << input << "\n";
    if (is_set(spectra_k_lo)) os << "spectra.k_lo = " << spectra_k_lo << "\n";
    if (is_set(spectra_k_hi)) os << "spectra.k_hi = " << spectra_k_hi << "\n";
    os << "spectra.k_count = " << spectra_k_count << "\n";
    if (is_set(spectra_l_lo)) os << "spectra.l_lo = " << spectra_l_lo << "\n";
    if (is_set(spectra_l_hi)) os << "spectra.l_hi = " << spectra_l_hi << "\n";
    os << "spectra.l_count = " << spectra_l_count << "\n";
    os << "output.dir = " << out_dir << "\n";
    os << "output.field_text = " << (field_text ? "true" : "false") << "\n";
    os << "run.workers = " << workers << "\n";
    return os.str();
}

SpectrumModel RunConfig::model() const {
    SpectrumModel m;
    try {
        m.family = family_from_name(family);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (is_set(u_t)) {
        m.u_t = u_t;
    } else if (is_set(T_u) && is_set(u_0)) {
        TurbulenceIntensitySpec ti{T_u, u_0};
        try {
            m.u_t = ti.turbulent_velocity();
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
    } else {
        throw ConfigError(
            "set model.u_t, or both model.T_u and model.u_0 (u_t = T_u * u_0)");
    }
    m.lambda = lambda;
    if (m.family == SpectrumFamily::ModifiedVonKarman) {
        if (!is_set(k_d))
            throw ConfigError("model.k_d is required for the modified family");
        m.k_d = k_d;
    }
    try {
        m.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return m;
}

GridPolicy RunConfig::grid_policy() const {
    if (grid_mode == "auto") {
        AutoGridPolicy p;
        p.k_max = is_set(k_max) ? k_max : 2.0 * pi / lambda;
        p.k_min = is_set(k_min) ? k_min : p.k_max / 100.0;
        p.per_decade = per_decade;
        return p;
    }
    if (grid_mode == "explicit") {
        if (!is_set(l_0) || !is_set(l_M) || M < 1)
            throw ConfigError(
                "explicit grid needs mixture.l_0, mixture.l_M and mixture.M >= 1");
        return ExplicitGridPolicy{l_0, l_M, M};
    }
    throw ConfigError("mixture.mode must be 'auto' or 'explicit'");
}

GaussianMixture RunConfig::mixture() const {
    if (!mixture_file.empty()) {
        std::ifstream is(mixture_file);
        if (!is) throw ConfigError("cannot open mixture table: " + mixture_file);
        GaussianMixture mix = read_mixture(is);
        return renormalize ? mix.renormalized() : mix;
    }
    GaussianMixture mix = discretize(model(), grid_policy());
    return renormalize ? mix.renormalized() : mix;
}

std::pair<double, double> RunConfig::report_band(const GaussianMixture& mix) const {
    if (is_set(k_min) && is_set(k_max)) return {k_min, k_max};
    const double hi = 2.0 * pi / (per_decade * mix.grid_meta().l_0);
    return {hi / 100.0, hi};
}

int RunConfig::resolved_workers() const {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

std::string version_string() {
#ifdef TURBMIX_VERSION
    return TURBMIX_VERSION;
#else
    return "unknown";
#endif
}

}  // namespace turbmix::cli
