#include "turbmix/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "turbmix/weighting.hpp"

namespace turbmix {

namespace {
constexpr double pi = std::numbers::pi;

SpectrumModel component_model(const SpectrumModel& target, double l) {
    SpectrumModel g = target;
    g.family = SpectrumFamily::Gaussian;
    g.lambda = l;
    g.k_d = std::numeric_limits<double>::infinity();
    return g;
}
}  // namespace

LengthScaleGrid build_length_scale_grid(double l_0, double l_M, int M) {
    if (!(l_0 > 0.0) || !(l_M > l_0))
        throw std::invalid_argument("length-scale grid requires 0 < l_0 < l_M");
    if (M < 1) throw std::invalid_argument("length-scale grid requires M >= 1");
    const double q = std::pow(l_M / l_0, 1.0 / M);
    LengthScaleGrid grid;
    grid.nodes.resize(M + 1);
    for (int m = 0; m <= M; ++m) grid.nodes[m] = l_0 * std::pow(q, m);
    grid.nodes[M] = l_M;  // pin the endpoint against pow() rounding
    grid.widths.resize(M + 1);
    grid.widths[0] = 0.5 * (grid.nodes[1] - grid.nodes[0]);
    grid.widths[M] = 0.5 * (grid.nodes[M] - grid.nodes[M - 1]);
    for (int m = 1; m < M; ++m)
        grid.widths[m] = 0.5 * (grid.nodes[m + 1] - grid.nodes[m - 1]);
    return grid;
}

GaussianMixture::GaussianMixture(SpectrumModel model,
                                 std::vector<MixtureComponent> components,
                                 GridMeta meta)
    : model_(model), components_(std::move(components)), meta_(meta) {
    if (components_.empty())
        throw std::invalid_argument("mixture must have at least one component");
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto& c = components_[i];
        if (!(c.length_scale > 0.0))
            throw std::invalid_argument("component length scales must be positive");
        if (c.weight < 0.0)
            throw std::invalid_argument("component weights must be non-negative");
        if (i > 0 && !(c.length_scale > components_[i - 1].length_scale))
            throw std::invalid_argument(
                "component length scales must be strictly increasing");
    }
}

double GaussianMixture::sum_weights() const {
    double s = 0.0;
    for (const auto& c : components_) s += c.weight;
    return s;
}

double GaussianMixture::max_length_scale() const {
    return components_.back().length_scale;
}

double GaussianMixture::min_length_scale() const {
    return components_.front().length_scale;
}

GaussianMixture GaussianMixture::renormalized() const {
    const double s = sum_weights();
    if (!(s > 0.0)) throw std::runtime_error("cannot renormalize zero-mass mixture");
    std::vector<MixtureComponent> scaled = components_;
    for (auto& c : scaled) {
        c.weight /= s;
        c.density /= s;
    }
    return GaussianMixture(model_, std::move(scaled), meta_);
}

GaussianMixture discretize(const SpectrumModel& model, const GridPolicy& policy) {
    model.validate();
    if (model.family == SpectrumFamily::Gaussian)
        throw std::invalid_argument(
            "the Gaussian family needs no mixture; use a single component");

    double l_0 = 0.0, l_M = 0.0;
    int M = 0;
    bool drop_zero_weight = false;
    if (const auto* policy_auto = std::get_if<AutoGridPolicy>(&policy)) {
        if (!(policy_auto->k_min > 0.0) || !(policy_auto->k_max > policy_auto->k_min))
            throw std::invalid_argument("auto grid requires 0 < k_min < k_max");
        if (!(policy_auto->per_decade > 0.0))
            throw std::invalid_argument("per_decade must be positive");
        l_M = 4.0 * model.lambda;
        l_0 = 2.0 * pi / (policy_auto->per_decade * policy_auto->k_max);
        if (model.family == SpectrumFamily::ModifiedVonKarman)
            l_0 = std::max(l_0, modified_cutoff_length(model.k_d));
        if (!(l_0 < l_M))
            throw std::invalid_argument(
                "auto grid degenerate: smallest scale not below 4*lambda");
        M = static_cast<int>(std::ceil(
            policy_auto->per_decade *
            std::log10(policy_auto->k_max / policy_auto->k_min)));
        M = std::max(M, 1);
        drop_zero_weight = true;
    } else {
        const auto& e = std::get<ExplicitGridPolicy>(policy);
        l_0 = e.l_0;
        l_M = e.l_M;
        M = e.M;
    }

    const LengthScaleGrid grid = build_length_scale_grid(l_0, l_M, M);
    std::vector<MixtureComponent> comps;
    comps.reserve(grid.nodes.size());
    for (Eigen::Index m = 0; m < grid.nodes.size(); ++m) {
        MixtureComponent c;
        c.length_scale = grid.nodes[m];
        c.density = weight(model, c.length_scale);
        c.width = grid.widths[m];
        c.weight = c.density * c.width;
        if (drop_zero_weight && c.weight == 0.0) continue;
        comps.push_back(c);
    }
    bool any_positive = false;
    for (const auto& c : comps) any_positive |= c.weight > 0.0;
    if (comps.empty() || !any_positive)
        throw std::runtime_error("empty mixture: no component carries weight");
    GridMeta meta{l_0, l_M, M, std::pow(l_M / l_0, 1.0 / M)};
    return GaussianMixture(model, std::move(comps), meta);
}

GaussianMixture mixture_from_nodes(
    const SpectrumModel& model,
    const std::vector<std::pair<double, double>>& nodes) {
    model.validate();
    if (nodes.empty()) throw std::invalid_argument("no mixture nodes given");
    std::vector<MixtureComponent> comps;
    comps.reserve(nodes.size());
    for (const auto& [l, dl] : nodes) {
        if (!(dl > 0.0)) throw std::invalid_argument("node widths must be positive");
        MixtureComponent c;
        c.length_scale = l;
        c.density = weight(model, l);
        c.width = dl;
        c.weight = c.density * dl;
        comps.push_back(c);
    }
    bool any_positive = false;
    for (const auto& c : comps) any_positive |= c.weight > 0.0;
    if (!any_positive)
        throw std::runtime_error("empty mixture: no component carries weight");
    GridMeta meta{nodes.front().first, nodes.back().first,
                  static_cast<int>(nodes.size()) - 1, 1.0};
    return GaussianMixture(model, std::move(comps), meta);
}

double reconstruct_spectrum(const GaussianMixture& mix, double k) {
    double sum = 0.0;
    for (const auto& c : mix.components()) {
        if (c.weight == 0.0) continue;
        sum += c.weight *
               energy_spectrum(component_model(mix.model(), c.length_scale), k);
    }
    return sum;
}

Eigen::ArrayXd reconstruct_spectrum(const GaussianMixture& mix,
                                    const Eigen::Ref<const Eigen::ArrayXd>& k) {
    Eigen::ArrayXd out = Eigen::ArrayXd::Zero(k.size());
    for (const auto& c : mix.components()) {
        if (c.weight == 0.0) continue;
        out += c.weight *
               energy_spectrum(component_model(mix.model(), c.length_scale), k);
    }
    return out;
}

void write_mixture(std::ostream& os, const GaussianMixture& mix) {
    const auto& model = mix.model();
    os.precision(17);
    os << "# turbmix mixture family=" << family_name(model.family)
       << " u_t=" << model.u_t << " lambda=" << model.lambda;
    if (model.family == SpectrumFamily::ModifiedVonKarman)
        os << " k_d=" << model.k_d;
    const auto& meta = mix.grid_meta();
    os << " l_0=" << meta.l_0 << " l_M=" << meta.l_M << " M=" << meta.M
       << " q=" << meta.q << "\n";
    os << "# m l_m f_lm dl_m w_m\n";
    int m = 0;
    for (const auto& c : mix.components()) {
        os << m++ << ' ' << c.length_scale << ' ' << c.density << ' '
           << c.width << ' ' << c.weight << "\n";
    }
}

GaussianMixture read_mixture(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# turbmix mixture", 0) != 0)
        throw std::runtime_error("not a turbmix mixture table");
    SpectrumModel model;
    GridMeta meta;
    {
        std::istringstream head(line.substr(std::string("# turbmix mixture").size()));
        std::string tok;
        while (head >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq);
            const std::string val = tok.substr(eq + 1);
            if (key == "family") model.family = family_from_name(val);
            else if (key == "u_t") model.u_t = std::stod(val);
            else if (key == "lambda") model.lambda = std::stod(val);
            else if (key == "k_d") model.k_d = std::stod(val);
            else if (key == "l_0") meta.l_0 = std::stod(val);
            else if (key == "l_M") meta.l_M = std::stod(val);
            else if (key == "M") meta.M = std::stoi(val);
            else if (key == "q") meta.q = std::stod(val);
        }
    }
    std::vector<MixtureComponent> comps;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        int m;
        MixtureComponent c;
        if (!(row >> m >> c.length_scale >> c.density >> c.width >> c.weight))
            throw std::runtime_error("malformed mixture row: " + line);
        comps.push_back(c);
    }
    return GaussianMixture(model, std::move(comps), meta);
}

}  // namespace turbmix
