#include "turbmix/estimation.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

namespace turbmix {

namespace {
constexpr double pi = std::numbers::pi;

void check_inputs(const std::vector<VectorField>& fields, int component,
                  int axis) {
    if (fields.empty()) throw std::invalid_argument("need at least one field");
    const FieldGrid& grid = fields.front().grid;
    grid.validate();
    if (!grid.periodic)
        throw std::invalid_argument("estimator requires a periodic grid");
    if (axis < 0 || axis >= grid.dimension)
        throw std::invalid_argument("axis out of range");
    for (const auto& f : fields) {
        if (!(f.grid == grid))
            throw std::invalid_argument("mismatched grids across ensemble");
        if (component < 0 || component >= static_cast<int>(f.components.size()))
            throw std::invalid_argument("component out of range");
    }
}

template <typename Fn>
void for_each_line(const FieldGrid& grid, int axis, Fn&& fn) {
    const Eigen::Index n_axis = grid.n[axis];
    const Eigen::Index stride = grid.stride(axis);
    const Eigen::Index block = stride * n_axis;
    const Eigen::Index total = grid.node_count();
    for (Eigen::Index outer = 0; outer < total; outer += block)
        for (Eigen::Index inner = 0; inner < stride; ++inner)
            fn(outer + inner, stride);
}
}  // namespace

SpectrumEstimate estimate_one_d_spectrum(const std::vector<VectorField>& fields,
                                         int component, int axis) {
    check_inputs(fields, component, axis);
    const FieldGrid& grid = fields.front().grid;
    const Eigen::Index n = grid.n[axis];
    const Eigen::Index n_bins = n / 2;
    const double dk = 2.0 * pi / grid.domain_length(axis);

    Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(n_bins);
    Eigen::ArrayXd sum_sq = Eigen::ArrayXd::Zero(n_bins);
    double var_acc = 0.0;
    long line_count = 0;

    Eigen::FFT<double> fft;
    const bool real_path = n % 2 == 0;
    if (real_path) fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
    Eigen::VectorXd rline(n);
    Eigen::VectorXcd line(n), hat(n);
    Eigen::ArrayXd dens(n_bins);
    for (const auto& field : fields) {
        const Eigen::ArrayXd& v = field.components[component];
        for_each_line(grid, axis, [&](Eigen::Index base, Eigen::Index stride) {
            double mean = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) mean += v[base + j * stride];
            mean /= static_cast<double>(n);
            if (real_path) {
                for (Eigen::Index j = 0; j < n; ++j)
                    rline[j] = v[base + j * stride] - mean;
                fft.fwd(hat, rline);
            } else {
                for (Eigen::Index j = 0; j < n; ++j)
                    line[j] = std::complex<double>(v[base + j * stride] - mean, 0.0);
                fft.fwd(hat, line);
            }
            const double norm = 1.0 / (static_cast<double>(n) * n);
            for (Eigen::Index q = 1; q <= n_bins; ++q) {
                const double p = std::norm(hat[q]) * norm;
                const double doubled = (2 * q == n) ? p : 2.0 * p;
                dens[q - 1] = doubled / dk;
            }
            sum += dens;
            sum_sq += dens.square();
            var_acc += dens.sum() * dk;
            ++line_count;
        });
    }

    SpectrumEstimate est;
    est.k1_axis = dk * Eigen::ArrayXd::LinSpaced(n_bins, 1, static_cast<double>(n_bins));
    est.density = sum / static_cast<double>(line_count);
    Eigen::ArrayXd variance =
        (sum_sq / static_cast<double>(line_count) - est.density.square())
            .max(0.0);
    est.standard_error =
        (variance / static_cast<double>(line_count)).sqrt();
    est.ensemble_count = static_cast<int>(fields.size());
    est.component = component;
    est.axis = axis;
    est.sample_variance = var_acc / static_cast<double>(line_count);
    return est;
}

CorrelationEstimate estimate_correlation(const std::vector<VectorField>& fields,
                                         int component, int axis,
                                         double max_lag) {
    check_inputs(fields, component, axis);
    const FieldGrid& grid = fields.front().grid;
    const Eigen::Index n = grid.n[axis];
    const double h = grid.h[axis];
    if (!(max_lag > 0.0) || max_lag > 0.5 * grid.domain_length(axis))
        throw std::invalid_argument("max_lag must lie in (0, domain/2]");
    const Eigen::Index n_lags =
        std::min<Eigen::Index>(static_cast<Eigen::Index>(max_lag / h) + 1, n / 2 + 1);

    Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(n_lags);
    long line_count = 0;
    Eigen::FFT<double> fft;
    const bool real_path = n % 2 == 0;
    if (real_path) fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
    const Eigen::Index n_hat = real_path ? n / 2 + 1 : n;
    Eigen::VectorXd rline(n);
    Eigen::VectorXcd line(n), hat(n_hat);
    for (const auto& field : fields) {
        const Eigen::ArrayXd& v = field.components[component];
        for_each_line(grid, axis, [&](Eigen::Index base, Eigen::Index stride) {
            if (real_path) {
                for (Eigen::Index j = 0; j < n; ++j)
                    rline[j] = v[base + j * stride];
                fft.fwd(hat, rline);
                for (Eigen::Index j = 0; j < n_hat; ++j)
                    hat[j] = std::complex<double>(std::norm(hat[j]), 0.0);
                fft.inv(rline, hat);  // circular autocorrelation * n
                const double norm = 1.0 / static_cast<double>(n);
                for (Eigen::Index r = 0; r < n_lags; ++r)
                    acc[r] += rline[r] * norm;
            } else {
                for (Eigen::Index j = 0; j < n; ++j)
                    line[j] = std::complex<double>(v[base + j * stride], 0.0);
                fft.fwd(hat, line);
                for (Eigen::Index j = 0; j < n; ++j)
                    hat[j] = std::complex<double>(std::norm(hat[j]), 0.0);
                fft.inv(line, hat);
                const double norm = 1.0 / static_cast<double>(n);
                for (Eigen::Index r = 0; r < n_lags; ++r)
                    acc[r] += line[r].real() * norm;
            }
            ++line_count;
        });
    }
    acc /= static_cast<double>(line_count);
    CorrelationEstimate est;
    est.lag = h * Eigen::ArrayXd::LinSpaced(n_lags, 0, static_cast<double>(n_lags - 1));
    if (!(acc[0] > 0.0)) throw std::runtime_error("zero-variance field");
    est.value = acc / acc[0];
    est.ensemble_count = static_cast<int>(fields.size());
    return est;
}

double integral_length_scale(const CorrelationEstimate& correlation) {
    const Eigen::ArrayXd& rho = correlation.value;
    const Eigen::ArrayXd& lag = correlation.lag;
    if (rho.size() < 3) throw std::invalid_argument("correlation too short");
    if (rho.minCoeff() > 0.05)
        throw std::runtime_error(
            "non-decaying correlation: minimum value " +
            std::to_string(rho.minCoeff()) +
            " stays above 0.05 within max_lag; enlarge the domain or max_lag");
    Eigen::Index stop = rho.size();
    for (Eigen::Index i = 1; i < rho.size(); ++i) {
        if (rho[i] < 0.0) {
            stop = i;
            break;
        }
    }
    double integral = 0.0;
    for (Eigen::Index i = 1; i < stop; ++i)
        integral += 0.5 * (rho[i] + rho[i - 1]) * (lag[i] - lag[i - 1]);
    return integral;
}

void write_spectrum_estimate(std::ostream& os, const SpectrumEstimate& est,
                             const std::string& metadata, double u_0) {
    os.precision(17);
    os << "# turbmix spectrum estimate " << metadata << "\n";
    os << "# ensemble=" << est.ensemble_count << " component=" << est.component
       << " axis=" << est.axis << " sample_variance=" << est.sample_variance
       << "\n";
    if (u_0 > 0.0)
        os << "# columns: k1[rad/m] frequency[Hz] density[m^3/s^2] psd[m^2/s^2/Hz] standard_error\n";
    else
        os << "# columns: k1[rad/m] density[m^3/s^2] standard_error\n";
    for (Eigen::Index i = 0; i < est.k1_axis.size(); ++i) {
        os << est.k1_axis[i] << ' ';
        if (u_0 > 0.0)
            os << est.k1_axis[i] * u_0 / (2.0 * pi) << ' ' << est.density[i]
               << ' ' << est.density[i] * 2.0 * pi / u_0 << ' ';
        else
            os << est.density[i] << ' ';
        os << est.standard_error[i] << "\n";
    }
}

}  // namespace turbmix
