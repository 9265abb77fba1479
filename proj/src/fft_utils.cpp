#include "turbmix/fft_utils.hpp"

#include <numbers>
#include <unsupported/Eigen/FFT>

namespace turbmix {

Eigen::ArrayXd fft_wavenumbers(Eigen::Index n, double h) {
    Eigen::ArrayXd k(n);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * h);
    for (Eigen::Index i = 0; i < n; ++i)
        k[i] = dk * static_cast<double>(i <= n / 2 ? i : i - n);
    return k;
}

namespace {

// Runs fn over every grid line along `axis`, where a line is the strided
// slice {base + j*stride : j in [0, n_axis)}.
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

void apply_axis_multiplier(ScalarField& field, int axis,
                           const Eigen::VectorXcd& multiplier) {
    field.grid.validate();
    const Eigen::Index n = field.grid.n[axis];
    if (multiplier.size() != n)
        throw std::invalid_argument("multiplier length must match axis size");
    Eigen::FFT<double> fft;
    if (n % 2 == 0) {
        // real half-spectrum transforms; the upper bins of a Hermitian
        // multiplier are implied by conjugate symmetry
        fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
        const Eigen::VectorXcd mult_half = multiplier.head(n / 2 + 1);
        Eigen::VectorXd line(n);
        Eigen::VectorXcd hat(n / 2 + 1);
        for_each_line(field.grid, axis,
                      [&](Eigen::Index base, Eigen::Index stride) {
            for (Eigen::Index j = 0; j < n; ++j)
                line[j] = field.values[base + j * stride];
            fft.fwd(hat, line);
            hat.array() *= mult_half.array();
            fft.inv(line, hat);
            for (Eigen::Index j = 0; j < n; ++j)
                field.values[base + j * stride] = line[j];
        });
        return;
    }
    Eigen::VectorXcd line(n), hat(n);
    for_each_line(field.grid, axis, [&](Eigen::Index base, Eigen::Index stride) {
        for (Eigen::Index j = 0; j < n; ++j)
            line[j] = std::complex<double>(field.values[base + j * stride], 0.0);
        fft.fwd(hat, line);
        hat.array() *= multiplier.array();
        fft.inv(line, hat);
        for (Eigen::Index j = 0; j < n; ++j)
            field.values[base + j * stride] = line[j].real();
    });
}

void differentiate_axis(ScalarField& field, int axis) {
    const Eigen::Index n = field.grid.n[axis];
    const Eigen::ArrayXd k = fft_wavenumbers(n, field.grid.h[axis]);
    Eigen::VectorXcd mult(n);
    for (Eigen::Index i = 0; i < n; ++i)
        mult[i] = std::complex<double>(0.0, k[i]);
    if (n % 2 == 0) mult[n / 2] = 0.0;  // odd-derivative Nyquist convention
    apply_axis_multiplier(field, axis, mult);
}

Eigen::VectorXcd kernel_transfer(const Eigen::ArrayXd& kernel_samples) {
    Eigen::FFT<double> fft;
    Eigen::VectorXcd in(kernel_samples.size()), out(kernel_samples.size());
    for (Eigen::Index i = 0; i < kernel_samples.size(); ++i)
        in[i] = std::complex<double>(kernel_samples[i], 0.0);
    fft.fwd(out, in);
    return out;
}

}  // namespace turbmix
