#include "darksol/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace darksol {

namespace {
// FFTW plan creation is not thread-safe.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct Spectral::Impl {
    int n = 0;
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Impl(int n_) : n(n_) {
        std::lock_guard<std::mutex> lock(plan_mutex());
        real = fftw_alloc_real(n);
        spec = fftw_alloc_complex(n / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
    }
    ~Impl() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(spec);
    }
};

Spectral::Spectral(const Grid& grid) : grid_(grid), impl_(std::make_unique<Impl>(grid.n)) {}
Spectral::~Spectral() = default;

double Spectral::wavenumber(int j) const {
    return 2.0 * M_PI * j / grid_.length;
}

void Spectral::derivative(const std::vector<double>& in, std::vector<double>& out) {
    const int n = grid_.n;
    out.resize(n);
    for (int i = 0; i < n; ++i) impl_->real[i] = in[i];
    fftw_execute(impl_->fwd);
    const int nb = n / 2 + 1;
    const double inv = 1.0 / n;
    for (int j = 0; j < nb; ++j) {
        const double k = wavenumber(j);
        const double re = impl_->spec[j][0], im = impl_->spec[j][1];
        impl_->spec[j][0] = -k * im * inv;
        impl_->spec[j][1] = k * re * inv;
    }
    // Nyquist mode of an odd-order derivative is not representable; drop it.
    impl_->spec[nb - 1][0] = 0.0;
    impl_->spec[nb - 1][1] = 0.0;
    fftw_execute(impl_->bwd);
    for (int i = 0; i < n; ++i) out[i] = impl_->real[i];
}

void Spectral::second_derivative(const std::vector<double>& in, std::vector<double>& out) {
    const int n = grid_.n;
    out.resize(n);
    for (int i = 0; i < n; ++i) impl_->real[i] = in[i];
    fftw_execute(impl_->fwd);
    const int nb = n / 2 + 1;
    const double inv = 1.0 / n;
    for (int j = 0; j < nb; ++j) {
        const double k2 = wavenumber(j) * wavenumber(j);
        impl_->spec[j][0] *= -k2 * inv;
        impl_->spec[j][1] *= -k2 * inv;
    }
    fftw_execute(impl_->bwd);
    for (int i = 0; i < n; ++i) out[i] = impl_->real[i];
}

void Spectral::dealias(std::vector<double>& inout) {
    const int n = grid_.n;
    for (int i = 0; i < n; ++i) impl_->real[i] = inout[i];
    fftw_execute(impl_->fwd);
    const int nb = n / 2 + 1;
    const double inv = 1.0 / n;
    const int cutoff = n / 3;  // keep |j| <= n/3
    for (int j = 0; j < nb; ++j) {
        const double mask = (j <= cutoff) ? 1.0 : 0.0;
        impl_->spec[j][0] *= mask * inv;
        impl_->spec[j][1] *= mask * inv;
    }
    fftw_execute(impl_->bwd);
    for (int i = 0; i < n; ++i) inout[i] = impl_->real[i];
}

void Spectral::apply_multiplier(const std::vector<double>& in, std::vector<double>& out,
                                const std::vector<double>& multiplier) {
    const int n = grid_.n;
    out.resize(n);
    for (int i = 0; i < n; ++i) impl_->real[i] = in[i];
    fftw_execute(impl_->fwd);
    const int nb = n / 2 + 1;
    const double inv = 1.0 / n;
    for (int j = 0; j < nb; ++j) {
        impl_->spec[j][0] *= multiplier[j] * inv;
        impl_->spec[j][1] *= multiplier[j] * inv;
    }
    fftw_execute(impl_->bwd);
    for (int i = 0; i < n; ++i) out[i] = impl_->real[i];
}

std::vector<double> Spectral::derivative_matrix() {
    const int n = grid_.n;
    std::vector<double> D(static_cast<std::size_t>(n) * n, 0.0);
    // The spectral derivative is a convolution; one column determines all.
    std::vector<double> e(n, 0.0), col(n);
    e[0] = 1.0;
    derivative(e, col);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            D[static_cast<std::size_t>(i) * n + j] = col[(i - j + n) % n];
    return D;
}

}  // namespace darksol
