#pragma once

#include <memory>
#include <vector>

#include "darksol/grid.hpp"

namespace darksol {

/// FFT-based periodic differentiation on a fixed grid. Owns FFTW plans and
/// scratch buffers; not safe for concurrent use of one instance, but distinct
/// instances may run in parallel.
class Spectral {
  public:
    explicit Spectral(const Grid& grid);
    ~Spectral();
    Spectral(const Spectral&) = delete;
    Spectral& operator=(const Spectral&) = delete;

    const Grid& grid() const { return grid_; }

    void derivative(const std::vector<double>& in, std::vector<double>& out);
    void second_derivative(const std::vector<double>& in, std::vector<double>& out);
    /// Zero all modes with |k| > (2/3) k_max (2/3-rule de-aliasing).
    void dealias(std::vector<double>& inout);

    std::vector<double> derivative(const std::vector<double>& in) {
        std::vector<double> out(in.size());
        derivative(in, out);
        return out;
    }
    std::vector<double> second_derivative(const std::vector<double>& in) {
        std::vector<double> out(in.size());
        second_derivative(in, out);
        return out;
    }

    /// Dense n x n matrix of the spectral first derivative (antisymmetric).
    std::vector<double> derivative_matrix();

    /// Multiply the rfft spectrum pointwise by g(k) and transform back.
    void apply_multiplier(const std::vector<double>& in, std::vector<double>& out,
                          const std::vector<double>& multiplier);

    /// Wavenumber of rfft bin j (j = 0..n/2): 2 pi j / length.
    double wavenumber(int j) const;
    int n_bins() const { return grid_.n / 2 + 1; }

  private:
    struct Impl;
    Grid grid_;
    std::unique_ptr<Impl> impl_;
};

}  // namespace darksol
