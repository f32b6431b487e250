#pragma once

#include <cmath>
#include <vector>

#include "darksol/errors.hpp"

namespace darksol {

/// Uniform periodic grid on [-length/2, length/2), n a power of two.
struct Grid {
    int n = 0;
    double length = 0.0;

    Grid() = default;
    Grid(int n_, double length_) : n(n_), length(length_) {
        if (n < 16 || (n & (n - 1)) != 0)
            throw ConfigError("grid n must be a power of two >= 16");
        if (!(length > 0.0)) throw ConfigError("grid length must be positive");
    }

    double dx() const { return length / n; }
    double node(int j) const { return -0.5 * length + j * dx(); }
    double half_length() const { return 0.5 * length; }

    /// Map a displacement into the principal periodic cell [-length/2, length/2).
    double wrap(double d) const {
        d = std::fmod(d + 0.5 * length, length);
        if (d < 0.0) d += length;
        return d - 0.5 * length;
    }

    bool operator==(const Grid& o) const { return n == o.n && length == o.length; }
};

/// Trapezoidal sum on the periodic grid (spectrally accurate for smooth
/// periodic integrands): dx * sum.
inline double trapz(const Grid& g, const std::vector<double>& values) {
    double s = 0.0;
    for (double v : values) s += v;
    return s * g.dx();
}

}  // namespace darksol
