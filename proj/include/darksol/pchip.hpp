#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "darksol/errors.hpp"

namespace darksol {

/// Monotone cubic (Fritsch-Carlson) interpolation of tabulated (x, y) with
/// strictly increasing x. Preserves monotonicity of the data, which is what
/// the profile inversion x(eta) -> eta(x) needs.
class Pchip {
  public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n) throw Error("pchip: bad table");
        std::vector<double> h(n - 1), delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            if (!(h[i] > 0.0)) throw Error("pchip: x not increasing");
            delta[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        d_.assign(n, 0.0);
        d_[0] = delta[0];
        d_[n - 1] = delta[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                d_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        // clamp endpoint slopes (standard pchip endpoint treatment)
        if (d_[0] * delta[0] <= 0.0) d_[0] = 0.0;
        else if (std::abs(d_[0]) > 3.0 * std::abs(delta[0])) d_[0] = 3.0 * delta[0];
        if (d_[n - 1] * delta[n - 2] <= 0.0) d_[n - 1] = 0.0;
        else if (std::abs(d_[n - 1]) > 3.0 * std::abs(delta[n - 2]))
            d_[n - 1] = 3.0 * delta[n - 2];
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

    double operator()(double x) const {
        const std::size_t n = x_.size();
        if (x <= x_.front()) return y_.front();
        if (x >= x_.back()) return y_.back();
        std::size_t lo = 0, hi = n - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (x_[mid] <= x) lo = mid;
            else hi = mid;
        }
        const double h = x_[lo + 1] - x_[lo];
        const double t = (x - x_[lo]) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        return h00 * y_[lo] + h10 * h * d_[lo] + h01 * y_[lo + 1] + h11 * h * d_[lo + 1];
    }

  private:
    std::vector<double> x_, y_, d_;
};

/// Cubic Hermite interpolation with caller-supplied exact slopes, clamped to
/// the Fritsch-Carlson region so monotone data stays monotone. With exact
/// slopes of a smooth function the clamp never fires and the error is O(h^4).
class HermiteSpline {
  public:
    HermiteSpline() = default;
    HermiteSpline(std::vector<double> x, std::vector<double> y, std::vector<double> dydx)
        : x_(std::move(x)), y_(std::move(y)), d_(std::move(dydx)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n || d_.size() != n) throw Error("hermite: bad table");
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double h = x_[i + 1] - x_[i];
            if (!(h > 0.0)) throw Error("hermite: x not increasing");
            const double delta = (y_[i + 1] - y_[i]) / h;
            if (delta == 0.0) continue;
            for (std::size_t j = i; j <= i + 1; ++j) {
                if (d_[j] * delta < 0.0) d_[j] = 0.0;
                else if (std::abs(d_[j]) > 3.0 * std::abs(delta)) d_[j] = 3.0 * delta;
            }
        }
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

    double operator()(double x) const {
        if (x <= x_.front()) return y_.front();
        if (x >= x_.back()) return y_.back();
        std::size_t lo = 0, hi = x_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (x_[mid] <= x) lo = mid;
            else hi = mid;
        }
        const double h = x_[lo + 1] - x_[lo];
        const double t = (x - x_[lo]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y_[lo] + (t3 - 2 * t2 + t) * h * d_[lo] +
               (-2 * t3 + 3 * t2) * y_[lo + 1] + (t3 - t2) * h * d_[lo + 1];
    }

  private:
    std::vector<double> x_, y_, d_;
};

}  // namespace darksol
