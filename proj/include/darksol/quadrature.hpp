#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace darksol {

namespace detail {
// Gauss-Kronrod 7-15 nodes/weights on [-1,1].
inline constexpr double gk_nodes[8] = {
    0.0,
    0.405845151377397166906606412076961,
    0.741531185599394439863864773280788,
    0.949107912342758524526189684047851,
    0.207784955007898467600689403773245,
    0.586087235467691130294144838258730,
    0.864864423359769072789712788640926,
    0.991455371120812639206854697526329,
};
inline constexpr double gk_wg[4] = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};
inline constexpr double gk_wk[8] = {
    0.209482141084727828012999174891714,
    0.190350578064785409913256402421014,
    0.140653259715525918745189590510238,
    0.063092092629978553290700663189204,
    0.204432940075298892414161999234649,
    0.169004726639267902826583426598550,
    0.104790010322250183839876322541518,
    0.022935322010529224963732008058970,
};

template <class F>
std::pair<double, double> gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double f0 = f(c);
    double g = gk_wg[0] * f0;
    double k = gk_wk[0] * f0;
    for (int i = 1; i < 4; ++i) {
        const double x = h * gk_nodes[i];
        const double s = f(c - x) + f(c + x);
        g += gk_wg[i] * s;
        k += gk_wk[i] * s;
    }
    for (int i = 4; i < 8; ++i) {
        const double x = h * gk_nodes[i];
        k += gk_wk[i] * (f(c - x) + f(c + x));
    }
    return {k * h, std::abs((k - g) * h)};
}
}  // namespace detail

/// Adaptive Gauss-Kronrod 7-15 quadrature with interval bisection.
template <class F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-12,
                 double abs_tol = 1e-15, int max_intervals = 4000) {
    struct Seg { double a, b, value, err; };
    auto [v0, e0] = detail::gk15(f, a, b);
    std::vector<Seg> segs{{a, b, v0, e0}};
    double total = v0, total_err = e0;
    while (static_cast<int>(segs.size()) < max_intervals) {
        if (total_err <= abs_tol + rel_tol * std::abs(total)) break;
        // split the worst segment
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        Seg s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        auto [vl, el] = detail::gk15(f, s.a, mid);
        auto [vr, er] = detail::gk15(f, mid, s.b);
        total += vl + vr - s.value;
        total_err += el + er - s.err;
        segs[worst] = {s.a, mid, vl, el};
        segs.push_back({mid, s.b, vr, er});
    }
    return total;
}

}  // namespace darksol
