#include "darksol/profile.hpp"

#include <algorithm>
#include <cmath>

#include "darksol/quadrature.hpp"

namespace darksol {

namespace {
constexpr int kScanPoints = 10000;
constexpr double kBisectTol = 1e-13;

double default_step(const Nonlinearity& nl, double c) {
    return 1e-3 * (sound_speed(nl) - c);
}
}  // namespace

double find_xi(const Nonlinearity& nl, double c) {
    const double cs = sound_speed(nl);
    if (!(c > 0.0 && c < cs))
        throw NoZero("speed outside (0, c_s)");
    NcPolynomial N(nl, c);
    // N < 0 just right of 0 (N'' (0) = -2 nu^2); scan for the first sign change.
    const double hi_end = 1.0 - 1e-9;
    double lo = 0.0, hi = 0.0;
    double prev_x = 0.0;
    bool seen_negative = false;
    for (int i = 1; i <= kScanPoints; ++i) {
        const double x = hi_end * i / kScanPoints;
        const double val = N.value(x);
        if (val < 0.0) {
            seen_negative = true;
            prev_x = x;
        } else if (seen_negative) {
            lo = prev_x;
            hi = x;
            break;
        } else {
            // sign change before the first scan point: refine towards 0
            double xl = x;
            while (xl > 1e-14 && N.value(xl) >= 0.0) xl *= 0.5;
            if (N.value(xl) >= 0.0) throw NoZero("no negative region near 0");
            lo = xl;
            hi = x;
            seen_negative = true;
            break;
        }
    }
    if (hi == 0.0) throw NoZero("no sign change of N_c on (0, 1)");
    while (hi - lo > kBisectTol) {
        const double mid = 0.5 * (lo + hi);
        if (N.value(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    double xi = 0.5 * (lo + hi);
    if (!(N.deriv(xi) > 0.0)) throw NoZero("N_c'(xi) <= 0 at the first zero");
    // polish to round-off so the turning-point substitution stays clean
    for (int it = 0; it < 3; ++it) {
        const double step = N.value(xi) / N.deriv(xi);
        const double next = xi - step;
        if (!(next > lo - kBisectTol && next < hi + kBisectTol)) break;
        xi = next;
        if (std::abs(step) < 1e-17) break;
    }
    return xi;
}

double xi_derivative(const Nonlinearity& nl, double c) {
    const double xi = find_xi(nl, c);
    NcPolynomial N(nl, c);
    return -2.0 * c * xi * xi / N.deriv(xi);
}

SolitonProfile::SolitonProfile(const Nonlinearity& nl, double c)
    : nl_(&nl), c_(c) {
    cs_ = sound_speed(nl);
    nu_ = std::sqrt(cs_ * cs_ - c * c);
    xi_ = find_xi(nl, c);
    tail_floor_ = 1e-10 * xi_;
    NcPolynomial N(nl, c);

    auto sqrt_negN = [&](double z) { return std::sqrt(std::max(-N.value(z), 0.0)); };

    // Upper half eta in [xi/2, xi]: substitute z = xi - s^2 so the integrand
    // 2s/sqrt(-N(xi - s^2)) = 2/sqrt(turning ratio) is smooth through the
    // turning point.
    const int m1 = 256;
    const double s1 = std::sqrt(0.5 * xi_);
    auto upper_integrand = [&](double s) {
        return 2.0 / std::sqrt(std::max(N.turning_ratio(xi_, s), 1e-300));
    };
    std::vector<double> xs, etas, detas;
    xs.reserve(m1 + 600);
    etas.reserve(m1 + 600);
    detas.reserve(m1 + 600);
    xs.push_back(0.0);
    etas.push_back(xi_);
    detas.push_back(0.0);
    double x = 0.0;
    for (int i = 1; i <= m1; ++i) {
        const double sa = s1 * (i - 1) / m1, sb = s1 * i / m1;
        x += integrate(upper_integrand, sa, sb, 1e-13, 1e-16);
        const double eta = xi_ - sb * sb;
        xs.push_back(x);
        etas.push_back(eta);
        detas.push_back(-sqrt_negN(eta));
    }
    // Lower half eta in [tail_floor, xi/2]: geometric knots handle the
    // logarithmic divergence of x(eta) at eta -> 0.
    const int m2 = 1024;
    const double ratio = std::pow(tail_floor_ / (0.5 * xi_), 1.0 / m2);
    auto lower_integrand = [&](double z) { return 1.0 / sqrt_negN(z); };
    double eta_hi = 0.5 * xi_;
    for (int i = 1; i <= m2; ++i) {
        const double eta_lo = 0.5 * xi_ * std::pow(ratio, i);
        x += integrate(lower_integrand, eta_lo, eta_hi, 1e-13, 1e-16);
        xs.push_back(x);
        etas.push_back(eta_lo);
        detas.push_back(-sqrt_negN(eta_lo));
        eta_hi = eta_lo;
    }
    x_tail_ = x;
    eta_of_x_ = HermiteSpline(std::move(xs), std::move(etas), std::move(detas));
}

double SolitonProfile::eta_at(double x) const {
    x = std::abs(x);
    if (x <= x_tail_) return eta_of_x_(x);
    return tail_floor_ * std::exp(-nu_ * (x - x_tail_));
}

double SolitonProfile::deta_at(double x) const {
    const double ax = std::abs(x);
    double d;
    if (ax <= x_tail_) {
        NcPolynomial N(*nl_, c_);
        d = -std::sqrt(std::max(-N.value(eta_of_x_(ax)), 0.0));
    } else {
        d = -nu_ * eta_at(ax);
    }
    return x >= 0.0 ? d : -d;
}

double SolitonProfile::d2eta_at(double x) const {
    NcPolynomial N(*nl_, c_);
    return -0.5 * N.deriv(eta_at(x));
}

double SolitonProfile::v_at(double x) const {
    const double e = eta_at(x);
    return c_ * e / (2.0 * (1.0 - e));
}

double SolitonProfile::dv_at(double x) const {
    const double e = eta_at(x);
    const double om = 1.0 - e;
    return c_ * deta_at(x) / (2.0 * om * om);
}

double SolitonProfile::d2v_at(double x) const {
    const double e = eta_at(x);
    const double de = deta_at(x);
    const double om = 1.0 - e;
    return c_ * (d2eta_at(x) / (2.0 * om * om) + de * de / (om * om * om));
}

void SolitonProfile::check_grid(const Grid& g) const {
    const double hl = g.half_length();
    if (hl < 10.0 / nu_)
        throw GridTooSmall("half-length " + std::to_string(hl) + " < 10/nu = " +
                           std::to_string(10.0 / nu_));
    const double boundary = eta_at(hl);
    const double expected = std::max(xi_ * std::exp(-nu_ * hl), 1e-12 * xi_);
    if (boundary > 10.0 * expected)
        throw GridTooSmall("boundary eta exceeds the decay expectation");
}

HydroField SolitonProfile::sample(const Grid& g, double a) const {
    check_grid(g);
    HydroField f(g);
    for (int j = 0; j < g.n; ++j) {
        const double d = g.wrap(g.node(j) - a);
        f.eta[j] = eta_at(d);
        f.v[j] = v_at(d);
    }
    return f;
}

void SolitonProfile::add_to(HydroField& f, double a) const {
    for (int j = 0; j < f.grid.n; ++j) {
        const double d = f.grid.wrap(f.grid.node(j) - a);
        f.eta[j] += eta_at(d);
        f.v[j] += v_at(d);
    }
}

ProfileBuild build_profile(const Nonlinearity& nl, double c, const Grid& g) {
    SolitonProfile p(nl, c);
    HydroField f = p.sample(g, 0.0);
    return ProfileBuild{std::move(p), std::move(f)};
}

HydroField profile_c_derivative(const Nonlinearity& nl, double c, const Grid& g,
                                double h) {
    if (h <= 0.0) h = default_step(nl, c);
    const ProfileBuild hi = build_profile(nl, c + h, g);
    const ProfileBuild lo = build_profile(nl, c - h, g);
    HydroField d(g);
    for (int j = 0; j < g.n; ++j) {
        d.eta[j] = (hi.field.eta[j] - lo.field.eta[j]) / (2.0 * h);
        d.v[j] = (hi.field.v[j] - lo.field.v[j]) / (2.0 * h);
    }
    return d;
}

double soliton_momentum(const Nonlinearity& nl, double c) {
    const double xi = find_xi(nl, c);
    NcPolynomial N(nl, c);
    auto g = [&](double z) {
        return z * z / ((1.0 - z) * std::sqrt(std::max(-N.value(z), 1e-300)));
    };
    const double lower = integrate(g, 0.0, 0.5 * xi, 1e-13, 1e-300);
    auto upper_integrand = [&](double s) {
        const double z = xi - s * s;
        const double core = 1.0 / std::sqrt(std::max(N.turning_ratio(xi, s), 1e-300));
        return 2.0 * core * z * z / (1.0 - z);
    };
    const double upper = integrate(upper_integrand, 0.0, std::sqrt(0.5 * xi), 1e-13, 1e-300);
    return 0.5 * c * (lower + upper);
}

double momentum_derivative(const Nonlinearity& nl, double c, double h) {
    if (h <= 0.0) h = default_step(nl, c);
    return (soliton_momentum(nl, c + h) - soliton_momentum(nl, c - h)) / (2.0 * h);
}

double momentum_split_term(const Nonlinearity& nl, double c) {
    const double xi = find_xi(nl, c);
    NcPolynomial N(nl, c);
    return c * std::pow(xi, 2.5) / ((1.0 - xi) * std::sqrt(N.deriv(xi)));
}

}  // namespace darksol
