#include "darksol/linearization.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <cmath>
#include <cstring>

namespace darksol {

namespace {

// Potential V of the L_c block, L_c eps = -(eps'/(4(1-eta)))' - V eps.
// Obtained from the eta-block of the Hessian of E - c p,
//   V = D^2eta/(4(1-eta)^2) + (Deta)^2/(4(1-eta)^3) + f'(1-eta)/2,
// with the profile identities (Deta)^2 = -N_c(eta), D^2eta = -N_c'(eta)/2
// inserted; checked against the finite-difference Hessian oracle.
double lc_potential(const Nonlinearity& nl, double c, double eta) {
    const double om = 1.0 - eta;
    return (-c * c * eta + 2.0 * om * nl.F(om) + 2.0 * om * om * nl.f(om) +
            2.0 * om * om * om * nl.df(om)) /
           (4.0 * om * om * om);
}

}  // namespace

void HcOperator::apply(const std::vector<double>& x, std::vector<double>& y) const {
    const int d = dim();
    y.assign(d, 0.0);
    cblas_dsymv(CblasColMajor, CblasUpper, d, 1.0, matrix.data(), d, x.data(), 1, 0.0,
                y.data(), 1);
}

double HcOperator::quadratic_form(const HydroField& eps) const {
    const int n = grid.n;
    std::vector<double> x(2 * n), y;
    for (int i = 0; i < n; ++i) {
        x[i] = eps.eta[i];
        x[n + i] = eps.v[i];
    }
    apply(x, y);
    double s = 0.0;
    for (int i = 0; i < 2 * n; ++i) s += x[i] * y[i];
    return s * grid.dx();
}

double HcOperator::symmetry_defect() const {
    const int d = dim();
    double m = 0.0;
    for (int j = 0; j < d; ++j)
        for (int i = j + 1; i < d; ++i)
            m = std::max(m, std::abs(matrix[static_cast<std::size_t>(j) * d + i] -
                                     matrix[static_cast<std::size_t>(i) * d + j]));
    return m;
}

HcOperator assemble_hc(const SolitonProfile& profile, const Grid& grid,
                       const Nonlinearity& nl, KineticDiscretization mode) {
    const int n = grid.n;
    HydroField q = profile.sample(grid, 0.0);
    require_no_vacuum(q);

    HcOperator op;
    op.grid = grid;
    op.c = profile.c();
    op.mode = mode;
    const int d = 2 * n;
    op.matrix.assign(static_cast<std::size_t>(d) * d, 0.0);
    auto at = [&](int i, int j) -> double& {
        return op.matrix[static_cast<std::size_t>(j) * d + i];
    };

    std::vector<double> a(n);
    for (int i = 0; i < n; ++i) a[i] = 1.0 / (4.0 * (1.0 - q.eta[i]));

    if (mode == KineticDiscretization::Stencil3) {
        const double idx2 = 1.0 / (grid.dx() * grid.dx());
        for (int i = 0; i < n; ++i) {
            const int ip = (i + 1) % n;
            const double ah = 0.5 * (a[i] + a[ip]);  // a at the half node
            at(i, i) += ah * idx2;
            at(ip, ip) += ah * idx2;
            at(i, ip) -= ah * idx2;
            at(ip, i) -= ah * idx2;
        }
    } else {
        Spectral sp(grid);
        std::vector<double> D = sp.derivative_matrix();
        // K = D^T diag(a) D
        std::vector<double> aD(static_cast<std::size_t>(n) * n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                aD[static_cast<std::size_t>(j) * n + i] =
                    a[i] * D[static_cast<std::size_t>(j) * n + i];
        std::vector<double> K(static_cast<std::size_t>(n) * n, 0.0);
        cblas_dgemm(CblasColMajor, CblasTrans, CblasNoTrans, n, n, n, 1.0, D.data(), n,
                    aD.data(), n, 0.0, K.data(), n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                at(i, j) += K[static_cast<std::size_t>(j) * n + i];
        // symmetrize away dgemm round-off
        for (int j = 0; j < n; ++j)
            for (int i = j + 1; i < n; ++i) {
                const double s = 0.5 * (at(i, j) + at(j, i));
                at(i, j) = s;
                at(j, i) = s;
            }
    }

    for (int i = 0; i < n; ++i) {
        at(i, i) -= lc_potential(nl, op.c, q.eta[i]);
        const double coup = -op.c / (2.0 * (1.0 - q.eta[i]));
        at(i, n + i) = coup;
        at(n + i, i) = coup;
        at(n + i, n + i) = 1.0 - q.eta[i];
    }
    return op;
}

double essential_spectrum_floor(const Nonlinearity& nl, double c) {
    const double cs = sound_speed(nl);
    const double cs2 = cs * cs;
    return (cs2 - c * c) / (1.0 + cs2 + std::sqrt((1.0 - cs2) * (1.0 - cs2) + 4.0 * c * c));
}

namespace {

// m smallest eigenpairs of a dense symmetric matrix (destroyed).
std::vector<EigenPair> dense_smallest(std::vector<double>& A, int d, int m,
                                      bool want_vectors) {
    std::vector<double> w(d);
    std::vector<double> z(want_vectors ? static_cast<std::size_t>(d) * m : 1);
    std::vector<lapack_int> isuppz(2 * std::max(1, m));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dsyevr(
        LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', 'U', d, A.data(), d, 0.0, 0.0,
        1, m, 0.0, &found, w.data(), z.data(), d, isuppz.data());
    if (info != 0 || found < m)
        throw SolverFail("dsyevr failed, info = " + std::to_string(info));
    std::vector<EigenPair> out(m);
    for (int i = 0; i < m; ++i) {
        out[i].value = w[i];
        if (want_vectors)
            out[i].vector.assign(z.begin() + static_cast<std::size_t>(i) * d,
                                 z.begin() + static_cast<std::size_t>(i + 1) * d);
    }
    return out;
}

}  // namespace

std::vector<EigenPair> low_spectrum(const HcOperator& op, int m) {
    if (m < 1 || m > 10) throw Error("low_spectrum: m must be in [1, 10]");
    std::vector<double> A = op.matrix;
    return dense_smallest(A, op.dim(), m, true);
}

double constrained_coercivity(const HcOperator& op, const SolitonProfile& profile,
                              const Nonlinearity& nl) {
    (void)nl;
    const int n = op.grid.n;
    const int d = 2 * n;
    Spectral sp(op.grid);

    // Circulant symmetric factor S = (I + D^T D)^(-1/2) on the eta block,
    // identity on the v block. One column determines the whole matrix. The
    // Nyquist bin carries no derivative (odd-derivative convention), so the
    // Gram treats it the same way the operator does.
    std::vector<double> mult(sp.n_bins());
    for (int j = 0; j < sp.n_bins(); ++j) {
        const double k = (j == sp.n_bins() - 1) ? 0.0 : sp.wavenumber(j);
        mult[j] = 1.0 / std::sqrt(1.0 + k * k);
    }
    std::vector<double> e(n, 0.0), col(n);
    e[0] = 1.0;
    sp.apply_multiplier(e, col, mult);
    std::vector<double> S(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            S[static_cast<std::size_t>(j) * n + i] = col[(i - j + n) % n];

    // Folded matrix B = blockdiag(S, I) A blockdiag(S, I). Only the eta-eta
    // block needs two dense products; the off-diagonal blocks of A are
    // diagonal, so they reduce to row/column scalings of S.
    const auto& A = op.matrix;
    auto a_at = [&](int i, int j) { return A[static_cast<std::size_t>(j) * d + i]; };
    std::vector<double> B(static_cast<std::size_t>(d) * d, 0.0);
    auto b_at = [&](int i, int j) -> double& {
        return B[static_cast<std::size_t>(j) * d + i];
    };
    {
        std::vector<double> A11(static_cast<std::size_t>(n) * n), T(A11.size());
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                A11[static_cast<std::size_t>(j) * n + i] = a_at(i, j);
        cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, n, n, n, 1.0, S.data(), n,
                    A11.data(), n, 0.0, T.data(), n);
        cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, n, n, n, 1.0, T.data(), n,
                    S.data(), n, 0.0, A11.data(), n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                b_at(i, j) = 0.5 * (A11[static_cast<std::size_t>(j) * n + i] +
                                    A11[static_cast<std::size_t>(i) * n + j]);
    }
    for (int j = 0; j < n; ++j) {
        const double coup = a_at(j, n + j);
        for (int i = 0; i < n; ++i) {
            const double val = S[static_cast<std::size_t>(j) * n + i] * coup;
            b_at(i, n + j) = val;
            b_at(n + j, i) = val;
        }
        b_at(n + j, n + j) = a_at(n + j, n + j);
    }

    // Constraint directions in folded coordinates: S w.
    HydroField dq(op.grid), gp(op.grid);
    for (int j = 0; j < n; ++j) {
        const double x = op.grid.node(j);
        dq.eta[j] = profile.deta_at(x);
        dq.v[j] = profile.dv_at(x);
        gp.eta[j] = 0.5 * profile.v_at(x);
        gp.v[j] = 0.5 * profile.eta_at(x);
    }
    auto fold = [&](const HydroField& w) {
        std::vector<double> out(d), weta(n);
        sp.apply_multiplier(w.eta, weta, mult);
        for (int i = 0; i < n; ++i) {
            out[i] = weta[i];
            out[n + i] = w.v[i];
        }
        return out;
    };
    std::vector<double> u1 = fold(dq), u2 = fold(gp);
    auto normalize = [&](std::vector<double>& u) {
        double s = 0.0;
        for (double x : u) s += x * x;
        s = std::sqrt(s);
        if (s < 1e-300) throw SolverFail("degenerate constraint direction");
        for (double& x : u) x /= s;
    };
    normalize(u1);
    double dot = 0.0;
    for (int i = 0; i < d; ++i) dot += u1[i] * u2[i];
    for (int i = 0; i < d; ++i) u2[i] -= dot * u1[i];
    normalize(u2);

    // Deflate: P B P + mu (u1 u1^T + u2 u2^T); mu above any relevant scale.
    double mu = 0.0;
    for (int i = 0; i < d; ++i) mu = std::max(mu, std::abs(b_at(i, i)));
    mu *= 10.0;
    for (const auto* u : {&u1, &u2}) {
        std::vector<double> Bu(d, 0.0);
        cblas_dsymv(CblasColMajor, CblasUpper, d, 1.0, B.data(), d, u->data(), 1, 0.0,
                    Bu.data(), 1);
        double uBu = 0.0;
        for (int i = 0; i < d; ++i) uBu += (*u)[i] * Bu[i];
        // B <- B - u (Bu)^T - (Bu) u^T + (uBu) u u^T + mu u u^T
        for (int j = 0; j < d; ++j) {
            const double uj = (*u)[j], bj = Bu[j];
            for (int i = 0; i < d; ++i)
                B[static_cast<std::size_t>(j) * d + i] +=
                    -(*u)[i] * bj - Bu[i] * uj + (uBu + mu) * (*u)[i] * uj;
        }
    }
    auto pairs = dense_smallest(B, d, 1, false);
    return pairs[0].value;
}

double hc_form_direct(const HcOperator& op, const SolitonProfile& profile,
                      const Nonlinearity& nl, const HydroField& eps) {
    const int n = op.grid.n;
    HydroField q = profile.sample(op.grid, 0.0);
    std::vector<double> a(n);
    for (int i = 0; i < n; ++i) a[i] = 1.0 / (4.0 * (1.0 - q.eta[i]));

    double kinetic = 0.0;
    if (op.mode == KineticDiscretization::Stencil3) {
        const double dx = op.grid.dx();
        for (int i = 0; i < n; ++i) {
            const int ip = (i + 1) % n;
            const double ah = 0.5 * (a[i] + a[ip]);
            const double du = (eps.eta[ip] - eps.eta[i]) / dx;
            kinetic += ah * du * du;
        }
    } else {
        Spectral sp(op.grid);
        std::vector<double> de;
        sp.derivative(eps.eta, de);
        for (int i = 0; i < n; ++i) kinetic += a[i] * de[i] * de[i];
    }
    double rest = 0.0;
    for (int i = 0; i < n; ++i) {
        const double om = 1.0 - q.eta[i];
        rest += -lc_potential(nl, op.c, q.eta[i]) * eps.eta[i] * eps.eta[i] -
                (op.c / om) * eps.eta[i] * eps.v[i] + om * eps.v[i] * eps.v[i];
    }
    return (kinetic + rest) * op.grid.dx();
}

}  // namespace darksol
