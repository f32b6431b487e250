#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "darksol/diagnostics.hpp"
#include "darksol/evolution.hpp"
#include "darksol/linearization.hpp"
#include "darksol/modulation.hpp"

namespace py = pybind11;
using namespace darksol;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(v.size());
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

std::vector<double> from_array(const py::array_t<double>& a) {
    py::buffer_info info = a.request();
    const double* p = static_cast<const double*>(info.ptr);
    return std::vector<double>(p, p + info.size);
}

HydroField make_field(const Grid& g, const py::array_t<double>& eta,
                      const py::array_t<double>& v) {
    HydroField f(g);
    f.eta = from_array(eta);
    f.v = from_array(v);
    if (static_cast<int>(f.eta.size()) != g.n || static_cast<int>(f.v.size()) != g.n)
        throw ConfigError("field arrays must match the grid size");
    return f;
}

}  // namespace

PYBIND11_MODULE(_darksol, m) {
    m.doc() = "dark-soliton chains of the 1D defocusing NLS, hydrodynamical form";

    py::register_exception<DefocusingViolated>(m, "DefocusingViolated");
    py::register_exception<H3Violated>(m, "H3Violated");
    py::register_exception<NoZero>(m, "NoZero");
    py::register_exception<GridTooSmall>(m, "GridTooSmall");
    py::register_exception<VacuumBreach>(m, "VacuumBreach");
    py::register_exception<BadOrdering>(m, "BadOrdering");
    py::register_exception<NoConvergence>(m, "NoConvergence");
    py::register_exception<BlowUpDetected>(m, "BlowUpDetected");
    py::register_exception<BadPolynomial>(m, "BadPolynomial");
    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<Nonlinearity>(m, "Nonlinearity")
        .def_static("gp", &Nonlinearity::gross_pitaevskii)
        .def_static("poly_1mr", &Nonlinearity::polynomial, py::arg("coeffs"))
        .def("f", &Nonlinearity::f)
        .def("df", &Nonlinearity::df)
        .def("F", &Nonlinearity::F);

    py::class_<Grid>(m, "Grid")
        .def(py::init<int, double>(), py::arg("n"), py::arg("length"))
        .def_readonly("n", &Grid::n)
        .def_readonly("length", &Grid::length)
        .def("dx", &Grid::dx)
        .def("nodes", [](const Grid& g) {
            std::vector<double> x(g.n);
            for (int j = 0; j < g.n; ++j) x[j] = g.node(j);
            return to_array(x);
        });

    py::class_<HydroField>(m, "HydroField")
        .def(py::init(&make_field), py::arg("grid"), py::arg("eta"), py::arg("v"))
        .def_readonly("grid", &HydroField::grid)
        .def_property_readonly("eta", [](const HydroField& f) { return to_array(f.eta); })
        .def_property_readonly("v", [](const HydroField& f) { return to_array(f.v); })
        .def("max_eta", &HydroField::max_eta);

    m.def("sound_speed", &sound_speed);
    m.def("transonic_constants", [](const Nonlinearity& nl) {
        const auto mc = transonic_constants(nl);
        return py::make_tuple(mc.c_s, mc.k, mc.k_tilde);
    });
    m.def("find_xi", &find_xi);
    m.def("xi_derivative", &xi_derivative);
    m.def("soliton_momentum", &soliton_momentum);
    m.def("momentum_derivative", &momentum_derivative, py::arg("nl"), py::arg("c"),
          py::arg("h") = 0.0);
    m.def("essential_spectrum_floor", &essential_spectrum_floor);

    m.def("build_profile", [](const Nonlinearity& nl, double c, const Grid& g) {
        auto pb = build_profile(nl, c, g);
        return py::make_tuple(pb.field, pb.profile.xi(), pb.profile.nu());
    });

    m.def("build_chain", [](const std::vector<double>& speeds,
                            const std::vector<double>& positions,
                            const Nonlinearity& nl, const Grid& g) {
        return build_chain(ChainSpec{speeds, positions}, nl, g);
    });

    m.def("energy", [](const HydroField& f, const Nonlinearity& nl) {
        Spectral sp(f.grid);
        return energy(f, nl, sp);
    });
    m.def("momentum", [](const HydroField& f) { return momentum(f); });
    m.def("x_norm", [](const HydroField& f) {
        Spectral sp(f.grid);
        return x_norm(f, sp);
    });

    m.def("evolve",
          [](const HydroField& f, const Nonlinearity& nl, double t_end, double dt,
             double cfl_lambda, bool dealias) {
              Evolver ev(f.grid, nl, dealias);
              EvolutionConfig cfg;
              cfg.t_end = t_end;
              cfg.dt = dt;
              cfg.cfl_lambda = cfl_lambda;
              return ev.integrate(f, cfg);
          },
          py::arg("field"), py::arg("nl"), py::arg("t_end"), py::arg("dt") = 0.0,
          py::arg("cfl_lambda") = 0.2, py::arg("dealias") = false);

    m.def("decompose", [](const HydroField& f, const std::vector<double>& speeds,
                          const std::vector<double>& positions, const Nonlinearity& nl) {
        ModulationFit fit = decompose(f, ChainSpec{speeds, positions}, nl);
        py::dict d;
        d["c"] = to_array(fit.c);
        d["a"] = to_array(fit.a);
        d["eps_xnorm"] = fit.eps_xnorm;
        d["residual"] = fit.residual_norm;
        d["iters"] = fit.newton_iters;
        return d;
    });

    m.def("low_spectrum", [](const Nonlinearity& nl, double c, const Grid& g, int m_) {
        SolitonProfile prof(nl, c);
        HcOperator op = assemble_hc(prof, g, nl);
        auto pairs = low_spectrum(op, m_);
        std::vector<double> vals;
        for (const auto& pr : pairs) vals.push_back(pr.value);
        return to_array(vals);
    });
}
