// pybind11 bindings for the dcsb core library

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dcsb/dynamics.hpp"

namespace py = pybind11;
using namespace dcsb;

PYBIND11_MODULE(_dcsb, m) {
    m.doc() = "dual-coupling spin-boson NIBA dynamics (C++ core)";
    m.attr("__version__") = "0.1.0";
    m.attr("HBAR_MEV_PS") = PhysParams::hbar;

    py::register_exception<Error>(m, "DcsbError");

    py::class_<PhysParams>(m, "PhysParams")
        .def(py::init<>())
        .def_readwrite("kT", &PhysParams::kT)
        .def_readwrite("delta", &PhysParams::delta)
        .def_readwrite("omega_c", &PhysParams::omega_c)
        .def_readwrite("gamma", &PhysParams::gamma)
        .def_readwrite("zeta", &PhysParams::zeta)
        .def("mu", &PhysParams::mu)
        .def("delta_freq", &PhysParams::delta_freq)
        .def("omega_c_freq", &PhysParams::omega_c_freq)
        .def("beta_hbar", &PhysParams::beta_hbar)
        .def("high_t_warning", &PhysParams::high_t_warning)
        .def("validate", &PhysParams::validate);

    py::enum_<Variant>(m, "Variant")
        .value("dc", Variant::dc)
        .value("sb", Variant::sb)
        .value("nn", Variant::nn)
        .value("ib", Variant::ib);
    py::enum_<FMode>(m, "FMode")
        .value("exact", FMode::exact)
        .value("high_t", FMode::high_t);
    py::enum_<KernelScale>(m, "KernelScale")
        .value("calibrated", KernelScale::calibrated)
        .value("paper_literal", KernelScale::paper_literal);
    py::enum_<GammaEffMode>(m, "GammaEffMode")
        .value("scaled", GammaEffMode::scaled)
        .value("literal", GammaEffMode::literal);
    py::enum_<ExponentMode>(m, "ExponentMode")
        .value("paper", ExponentMode::paper)
        .value("rederived", ExponentMode::rederived);
    py::enum_<TraceMethod>(m, "TraceMethod")
        .value("pole_residue", TraceMethod::pole_residue)
        .value("talbot", TraceMethod::talbot)
        .value("volterra", TraceMethod::volterra);
    py::enum_<TransitionMode>(m, "TransitionMode")
        .value("any_pair", TransitionMode::any_pair)
        .value("mode_one", TransitionMode::mode_one);

    py::class_<KernelConfig>(m, "KernelConfig")
        .def(py::init<>())
        .def_readwrite("variant", &KernelConfig::variant)
        .def_readwrite("f_mode", &KernelConfig::f_mode)
        .def_readwrite("kernel_scale", &KernelConfig::kernel_scale)
        .def_readwrite("gamma_eff_mode", &KernelConfig::gamma_eff_mode)
        .def_readwrite("exponent_mode", &KernelConfig::exponent_mode)
        .def("scale_factor", &KernelConfig::scale_factor)
        .def("validate", &KernelConfig::validate);

    // special functions
    m.def("gamma", [](std::complex<double> z) { return gamma(z); });
    m.def("gamma_real", &gamma_real);
    m.def("digamma", &digamma);
    m.def("trigamma", &trigamma);

    // bath correlation functions
    m.def("spectral_density", &spectral_density);
    m.def("q_prime", &q_prime);
    m.def("q_double_prime", &q_double_prime);
    m.def("q_quadrature", &q_quadrature);
    m.def(
        "franck_condon",
        [](const PhysParams& p, ExponentMode mode) {
            std::vector<std::string> warnings;
            const double v = franck_condon(p, mode, &warnings);
            return py::make_tuple(v, warnings);
        },
        py::arg("params"), py::arg("mode") = ExponentMode::rederived);

    // Laplace-domain self-energies and related scalars
    m.def("epsilon_zeta", &epsilon_zeta);
    m.def("i_term", &i_term);
    m.def("f_exact", &f_exact);
    m.def("f_high_t", &f_high_t);
    m.def("sigma_dc_laplace", &sigma_dc_laplace);
    m.def("sigma_sb_laplace", &sigma_sb_laplace);
    m.def("sigma_nn_laplace", &sigma_nn_laplace);
    m.def("sigma_dc_time",
          [](const PhysParams& p, const KernelConfig& c, double t) {
              return sigma_dc_time(p, c, t);
          });
    m.def("omega_ib", &omega_ib);

    // rational kernels, poles, and time-domain reconstruction
    py::class_<RationalKernel>(m, "RationalKernel")
        .def(py::init<>())
        .def_readwrite("num_coeffs", &RationalKernel::num_coeffs)
        .def_readwrite("den_coeffs", &RationalKernel::den_coeffs);
    py::class_<PoleSet>(m, "PoleSet")
        .def(py::init<>())
        .def_readwrite("poles", &PoleSet::poles)
        .def_readwrite("residues", &PoleSet::residues)
        .def_property_readonly("converged", [](const PoleSet& ps) {
            return std::vector<int>(ps.converged.begin(), ps.converged.end());
        });
    py::class_<Trace>(m, "Trace")
        .def(py::init<>())
        .def_readwrite("times", &Trace::times)
        .def_readwrite("values", &Trace::values)
        .def_readwrite("method", &Trace::method);
    py::class_<CoherenceMode>(m, "CoherenceMode")
        .def_readonly("tau_phi", &CoherenceMode::tau_phi)
        .def_readonly("freq", &CoherenceMode::freq)
        .def_readonly("residue_magnitude", &CoherenceMode::residue_magnitude)
        .def_readonly("infinite", &CoherenceMode::infinite);
    py::class_<CoherenceReport>(m, "CoherenceReport")
        .def_readonly("modes", &CoherenceReport::modes)
        .def_readonly("relaxation_rates", &CoherenceReport::relaxation_rates);

    m.def("build_rational", &build_rational);
    m.def("find_poles", &find_poles);
    m.def("refine_poles_exact", &refine_poles_exact);
    m.def("reconstruct_time", &reconstruct_time);
    m.def("invert_talbot", &invert_talbot);
    m.def("solve_volterra", &solve_volterra);
    m.def("coherence_report", &coherence_report);
    m.def("transition_scan", &transition_scan, py::arg("params"),
          py::arg("config"), py::arg("gamma_lo"), py::arg("gamma_hi"),
          py::arg("mode") = TransitionMode::any_pair);
}
