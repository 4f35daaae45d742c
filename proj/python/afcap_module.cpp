// SPDX-License-Identifier: Apache-2.0
// Python bindings for the main analysis operations.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "afcap/capacity.hpp"
#include "afcap/eigenstats.hpp"
#include "afcap/mcoracle.hpp"
#include "afcap/specfun.hpp"

namespace py = pybind11;
using namespace afcap;

namespace {

SystemConfig make_config(int n_s, int n_r, int n_d, double alpha, double rho) {
    return SystemConfig(n_s, n_r, n_d, alpha, rho);
}

}  // namespace

PYBIND11_MODULE(afcap, m) {
    m.doc() = "ergodic capacity analysis of amplify-and-forward MIMO dual-hop channels";

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init(&make_config), py::arg("n_s"), py::arg("n_r"), py::arg("n_d"),
             py::arg("alpha"), py::arg("rho"))
        .def_readonly("n_s", &SystemConfig::n_s)
        .def_readonly("n_r", &SystemConfig::n_r)
        .def_readonly("n_d", &SystemConfig::n_d)
        .def_readonly("alpha", &SystemConfig::alpha)
        .def_readonly("rho", &SystemConfig::rho)
        .def_property_readonly("q", &SystemConfig::q)
        .def_property_readonly("p", &SystemConfig::p)
        .def_property_readonly("s", &SystemConfig::s)
        .def_property_readonly("a", &SystemConfig::a)
        .def("__repr__", [](const SystemConfig& c) {
            return "SystemConfig(n_s=" + std::to_string(c.n_s) +
                   ", n_r=" + std::to_string(c.n_r) + ", n_d=" + std::to_string(c.n_d) +
                   ", alpha=" + std::to_string(c.alpha) + ", rho=" + std::to_string(c.rho) + ")";
        });

    py::class_<HighSnrChar>(m, "HighSnrChar")
        .def_readonly("slope", &HighSnrChar::slope)
        .def_readonly("offset_3db", &HighSnrChar::offset_3db)
        .def_readonly("beta", &HighSnrChar::beta)
        .def_property_readonly("offset_db", &HighSnrChar::offset_db);

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("stderr", &McEstimate::stderr_)
        .def_readonly("n_trials", &McEstimate::n_trials);

    py::class_<BesselTermSeries>(m, "EigenvalueDensity")
        .def_property_readonly("decay_rate",
                               [](const BesselTermSeries& s) { return s.decay_rate; })
        .def_property_readonly("n_terms",
                               [](const BesselTermSeries& s) { return s.terms.size(); })
        .def("__call__", [](const BesselTermSeries& s, double lam) { return pdf_eval(s, lam); });

    m.def("unordered_pdf", &unordered_pdf, py::arg("cfg"),
          "Density of an unordered nonzero eigenvalue of the cascaded relay matrix.");
    m.def("rayleigh_product_pdf", &rayleigh_product_pdf, py::arg("n_s"), py::arg("q"),
          py::arg("p"));
    m.def("unordered_beta_pdf", &unordered_beta_pdf, py::arg("beta"), py::arg("cfg"));
    m.def("expected_det", &expected_det, py::arg("cfg"));
    m.def("expected_logdet", &expected_logdet, py::arg("cfg"));

    m.def(
        "exact_capacity",
        [](const SystemConfig& cfg) { return exact_capacity(cfg).value; }, py::arg("cfg"),
        "Exact ergodic capacity in bits/s/Hz.");
    m.def(
        "upper_bound", [](const SystemConfig& cfg) { return upper_bound(cfg).value; },
        py::arg("cfg"));
    m.def(
        "lower_bound", [](const SystemConfig& cfg) { return lower_bound(cfg).value; },
        py::arg("cfg"));
    m.def(
        "fixed_alpha_limit",
        [](const SystemConfig& cfg) { return fixed_alpha_limit(cfg).value; }, py::arg("cfg"));
    m.def("high_snr_char", &high_snr_char, py::arg("n_s"), py::arg("n_r"), py::arg("n_d"),
          py::arg("beta"));
    m.def(
        "high_snr_affine",
        [](const HighSnrChar& ch, double rho) { return high_snr_affine(ch, rho).value; },
        py::arg("char"), py::arg("rho"));
    m.def("offset_shift_db", &offset_shift_db, py::arg("n_d"), py::arg("k"), py::arg("beta"));

    m.def(
        "mc_capacity",
        [](const SystemConfig& cfg, long trials, std::uint64_t seed, std::uint64_t stream) {
            return mc_capacity(cfg, trials, {seed, stream});
        },
        py::arg("cfg"), py::arg("n_trials"), py::arg("seed") = 0, py::arg("stream") = 0);
    m.def(
        "mc_cascade_eigenvalues",
        [](const SystemConfig& cfg, long trials, std::uint64_t seed, std::uint64_t stream) {
            return mc_cascade_eigenvalues(cfg, trials, {seed, stream});
        },
        py::arg("cfg"), py::arg("n_trials"), py::arg("seed") = 0, py::arg("stream") = 0);
    m.def(
        "mc_expected_det",
        [](const SystemConfig& cfg, long trials, std::uint64_t seed, std::uint64_t stream) {
            return mc_expected_det(cfg, trials, {seed, stream});
        },
        py::arg("cfg"), py::arg("n_trials"), py::arg("seed") = 0, py::arg("stream") = 0);
    m.def(
        "mc_single_hop_capacity",
        [](int n_t, int n_r, double snr, long trials, std::uint64_t seed) {
            return mc_single_hop_capacity(n_t, n_r, snr, trials, {seed, 0});
        },
        py::arg("n_t"), py::arg("n_r"), py::arg("snr"), py::arg("n_trials"),
        py::arg("seed") = 0);
    m.def(
        "ks_statistic",
        [](std::vector<double> samples, const std::function<double(double)>& cdf) {
            return ks_statistic(std::move(samples), cdf);
        },
        py::arg("samples"), py::arg("cdf"));

    m.attr("__version__") = "1.0.0";
}
