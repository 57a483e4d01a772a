#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vibcav/cavity.hpp"
#include "vibcav/core_model.hpp"
#include "vibcav/errors.hpp"
#include "vibcav/experiments.hpp"
#include "vibcav/quadrature.hpp"
#include "vibcav/single_mirror.hpp"
#include "vibcav/version.hpp"

namespace py = pybind11;
using namespace vibcav;

PYBIND11_MODULE(vibcav, m) {
  m.doc() = "Motion-induced radiation from vibrating mirrors and cavities";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<UnsupportedRegime>(m, "UnsupportedRegime", base.ptr());
  py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure", base.ptr());
  py::register_exception<PeakUnresolved>(m, "PeakUnresolved", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init<double, double, double>(), py::arg("c"), py::arg("hbar"), py::arg("k_B"))
      .def_static("codata", &PhysicalConstants::codata)
      .def_static("natural", &PhysicalConstants::natural)
      .def_property_readonly("c", &PhysicalConstants::c)
      .def_property_readonly("hbar", &PhysicalConstants::hbar)
      .def_property_readonly("k_B", &PhysicalConstants::k_B);

  py::class_<MirrorModel>(m, "MirrorModel")
      .def_static("perfect", &MirrorModel::perfect)
      .def_static("constant_real", &MirrorModel::constant_real, py::arg("r"))
      .def_static(
          "tabulated",
          [](const std::vector<std::tuple<double, std::complex<double>, std::complex<double>>>& rows) {
            std::vector<MirrorSample> samples;
            for (const auto& [w, r, s] : rows) samples.push_back({w, r, s});
            return MirrorModel::tabulated(std::move(samples));
          },
          py::arg("samples"))
      .def("reflection", &MirrorModel::reflection)
      .def("transmission", &MirrorModel::transmission)
      .def("has_complex_phases", &MirrorModel::has_complex_phases);

  py::class_<HarmonicDrive>(m, "HarmonicDrive")
      .def(py::init<double, double, double, const PhysicalConstants&>(), py::arg("amplitude"),
           py::arg("omega"), py::arg("duration"),
           py::arg("constants") = PhysicalConstants::codata())
      .def_property_readonly("amplitude", &HarmonicDrive::amplitude)
      .def_property_readonly("omega", &HarmonicDrive::omega)
      .def_property_readonly("duration", &HarmonicDrive::duration)
      .def_property_readonly("peak_velocity", &HarmonicDrive::peak_velocity)
      .def_property_readonly("warnings", &HarmonicDrive::warnings)
      .def("displacement", &HarmonicDrive::displacement);

  py::class_<CavityConfig>(m, "CavityConfig")
      .def(py::init<double, double, double, double, double, double>(), py::arg("tau"),
           py::arg("rho"), py::arg("a1"), py::arg("a2"), py::arg("omega"),
           py::arg("duration") = 1.0)
      .def_property_readonly("tau", &CavityConfig::tau)
      .def_property_readonly("rho", &CavityConfig::rho)
      .def_property_readonly("a1", &CavityConfig::a1)
      .def_property_readonly("a2", &CavityConfig::a2)
      .def_property_readonly("omega", &CavityConfig::omega)
      .def_property_readonly("duration", &CavityConfig::duration)
      .def_property_readonly("finesse", &CavityConfig::finesse)
      .def_property_readonly("mirror_product", &CavityConfig::mirror_product)
      .def_property_readonly("warnings", &CavityConfig::warnings)
      .def("resonance_order", py::overload_cast<>(&CavityConfig::resonance_order, py::const_))
      .def("with_omega", &CavityConfig::with_omega);

  py::class_<IntegrationResult>(m, "IntegrationResult")
      .def_readonly("value", &IntegrationResult::value)
      .def_readonly("error_estimate", &IntegrationResult::error_estimate)
      .def_readonly("subdivisions", &IntegrationResult::subdivisions);

  m.def(
      "integrate",
      [](const std::function<double(double)>& f, double lo, double hi, double rel_tol,
         const std::vector<std::pair<double, double>>& hints) {
        IntegrationSettings s;
        s.rel_tol = rel_tol;
        for (const auto& [c, w] : hints) s.pole_hints.push_back({c, w});
        return integrate(f, lo, hi, s);
      },
      py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("rel_tol") = 1e-9,
      py::arg("pole_hints") = std::vector<std::pair<double, double>>{});

  m.def(
      "thermal_occupation",
      [](double theta, double omega, const PhysicalConstants& c) {
        return thermal_occupation(ThermalContext(theta), omega, c);
      },
      py::arg("theta"), py::arg("omega"), py::arg("constants") = PhysicalConstants::codata());

  m.def("gamma_pair", &gamma_pair);
  m.def("emission_spectrum_density", &emission_spectrum_density);
  m.def(
      "flux_single",
      [](const MirrorModel& mirror, const HarmonicDrive& drive, const PhysicalConstants& c,
         double rel_tol) {
        IntegrationSettings s;
        s.rel_tol = rel_tol;
        return flux(mirror, drive, c, s).value;
      },
      py::arg("mirror"), py::arg("drive"), py::arg("constants") = PhysicalConstants::codata(),
      py::arg("rel_tol") = 1e-9);
  m.def("flux_perfect", &flux_perfect, py::arg("drive"),
        py::arg("constants") = PhysicalConstants::codata());
  m.def("radiated_power", &radiated_power, py::arg("flux"), py::arg("omega"),
        py::arg("constants") = PhysicalConstants::codata());

  m.def("airy_plus", &airy_plus, py::arg("x"), py::arg("rho"));
  m.def("airy_minus", &airy_minus, py::arg("x"), py::arg("rho"));
  m.def("airy_plus_polesum", &airy_plus_polesum);
  m.def("airy_minus_polesum", &airy_minus_polesum);
  m.def("gamma_cavity", [](double w, double wp, const CavityConfig& cav) {
    const auto g = gamma_cavity(w, wp, cav);
    return std::pair{g.g11, g.g12};
  });
  m.def(
      "flux_quadrature",
      [](const CavityConfig& cav, const PhysicalConstants& c, double rel_tol) {
        IntegrationSettings s;
        s.rel_tol = rel_tol;
        return flux_quadrature(cav, c, s).value;
      },
      py::arg("cavity"), py::arg("constants") = PhysicalConstants::codata(),
      py::arg("rel_tol") = 1e-9);
  m.def("mode_peak_flux", &mode_peak_flux, py::arg("cavity"), py::arg("k"), py::arg("k_p"),
        py::arg("constants") = PhysicalConstants::codata());
  m.def("intracavity_photons", &intracavity_photons, py::arg("cavity"), py::arg("k"),
        py::arg("k_p"), py::arg("constants") = PhysicalConstants::codata());

  py::class_<ModePeak>(m, "ModePeak")
      .def_readonly("k", &ModePeak::k)
      .def_readonly("k_p", &ModePeak::k_p)
      .def_readonly("flux", &ModePeak::flux)
      .def_readonly("intracavity", &ModePeak::intracavity);
  py::class_<FluxBreakdown>(m, "FluxBreakdown")
      .def_readonly("total", &FluxBreakdown::total)
      .def_readonly("nonresonant", &FluxBreakdown::nonresonant)
      .def_readonly("peaks", &FluxBreakdown::peaks)
      .def_readonly("tail_estimate", &FluxBreakdown::tail_estimate)
      .def_readonly("k_max", &FluxBreakdown::k_max);
  m.def("flux_mode_sum", &flux_mode_sum, py::arg("cavity"),
        py::arg("constants") = PhysicalConstants::codata(), py::arg("k_max") = 0);
  m.def("flux_resummed", &flux_resummed, py::arg("cavity"),
        py::arg("constants") = PhysicalConstants::codata());

  py::class_<PhotonEstimate>(m, "PhotonEstimate")
      .def_readonly("outside", &PhotonEstimate::outside)
      .def_readonly("inside", &PhotonEstimate::inside);
  m.def("order_of_magnitude", &order_of_magnitude, py::arg("v"), py::arg("omega"),
        py::arg("rho"), py::arg("duration"), py::arg("constants") = PhysicalConstants::codata(),
        py::arg("fresnel_number") = 1.0);

  py::class_<SpectralPeak>(m, "SpectralPeak")
      .def_readonly("center", &SpectralPeak::center)
      .def_readonly("height", &SpectralPeak::height)
      .def_readonly("fwhm", &SpectralPeak::fwhm);
  py::class_<SpectrumTable>(m, "SpectrumTable")
      .def_readonly("omega_grid", &SpectrumTable::omega_grid)
      .def_readonly("density", &SpectrumTable::density)
      .def_readonly("peaks", &SpectrumTable::peaks);
  m.def(
      "sample_emission_spectrum",
      [](const CavityConfig& cav, const PhysicalConstants& c, int samples_per_fwhm) {
        SpectrumGridPolicy p;
        p.samples_per_fwhm = samples_per_fwhm;
        return sample_emission_spectrum(cav, p, c);
      },
      py::arg("cavity"), py::arg("constants") = PhysicalConstants::codata(),
      py::arg("samples_per_fwhm") = 20);

  py::class_<ScanRow>(m, "ScanRow")
      .def_readonly("x", &ScanRow::x)
      .def_readonly("flux_total", &ScanRow::flux_total)
      .def_readonly("flux_nonresonant", &ScanRow::flux_nonresonant)
      .def_readonly("dominant_k", &ScanRow::dominant_k)
      .def_readonly("dominant_kp", &ScanRow::dominant_kp)
      .def_readonly("flags", &ScanRow::flags)
      .def_readonly("error", &ScanRow::error);
  py::class_<ScanResult>(m, "ScanResult").def_readonly("rows", &ScanResult::rows);
  m.def(
      "scan_drive_frequency",
      [](const CavityConfig& cav, double lo, double hi, std::size_t base_points,
         const PhysicalConstants& c) {
        ScanPolicy p;
        p.base_points = base_points;
        return scan_drive_frequency(cav, lo, hi, p, c);
      },
      py::arg("cavity"), py::arg("omega_lo"), py::arg("omega_hi"), py::arg("base_points") = 401,
      py::arg("constants") = PhysicalConstants::codata());
  m.def("find_scan_peaks", &find_scan_peaks);
}
