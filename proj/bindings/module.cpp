#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfp/sweep.hpp"

#include <sstream>

namespace py = pybind11;
using namespace pybind11::literals;

PYBIND11_MODULE(_qfp, m) {
    m.doc() = "Two saturable two-level mirrors in a 1D waveguide: nonlinear "
              "Fabry-Perot transport and optical rectification.";

    py::register_exception<qfp::InvalidParameterError>(m, "InvalidParameterError",
                                                       PyExc_ValueError);
    py::register_exception<qfp::SingularityError>(m, "SingularityError",
                                                  PyExc_ArithmeticError);

    py::class_<qfp::EmitterParams>(m, "EmitterParams")
        .def(py::init<double, double>(), "gamma"_a = 1.0, "delta_omega"_a = 0.0)
        .def_readwrite("gamma", &qfp::EmitterParams::gamma)
        .def_readwrite("delta_omega", &qfp::EmitterParams::delta_omega)
        .def("__repr__", [](const qfp::EmitterParams& e) {
            std::ostringstream s;
            s << "EmitterParams(gamma=" << e.gamma
              << ", delta_omega=" << e.delta_omega << ")";
            return s.str();
        });

    py::class_<qfp::BlochSteadyState>(m, "BlochSteadyState")
        .def_readonly("sigma_minus_re", &qfp::BlochSteadyState::sigma_minus_re)
        .def_readonly("sigma_minus_im", &qfp::BlochSteadyState::sigma_minus_im)
        .def_readonly("sigma_z", &qfp::BlochSteadyState::sigma_z)
        .def_readonly("rabi", &qfp::BlochSteadyState::rabi);

    py::class_<qfp::CavityGeometry>(m, "CavityGeometry")
        .def(py::init<double>(), "length_wavelengths"_a = 0.0)
        .def_readwrite("length_wavelengths", &qfp::CavityGeometry::length_wavelengths);

    py::class_<qfp::DeviceConfig>(m, "DeviceConfig")
        .def(py::init([](const qfp::EmitterParams& e1, const qfp::EmitterParams& e2,
                         double length) {
                 return qfp::DeviceConfig{e1, e2, qfp::CavityGeometry{length}};
             }),
             "emitter1"_a, "emitter2"_a, "length"_a)
        .def_readwrite("emitter1", &qfp::DeviceConfig::emitter1)
        .def_readwrite("emitter2", &qfp::DeviceConfig::emitter2)
        .def_readwrite("geometry", &qfp::DeviceConfig::geometry)
        .def("swapped", &qfp::DeviceConfig::swapped);

    py::class_<qfp::SolverSettings>(m, "SolverSettings")
        .def(py::init<>())
        .def_readwrite("damping", &qfp::SolverSettings::damping)
        .def_readwrite("rel_tol", &qfp::SolverSettings::rel_tol)
        .def_readwrite("abs_tol", &qfp::SolverSettings::abs_tol)
        .def_readwrite("max_iterations", &qfp::SolverSettings::max_iterations)
        .def_readwrite("n_seeds", &qfp::SolverSettings::n_seeds)
        .def_readwrite("continuation_steps", &qfp::SolverSettings::continuation_steps);

    py::class_<qfp::SteadyStateSolution>(m, "SteadyStateSolution")
        .def_readonly("p1", &qfp::SteadyStateSolution::p1)
        .def_readonly("p2", &qfp::SteadyStateSolution::p2)
        .def_readonly("R1", &qfp::SteadyStateSolution::R1)
        .def_readonly("R2", &qfp::SteadyStateSolution::R2)
        .def_readonly("theta1", &qfp::SteadyStateSolution::theta1)
        .def_readonly("theta2", &qfp::SteadyStateSolution::theta2)
        .def_readonly("transmittance", &qfp::SteadyStateSolution::transmittance)
        .def_readonly("converged", &qfp::SteadyStateSolution::converged)
        .def_readonly("perfect_mirror_limit",
                      &qfp::SteadyStateSolution::perfect_mirror_limit)
        .def_readonly("iterations", &qfp::SteadyStateSolution::iterations)
        .def_readonly("residual", &qfp::SteadyStateSolution::residual)
        .def_readonly("branch_count", &qfp::SteadyStateSolution::branch_count)
        .def("__repr__", [](const qfp::SteadyStateSolution& s) {
            std::ostringstream os;
            os << "SteadyStateSolution(p1=" << s.p1 << ", p2=" << s.p2
               << ", T=" << s.transmittance << ", converged=" << s.converged << ")";
            return os.str();
        });

    py::enum_<qfp::Direction>(m, "Direction")
        .value("LeftToRight", qfp::Direction::LeftToRight)
        .value("RightToLeft", qfp::Direction::RightToLeft);

    py::class_<qfp::RectificationResult>(m, "RectificationResult")
        .def_readonly("t12", &qfp::RectificationResult::t12)
        .def_readonly("t21", &qfp::RectificationResult::t21)
        .def_readonly("r_factor", &qfp::RectificationResult::r_factor)
        .def_readonly("l_factor", &qfp::RectificationResult::l_factor)
        .def_readonly("both_converged", &qfp::RectificationResult::both_converged);

    py::class_<qfp::IntensityProfile>(m, "IntensityProfile")
        .def_readonly("positions", &qfp::IntensityProfile::positions)
        .def_readonly("intensities", &qfp::IntensityProfile::intensities)
        .def_readonly("average", &qfp::IntensityProfile::average)
        .def_readonly("converged", &qfp::IntensityProfile::converged);

    m.def("bloch_steady_state", &qfp::bloch_steady_state, "p"_a, "emitter"_a,
          "Steady-state Bloch vector of one driven emitter.");
    m.def("reflectance", &qfp::reflectance, "p"_a, "emitter"_a,
          "Saturable power reflectance of one emitter.");
    m.def("reflectance_from_bloch", &qfp::reflectance_from_bloch, "p"_a, "emitter"_a);
    m.def("phase_shift", &qfp::phase_shift, "emitter"_a,
          "Reflection phase shift of one emitter.");
    m.def(
        "fp_coefficients",
        [](double R1, double R2) {
            const auto c = qfp::fp_coefficients(R1, R2);
            return std::make_pair(c.f1, c.f2);
        },
        "R1"_a, "R2"_a);
    m.def("transmittance_formula", &qfp::transmittance_formula, "R1"_a, "R2"_a,
          "theta_plus"_a, "mu"_a);

    m.def("fixed_point_map", &qfp::fixed_point_map, "p1"_a, "p2"_a, "p_inc"_a,
          "device"_a);
    m.def("solve_steady_state", &qfp::solve_steady_state, "p_inc"_a, "device"_a,
          "settings"_a = qfp::SolverSettings{}, "seed"_a = std::nullopt);
    m.def("solve_with_continuation", &qfp::solve_with_continuation, "p_inc"_a,
          "device"_a, "settings"_a = qfp::SolverSettings{});
    m.def("solve_auto", &qfp::solve_auto, "p_inc"_a, "device"_a,
          "settings"_a = qfp::SolverSettings{},
          "Continuation below p_inc = 0.01, plain damped iteration above.");
    m.def("scan_fixed_points", &qfp::scan_fixed_points, "p_inc"_a, "device"_a,
          "settings"_a = qfp::SolverSettings{});

    m.def("transmit", &qfp::transmit, "p_inc"_a, "device"_a, "direction"_a,
          "settings"_a = qfp::SolverSettings{},
          "Self-consistent transmittance; returns (T, solution).");
    m.def("rectify", &qfp::rectify, "p_inc"_a, "device"_a,
          "settings"_a = qfp::SolverSettings{});
    m.def("intracavity_profile", &qfp::intracavity_profile, "p_inc"_a, "device"_a,
          "n_samples"_a, "settings"_a = qfp::SolverSettings{});
    m.def(
        "average_intracavity_scaling",
        [](const qfp::DeviceConfig& dev, const std::vector<double>& p_list,
           const qfp::SolverSettings& s) {
            std::vector<std::tuple<double, double, bool>> out;
            for (const auto& pt : qfp::average_intracavity_scaling(dev, p_list, s))
                out.emplace_back(pt.p_inc, pt.average_intracavity, pt.converged);
            return out;
        },
        "device"_a, "p_inc_list"_a, "settings"_a = qfp::SolverSettings{});

    py::class_<qfp::DesignSearchResult>(m, "DesignSearchResult")
        .def_readonly("length", &qfp::DesignSearchResult::length)
        .def_readonly("dw1", &qfp::DesignSearchResult::dw1)
        .def_readonly("r_factor", &qfp::DesignSearchResult::r_factor)
        .def_readonly("l_factor", &qfp::DesignSearchResult::l_factor)
        .def_readonly("found", &qfp::DesignSearchResult::found);

    m.def(
        "design_search",
        [](double p_inc, double dw2, double length_min, double length_max,
           double dw1_min, double dw1_max, const qfp::SolverSettings& s) {
            return qfp::design_search(
                p_inc, dw2,
                qfp::DesignBounds{length_min, length_max, dw1_min, dw1_max}, s);
        },
        "p_inc"_a, "dw2"_a, "length_min"_a = 0.0, "length_max"_a = 0.06,
        "dw1_min"_a = -0.5, "dw1_max"_a = 0.5,
        "settings"_a = qfp::SolverSettings{},
        "Best rectifier design over (L, dw1): maximizes min(r, l).");
}
