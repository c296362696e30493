// Physical observables of the two-emitter interferometer: directional
// transmittance, rectification figures of merit, and intracavity intensity
// profiles.

#pragma once

#include "qfp/solver.hpp"

#include <utility>
#include <vector>

namespace qfp {

enum class Direction { LeftToRight, RightToLeft };

struct RectificationResult {
    double t12 = 0.0;
    double t21 = 0.0;
    double r_factor = 0.0; // |T12 - T21| / (T12 + T21)
    double l_factor = 0.0; // T12 * r_factor
    bool both_converged = false;
};

struct IntensityProfile {
    std::vector<double> positions;   // z in [0, L], wavelengths
    std::vector<double> intensities; // |forward(z) + backward(z)|^2
    double average = 0.0;            // closed-form mean over [0, L]
    bool converged = false;
};

struct ScalingPoint {
    double p_inc = 0.0;
    double average_intracavity = 0.0;
    bool converged = false;
};

// Self-consistent transmittance in the given direction. RightToLeft is
// computed on the emitter-swapped device.
std::pair<double, SteadyStateSolution> transmit(double p_inc,
                                                const DeviceConfig& dev,
                                                Direction dir,
                                                const SolverSettings& s);

// Both directions plus the rectifying factor and figure of merit.
RectificationResult rectify(double p_inc, const DeviceConfig& dev,
                            const SolverSettings& s);

// Standing-wave intensity between the emitters at the converged powers,
// sampled on a uniform grid of n_samples >= 2 points including endpoints.
// The average is evaluated in closed form and cross-checked against
// composite quadrature to 1e-8 relative.
IntensityProfile intracavity_profile(double p_inc, const DeviceConfig& dev,
                                     int n_samples, const SolverSettings& s);

// Average intracavity intensity for each listed incident power.
std::vector<ScalingPoint> average_intracavity_scaling(
    const DeviceConfig& dev, const std::vector<double>& p_inc_list,
    const SolverSettings& s);

} // namespace qfp
