// Single two-level-system physics: optical-Bloch steady state, saturable
// power reflectance and reflection phase shift.
//
// Units: all rates are expressed in a reference decay rate, powers are
// dimensionless photon numbers per lifetime. No SI conversions anywhere.

#pragma once

#include <stdexcept>

namespace qfp {

// Thrown on invalid physical parameters (gamma <= 0, negative power, ...).
class InvalidParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Decay rate and detuning of one emitter. The detuning is the drive
// frequency minus the transition frequency, in units of the reference rate.
struct EmitterParams {
    double gamma = 1.0;
    double delta_omega = 0.0;

    void validate() const;
};

// Steady state of the driven two-level system. rabi = gamma*sqrt(2 p).
struct BlochSteadyState {
    double sigma_minus_re = 0.0;
    double sigma_minus_im = 0.0;
    double sigma_z = -0.5;
    double rabi = 0.0;
};

// Power reflectance in [0,1] and reflection phase in (-3pi/2, -pi/2).
struct EmitterResponse {
    double reflectance = 1.0;
    double phase_shift = 0.0;
};

// Steady-state Bloch vector for impinging power p >= 0.
BlochSteadyState bloch_steady_state(double p, const EmitterParams& em);

// Saturable reflectance gamma^2 / (gamma^2 + 4 dw^2 + 4 p gamma^2).
double reflectance(double p, const EmitterParams& em);

// Reflectance recomputed through the Bloch steady state: the excited-state
// population radiates at rate gamma, half of it backward, normalized by the
// incident photon flux p*gamma. Requires p > 0 (the normalization is
// singular at p = 0). Agrees with reflectance() to ~1e-15 relative.
double reflectance_from_bloch(double p, const EmitterParams& em);

// Reflection phase shift atan(2 dw / gamma) - pi.
double phase_shift(const EmitterParams& em);

// Reflectance and phase bundled.
EmitterResponse emitter_response(double p, const EmitterParams& em);

} // namespace qfp
