#include "qfp/emitter.hpp"

#include <cmath>
#include <numbers>

namespace qfp {

void EmitterParams::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw InvalidParameterError("emitter decay rate must be finite and > 0");
    if (!std::isfinite(delta_omega))
        throw InvalidParameterError("emitter detuning must be finite");
}

BlochSteadyState bloch_steady_state(double p, const EmitterParams& em) {
    em.validate();
    if (p < 0.0 || !std::isfinite(p))
        throw InvalidParameterError("impinging power must be finite and >= 0");

    const double g = em.gamma;
    const double dw = em.delta_omega;
    const double omega = g * std::sqrt(2.0 * p);
    const double denom = g * g + 4.0 * dw * dw + 2.0 * omega * omega;

    BlochSteadyState st;
    st.rabi = omega;
    st.sigma_minus_re = -g * omega / denom;
    st.sigma_minus_im = (2.0 * dw / g) * st.sigma_minus_re;
    st.sigma_z = -0.5 + omega * omega / denom;
    return st;
}

double reflectance(double p, const EmitterParams& em) {
    em.validate();
    if (p < 0.0 || !std::isfinite(p))
        throw InvalidParameterError("impinging power must be finite and >= 0");
    const double g2 = em.gamma * em.gamma;
    return g2 / (g2 + 4.0 * em.delta_omega * em.delta_omega + 4.0 * p * g2);
}

double reflectance_from_bloch(double p, const EmitterParams& em) {
    if (!(p > 0.0))
        throw InvalidParameterError("reflectance_from_bloch requires p > 0");
    const BlochSteadyState st = bloch_steady_state(p, em);
    // Excited-state population sigma_z + 1/2, written as -Omega Re<s->/gamma
    // to avoid the cancellation at weak drive.
    const double excited = -st.rabi * st.sigma_minus_re / em.gamma;
    // gamma * excited photons/s scattered in total, half of them backward.
    const double reflected_rate = 0.5 * em.gamma * excited;
    return reflected_rate / (p * em.gamma);
}

double phase_shift(const EmitterParams& em) {
    em.validate();
    return std::atan(2.0 * em.delta_omega / em.gamma) - std::numbers::pi;
}

EmitterResponse emitter_response(double p, const EmitterParams& em) {
    return EmitterResponse{reflectance(p, em), phase_shift(em)};
}

} // namespace qfp
