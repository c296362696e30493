#include "qfp/cavity.hpp"

#include "qfp/emitter.hpp"

#include <cmath>
#include <numbers>

namespace qfp {

namespace {

// D = 1 - sqrt(R1 R2) e^{2i(kL + theta+)}
ComplexAmplitude roundtrip_denominator(const MirrorPair& mp, double kl) {
    const ComplexAmplitude loop =
        std::polar(mp.r1 * mp.r2, 2.0 * (kl + mp.theta_plus()));
    return 1.0 - loop;
}

ComplexAmplitude checked_denominator(const MirrorPair& mp, double kl) {
    const ComplexAmplitude d = roundtrip_denominator(mp, kl);
    if (std::abs(d) < kSingularDenominator)
        throw SingularityError("Fabry-Perot round-trip denominator vanished");
    return d;
}

void check_power(double p) {
    if (p < 0.0 || !std::isfinite(p))
        throw InvalidParameterError("power must be finite and >= 0");
}

} // namespace

void CavityGeometry::validate() const {
    if (length_wavelengths < 0.0 || !std::isfinite(length_wavelengths))
        throw InvalidParameterError("emitter separation must be finite and >= 0");
}

double CavityGeometry::phase_kl() const {
    return 2.0 * std::numbers::pi * length_wavelengths;
}

double CavityGeometry::half_phase() const {
    return std::numbers::pi * length_wavelengths;
}

MirrorPair MirrorPair::from_reflectances(double R1, double R2,
                                         double theta1, double theta2) {
    if (R1 < 0.0 || R1 > 1.0 || R2 < 0.0 || R2 > 1.0)
        throw InvalidParameterError("mirror power reflectance must lie in [0, 1]");
    MirrorPair mp;
    mp.r1 = std::sqrt(R1);
    mp.r2 = std::sqrt(R2);
    mp.t1 = std::sqrt(1.0 - R1);
    mp.t2 = std::sqrt(1.0 - R2);
    mp.theta1 = theta1;
    mp.theta2 = theta2;
    return mp;
}

FpCoefficients fp_coefficients(double R1, double R2) {
    if (R1 < 0.0 || R2 < 0.0)
        throw InvalidParameterError("reflectances must be >= 0");
    if (R1 >= 1.0 || R2 >= 1.0)
        throw SingularityError("fp_coefficients undefined at unit reflectance");
    const double denom = (1.0 - R1) * (1.0 - R2);
    const double root = std::sqrt(R1 * R2);
    FpCoefficients c;
    c.f1 = (1.0 - root) * (1.0 - root) / denom;
    c.f2 = 4.0 * root / denom;
    return c;
}

double transmittance_formula(double R1, double R2, double theta_plus, double mu) {
    const FpCoefficients c = fp_coefficients(R1, R2);
    const double s = std::sin(2.0 * mu + theta_plus);
    return 1.0 / (c.f1 + c.f2 * s * s);
}

ComplexAmplitude output_amplitude(double p_inc, const MirrorPair& mp,
                                  const CavityGeometry& geom, double z) {
    check_power(p_inc);
    geom.validate();
    const double kl = geom.phase_kl();
    const ComplexAmplitude d = checked_denominator(mp, kl);
    const double k = 2.0 * std::numbers::pi;
    const ComplexAmplitude prop =
        std::polar(1.0, k * (z - geom.length_wavelengths));
    return std::sqrt(p_inc) * mp.t1 * mp.t2 * prop / d;
}

IntracavityAmplitudes intracavity_amplitudes(double p_inc, const MirrorPair& mp,
                                             const CavityGeometry& geom, double z) {
    check_power(p_inc);
    geom.validate();
    const double kl = geom.phase_kl();
    const ComplexAmplitude d = checked_denominator(mp, kl);
    const double k = 2.0 * std::numbers::pi;
    const double u = k * (z - geom.length_wavelengths);

    IntracavityAmplitudes amps;
    amps.forward = std::sqrt(p_inc) * mp.t1 * std::polar(1.0, u) / d;
    amps.backward = std::sqrt(p_inc) * mp.t1 * mp.r2 *
                    std::polar(1.0, kl + mp.theta2 - u) / d;
    return amps;
}

ComplexAmplitude incident_amplitude(double p_inc, const CavityGeometry& geom,
                                    double z) {
    check_power(p_inc);
    geom.validate();
    const double k = 2.0 * std::numbers::pi;
    return std::sqrt(p_inc) * std::polar(1.0, k * (z - geom.length_wavelengths));
}

} // namespace qfp
