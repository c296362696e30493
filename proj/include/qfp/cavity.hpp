// Coherent Fabry-Perot amplitude algebra for two partially reflecting
// mirrors at z = 0 and z = L: incident, intracavity (both directions) and
// output amplitudes, plus the closed-form transmittance.
//
// Phase convention: the field phase is 0 at z = L, so the incident wave is
// sqrt(p_inc) e^{ik(z-L)}. Lengths are measured in photon wavelengths,
// k L = 2 pi length_wavelengths.

#pragma once

#include <complex>
#include <stdexcept>

namespace qfp {

using ComplexAmplitude = std::complex<double>;

// Round-trip denominator (or F1/F2 denominator) too close to zero.
class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// |1 - sqrt(R1 R2) e^{2i(kL+theta+)}| below this raises SingularityError.
inline constexpr double kSingularDenominator = 1e-14;

struct CavityGeometry {
    double length_wavelengths = 0.0;

    void validate() const;
    double phase_kl() const;   // k L = 2 pi length
    double half_phase() const; // mu = k L / 2
};

// Amplitude reflectances/transmittances and reflection phases of the two
// mirrors. r^2 + t^2 = 1 per mirror.
struct MirrorPair {
    double r1 = 0.0, r2 = 0.0;
    double t1 = 1.0, t2 = 1.0;
    double theta1 = 0.0, theta2 = 0.0;

    static MirrorPair from_reflectances(double R1, double R2,
                                        double theta1, double theta2);
    double theta_plus() const { return 0.5 * (theta1 + theta2); }
};

struct FpCoefficients {
    double f1 = 1.0; // >= 1 always
    double f2 = 0.0; // >= 0
};

// F1 = (1-sqrt(R1R2))^2 / ((1-R1)(1-R2)), F2 = 4 sqrt(R1R2) / ((1-R1)(1-R2)).
// Throws SingularityError if either reflectance reaches 1.
FpCoefficients fp_coefficients(double R1, double R2);

// T = 1 / (F1 + F2 sin^2(2 mu + theta_plus)), in (0, 1].
double transmittance_formula(double R1, double R2, double theta_plus, double mu);

// Transmitted amplitude at z >= L:
//   sqrt(p) e^{ik(z-L)} sqrt(T1 T2) / (1 - sqrt(R1R2) e^{2i(kL+theta+)})
ComplexAmplitude output_amplitude(double p_inc, const MirrorPair& mp,
                                  const CavityGeometry& geom, double z);

struct IntracavityAmplitudes {
    ComplexAmplitude forward;
    ComplexAmplitude backward;
};

// Intracavity amplitudes at 0 <= z <= L:
//   forward  = sqrt(p T1) e^{ik(z-L)} / D
//   backward = sqrt(p T1 R2) e^{i(kL+theta2)} e^{-ik(z-L)} / D
// with D = 1 - sqrt(R1R2) e^{2i(kL+theta+)}.
IntracavityAmplitudes intracavity_amplitudes(double p_inc, const MirrorPair& mp,
                                             const CavityGeometry& geom, double z);

// Incident amplitude sqrt(p) e^{ik(z-L)} at z <= 0.
ComplexAmplitude incident_amplitude(double p_inc, const CavityGeometry& geom,
                                    double z);

} // namespace qfp
