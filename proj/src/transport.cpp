#include "qfp/transport.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace qfp {

namespace {

// Mean of e^{2iku} over u = z - L in [-L, 0]: (1 - e^{-2ikL}) / (2ikL),
// with the series expansion taking over at small kL.
ComplexAmplitude phase_average(double kl) {
    if (std::abs(kl) < 1e-6) {
        const ComplexAmplitude i(0.0, 1.0);
        return 1.0 - i * kl - (2.0 / 3.0) * kl * kl;
    }
    const ComplexAmplitude i2kl(0.0, 2.0 * kl);
    return (1.0 - std::exp(-i2kl)) / i2kl;
}

MirrorPair converged_mirrors(const SteadyStateSolution& sol) {
    return MirrorPair::from_reflectances(sol.R1, sol.R2, sol.theta1, sol.theta2);
}

} // namespace

std::pair<double, SteadyStateSolution> transmit(double p_inc,
                                                const DeviceConfig& dev,
                                                Direction dir,
                                                const SolverSettings& s) {
    const DeviceConfig d =
        (dir == Direction::RightToLeft) ? dev.swapped() : dev;
    SteadyStateSolution sol = solve_auto(p_inc, d, s);
    return {sol.transmittance, sol};
}

RectificationResult rectify(double p_inc, const DeviceConfig& dev,
                            const SolverSettings& s) {
    const auto [t12, sol12] = transmit(p_inc, dev, Direction::LeftToRight, s);
    const auto [t21, sol21] = transmit(p_inc, dev, Direction::RightToLeft, s);

    RectificationResult res;
    res.t12 = t12;
    res.t21 = t21;
    res.both_converged = sol12.converged && sol21.converged;
    const double sum = t12 + t21;
    res.r_factor = (sum > 0.0) ? std::abs(t12 - t21) / sum : 0.0;
    res.l_factor = t12 * res.r_factor;
    return res;
}

IntensityProfile intracavity_profile(double p_inc, const DeviceConfig& dev,
                                     int n_samples, const SolverSettings& s) {
    if (n_samples < 2)
        throw InvalidParameterError("profile needs at least 2 sample points");

    const SteadyStateSolution sol = solve_auto(p_inc, dev, s);
    const double L = dev.geometry.length_wavelengths;

    IntensityProfile prof;
    prof.converged = sol.converged;
    prof.positions.resize(n_samples);
    prof.intensities.resize(n_samples);

    if (sol.perfect_mirror_limit) {
        for (int i = 0; i < n_samples; ++i)
            prof.positions[i] = L * double(i) / double(n_samples - 1);
        return prof; // dark cavity, all zero
    }

    const MirrorPair mp = converged_mirrors(sol);
    const CavityGeometry& geom = dev.geometry;
    for (int i = 0; i < n_samples; ++i) {
        const double z = L * double(i) / double(n_samples - 1);
        const IntracavityAmplitudes a = intracavity_amplitudes(p_inc, mp, geom, z);
        prof.positions[i] = z;
        prof.intensities[i] = std::norm(a.forward + a.backward);
    }

    // p_intr(z) = |A e^{iku} + C e^{-iku}|^2 with u = z - L, where A and C
    // are the amplitudes at z = L; averaging the cross term gives the
    // closed form below.
    const double kl = geom.phase_kl();
    const IntracavityAmplitudes aL = intracavity_amplitudes(p_inc, mp, geom, L);
    const ComplexAmplitude A = aL.forward;
    const ComplexAmplitude C = aL.backward;
    prof.average = std::norm(A) + std::norm(C) +
                   2.0 * std::real(A * std::conj(C) * phase_average(kl));

    // Composite Simpson cross-check on an internal fine grid.
    const int nq = 4096;
    double quad = 0.0;
    for (int i = 0; i <= nq; ++i) {
        const double z = L * double(i) / double(nq);
        const IntracavityAmplitudes a = intracavity_amplitudes(p_inc, mp, geom, z);
        const double v = std::norm(a.forward + a.backward);
        const double w = (i == 0 || i == nq) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        quad += w * v;
    }
    quad /= 3.0 * nq;
    if (std::abs(quad - prof.average) > 1e-8 * std::max(prof.average, 1e-30))
        throw std::runtime_error(
            "intracavity average: quadrature and closed form disagree");

    return prof;
}

std::vector<ScalingPoint> average_intracavity_scaling(
    const DeviceConfig& dev, const std::vector<double>& p_inc_list,
    const SolverSettings& s) {
    std::vector<ScalingPoint> out;
    out.reserve(p_inc_list.size());
    for (double p : p_inc_list) {
        const IntensityProfile prof = intracavity_profile(p, dev, 2, s);
        out.push_back(ScalingPoint{p, prof.average, prof.converged});
    }
    return out;
}

} // namespace qfp
