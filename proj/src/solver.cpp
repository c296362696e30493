#include "qfp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>

namespace qfp {

void DeviceConfig::validate() const {
    emitter1.validate();
    emitter2.validate();
    geometry.validate();
}

DeviceConfig DeviceConfig::swapped() const {
    return DeviceConfig{emitter2, emitter1, geometry};
}

void SolverSettings::validate() const {
    if (!(damping > 0.0) || damping > 1.0)
        throw InvalidParameterError("damping must lie in (0, 1]");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw InvalidParameterError("tolerances must be > 0");
    if (max_iterations < 1)
        throw InvalidParameterError("max_iterations must be >= 1");
    if (n_seeds < 1 || continuation_steps < 1)
        throw InvalidParameterError("n_seeds and continuation_steps must be >= 1");
}

std::pair<double, double> fixed_point_map(double p1, double p2, double p_inc,
                                          const DeviceConfig& dev) {
    dev.validate();
    if (p1 < 0.0 || p2 < 0.0 || p_inc < 0.0)
        throw InvalidParameterError("powers must be >= 0");
    if (p_inc == 0.0)
        return {0.0, 0.0};

    const MirrorPair mp = MirrorPair::from_reflectances(
        reflectance(p1, dev.emitter1), reflectance(p2, dev.emitter2),
        phase_shift(dev.emitter1), phase_shift(dev.emitter2));
    const CavityGeometry& geom = dev.geometry;

    const ComplexAmplitude inc = incident_amplitude(p_inc, geom, 0.0);
    const ComplexAmplitude back =
        intracavity_amplitudes(p_inc, mp, geom, 0.0).backward;
    const ComplexAmplitude fwd =
        intracavity_amplitudes(p_inc, mp, geom, geom.length_wavelengths).forward;

    return {std::norm(inc + back), std::norm(fwd)};
}

namespace {

SteadyStateSolution perfect_mirror_solution(const DeviceConfig& dev,
                                            std::int64_t iterations) {
    SteadyStateSolution sol;
    sol.p1 = 0.0;
    sol.p2 = 0.0;
    sol.R1 = 1.0;
    sol.R2 = 1.0;
    sol.theta1 = phase_shift(dev.emitter1);
    sol.theta2 = phase_shift(dev.emitter2);
    sol.transmittance = 0.0;
    sol.converged = true;
    sol.perfect_mirror_limit = true;
    sol.iterations = iterations;
    sol.residual = 0.0;
    return sol;
}

void fill_derived(SteadyStateSolution& sol, const DeviceConfig& dev) {
    sol.R1 = reflectance(sol.p1, dev.emitter1);
    sol.R2 = reflectance(sol.p2, dev.emitter2);
    sol.theta1 = phase_shift(dev.emitter1);
    sol.theta2 = phase_shift(dev.emitter2);
    // Unit reflectance (power rounded to 0 at resonance) is the solver's
    // singular limit: the transmittance is 0 there, not a formula value.
    if (sol.R1 >= 1.0 || sol.R2 >= 1.0)
        sol.transmittance = 0.0;
    else
        sol.transmittance = transmittance_formula(
            sol.R1, sol.R2, 0.5 * (sol.theta1 + sol.theta2),
            dev.geometry.half_phase());
}

double relative_residual(double p1, double p2, double n1, double n2,
                         double abs_tol) {
    const double r1 = std::abs(n1 - p1) / std::max(p1, abs_tol);
    const double r2 = std::abs(n2 - p2) / std::max(p2, abs_tol);
    return std::max(r1, r2);
}

} // namespace

SteadyStateSolution solve_steady_state(
    double p_inc, const DeviceConfig& dev, const SolverSettings& s,
    std::optional<std::pair<double, double>> seed) {
    dev.validate();
    s.validate();
    if (p_inc < 0.0 || !std::isfinite(p_inc))
        throw InvalidParameterError("p_inc must be finite and >= 0");
    if (p_inc == 0.0)
        return perfect_mirror_solution(dev, 0);

    double p1, p2;
    if (seed) {
        p1 = std::max(seed->first, 0.0);
        p2 = std::max(seed->second, 0.0);
    } else {
        // Exact in the no-feedback limit (R2 = 0).
        p1 = p_inc;
        p2 = (1.0 - reflectance(p_inc, dev.emitter1)) * p_inc;
    }

    double alpha = s.damping;
    double best = std::numeric_limits<double>::infinity();
    double last_res = std::numeric_limits<double>::infinity();
    int stall = 0;
    int clamped = 0;

    for (std::int64_t it = 0; it < s.max_iterations; ++it) {
        double n1, n2;
        try {
            std::tie(n1, n2) = fixed_point_map(p1, p2, p_inc, dev);
        } catch (const SingularityError&) {
            // p -> 0 drives both reflectances to 1; clamp and retry. If the
            // iterate keeps returning here, declare the perfect-mirror limit.
            p1 = std::max(p1, s.abs_tol);
            p2 = std::max(p2, s.abs_tol);
            if (++clamped >= 100)
                return perfect_mirror_solution(dev, it + 1);
            continue;
        }
        clamped = 0;

        const bool done = std::abs(n1 - p1) <= std::max(s.rel_tol * p1, s.abs_tol) &&
                          std::abs(n2 - p2) <= std::max(s.rel_tol * p2, s.abs_tol);
        if (done) {
            SteadyStateSolution sol;
            sol.p1 = p1;
            sol.p2 = p2;
            sol.converged = true;
            sol.iterations = it + 1;
            sol.residual = relative_residual(p1, p2, n1, n2, s.abs_tol);
            fill_derived(sol, dev);
            return sol;
        }

        // Stall detection: the undamped map can settle into a limit cycle
        // around the fixed point; halving the mixing factor restores
        // contraction.
        const double res = relative_residual(p1, p2, n1, n2, s.abs_tol);
        last_res = res;
        if (res < best * 0.9999) {
            best = res;
            stall = 0;
        } else if (++stall > 100 && alpha > 1e-4) {
            alpha *= 0.5;
            stall = 0;
            best = std::numeric_limits<double>::infinity();
        }

        p1 = (1.0 - alpha) * p1 + alpha * n1;
        p2 = (1.0 - alpha) * p2 + alpha * n2;
    }

    SteadyStateSolution sol;
    sol.p1 = p1;
    sol.p2 = p2;
    sol.converged = false;
    sol.iterations = s.max_iterations;
    try {
        auto [n1, n2] = fixed_point_map(p1, p2, p_inc, dev);
        sol.residual = relative_residual(p1, p2, n1, n2, s.abs_tol);
        fill_derived(sol, dev);
    } catch (const SingularityError&) {
        sol.residual = last_res; // last finite diagnostic
    }
    return sol;
}

SteadyStateSolution solve_with_continuation(double p_inc, const DeviceConfig& dev,
                                            const SolverSettings& s) {
    dev.validate();
    s.validate();
    if (p_inc < 0.0 || !std::isfinite(p_inc))
        throw InvalidParameterError("p_inc must be finite and >= 0");
    if (p_inc == 0.0)
        return perfect_mirror_solution(dev, 0);

    const double p_lo = std::min(p_inc, 10.0 * s.abs_tol);
    const int n = s.continuation_steps;

    std::optional<std::pair<double, double>> seed;
    SteadyStateSolution sol;
    for (int i = 0; i < n; ++i) {
        const double t = (n == 1) ? 1.0 : double(i) / double(n - 1);
        const double p = p_lo * std::pow(p_inc / p_lo, t);
        sol = solve_steady_state(p, dev, s, seed);
        seed = std::make_pair(sol.p1, sol.p2);
    }
    return sol;
}

SteadyStateSolution solve_auto(double p_inc, const DeviceConfig& dev,
                               const SolverSettings& s) {
    if (p_inc > 0.0 && p_inc < 0.01)
        return solve_with_continuation(p_inc, dev, s);
    return solve_steady_state(p_inc, dev, s);
}

std::vector<SteadyStateSolution> scan_fixed_points(double p_inc,
                                                   const DeviceConfig& dev,
                                                   const SolverSettings& s) {
    dev.validate();
    s.validate();

    std::vector<SteadyStateSolution> distinct;
    std::mt19937_64 rng(0x51ab2cd7f00dULL);
    const double lo = std::log(s.abs_tol);
    const double hi = std::log(10.0 * std::max(p_inc, 1.0));
    std::uniform_real_distribution<double> u(lo, hi);

    for (int k = 0; k < s.n_seeds; ++k) {
        const double s1 = std::exp(u(rng));
        const double s2 = std::exp(u(rng));
        SteadyStateSolution sol =
            solve_steady_state(p_inc, dev, s, std::make_pair(s1, s2));
        if (!sol.converged)
            continue;
        const bool known = std::any_of(
            distinct.begin(), distinct.end(), [&](const SteadyStateSolution& q) {
                const double d1 =
                    std::abs(q.p1 - sol.p1) / std::max({q.p1, sol.p1, s.abs_tol});
                const double d2 =
                    std::abs(q.p2 - sol.p2) / std::max({q.p2, sol.p2, s.abs_tol});
                return d1 < 1e-6 && d2 < 1e-6;
            });
        if (!known)
            distinct.push_back(sol);
    }

    std::sort(distinct.begin(), distinct.end(),
              [](const SteadyStateSolution& a, const SteadyStateSolution& b) {
                  return a.p1 < b.p1;
              });
    for (auto& sol : distinct)
        sol.branch_count = static_cast<int>(distinct.size());
    return distinct;
}

} // namespace qfp
