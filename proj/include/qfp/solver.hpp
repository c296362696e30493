// Self-consistent solution of the coupled intensity equations
//   p1 = |incident(0) + backward_intracavity(0)|^2
//   p2 = |forward_intracavity(L)|^2
// where the mirror reflectances are the saturable emitter reflectances
// evaluated at (p1, p2). Damped fixed-point iteration with continuation
// and multistability diagnostics.

#pragma once

#include "qfp/cavity.hpp"
#include "qfp/emitter.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qfp {

struct DeviceConfig {
    EmitterParams emitter1;
    EmitterParams emitter2;
    CavityGeometry geometry;

    void validate() const;
    // The same device traversed from the other side.
    DeviceConfig swapped() const;
};

struct SolverSettings {
    // Initial mixing factor of the damped iteration; the solver halves it
    // internally whenever the residual stalls (the plain alpha = 0.5 map
    // enters a limit cycle at resonant integer spacings).
    double damping = 0.5;
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    std::int64_t max_iterations = 100000;
    int n_seeds = 32;          // random restarts in scan_fixed_points
    int continuation_steps = 48;

    void validate() const;
};

struct SteadyStateSolution {
    double p1 = 0.0;
    double p2 = 0.0;
    double R1 = 1.0;
    double R2 = 1.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double transmittance = 0.0;
    bool converged = false;
    // p -> 0 with the round-trip denominator underflowing: the emitters act
    // as perfect mirrors and T is reported as 0.
    bool perfect_mirror_limit = false;
    std::int64_t iterations = 0;
    // max over components of |p - f(p)| / max(p, abs_tol), re-evaluated
    // once from scratch at the reported point.
    double residual = 0.0;
    // Distinct fixed points found by scan_fixed_points (0 = not scanned).
    int branch_count = 0;
};

// One application of the self-consistency map at trial powers (p1, p2).
// Throws SingularityError when the cavity denominator vanishes.
std::pair<double, double> fixed_point_map(double p1, double p2, double p_inc,
                                          const DeviceConfig& dev);

// Damped iteration p <- (1-a) p + a f(p) from `seed` (default: the
// no-feedback seed (p_inc, (1-R1(p_inc)) p_inc)) until the componentwise
// residual drops below max(rel_tol p, abs_tol). Non-convergence is reported
// in the result, never thrown.
SteadyStateSolution solve_steady_state(
    double p_inc, const DeviceConfig& dev, const SolverSettings& s,
    std::optional<std::pair<double, double>> seed = std::nullopt);

// Adiabatic ramp: continuation_steps solves geometrically spaced from
// min(p_inc, 10 abs_tol) up to p_inc, each warm-started from the previous
// fixed point. Default branch selection under multistability.
SteadyStateSolution solve_with_continuation(double p_inc, const DeviceConfig& dev,
                                            const SolverSettings& s);

// Default strategy: continuation below p_inc = 0.01 (where saturable
// reflectances approach 1 and the plain iteration is ill-conditioned),
// plain damped iteration above.
SteadyStateSolution solve_auto(double p_inc, const DeviceConfig& dev,
                               const SolverSettings& s);

// Damped iteration from n_seeds random seeds, log-uniform in
// [abs_tol, 10 max(p_inc, 1)]^2; converged results clustered at 1e-6
// relative distance and sorted by p1. Answers the multistability question
// empirically; branch_count is set on every returned solution.
std::vector<SteadyStateSolution> scan_fixed_points(double p_inc,
                                                   const DeviceConfig& dev,
                                                   const SolverSettings& s);

} // namespace qfp
