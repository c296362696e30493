#include "qfp/cavity.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qfp;
namespace {
constexpr double pi = std::numbers::pi;

MirrorPair random_mirrors(std::mt19937_64& rng, double rmax = 0.95) {
    std::uniform_real_distribution<double> ur(0.0, rmax);
    std::uniform_real_distribution<double> uth(-3.0 * pi / 2.0, -pi / 2.0);
    return MirrorPair::from_reflectances(ur(rng), ur(rng), uth(rng), uth(rng));
}
} // namespace

TEST_CASE("fp_coefficients examples") {
    auto c = fp_coefficients(0.0, 0.0);
    CHECK(c.f1 == 1.0);
    CHECK(c.f2 == 0.0);
    c = fp_coefficients(0.5, 0.5);
    CHECK(c.f1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.f2 == doctest::Approx(8.0).epsilon(1e-14));
    c = fp_coefficients(0.9, 0.9);
    CHECK(c.f1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.f2 == doctest::Approx(360.0).epsilon(1e-12));
    CHECK_THROWS_AS(fp_coefficients(1.0, 0.5), SingularityError);
    CHECK_THROWS_AS(fp_coefficients(0.5, 1.0), SingularityError);
}

TEST_CASE("fp_coefficients invariants: F1 >= 1, F2 >= 0") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ur(0.0, 0.999);
    for (int i = 0; i < 5000; ++i) {
        const auto c = fp_coefficients(ur(rng), ur(rng));
        CHECK(c.f1 >= 1.0 - 1e-14);
        CHECK(c.f2 >= 0.0);
    }
}

TEST_CASE("transmittance_formula examples") {
    CHECK(transmittance_formula(0.3, 0.0, -1.234, 0.777) ==
          doctest::Approx(0.7).epsilon(1e-12));
    // resonant symmetric FP: sin term vanishes
    CHECK(transmittance_formula(0.5, 0.5, -pi, pi) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // antiresonance: sin^2 = 1
    CHECK(transmittance_formula(0.5, 0.5, -pi, 3.0 * pi / 4.0) ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("transmittance bounds and periodicity in mu") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> ur(0.0, 0.999), uth(-2.0 * pi, 0.0),
        umu(0.0, 10.0);
    for (int i = 0; i < 5000; ++i) {
        const double R1 = ur(rng), R2 = ur(rng), th = uth(rng), mu = umu(rng);
        const double t = transmittance_formula(R1, R2, th, mu);
        CHECK(t > 0.0);
        CHECK(t <= 1.0 + 1e-14);
        CHECK(transmittance_formula(R1, R2, th, mu + pi) ==
              doctest::Approx(t).epsilon(1e-10));
    }
}

TEST_CASE("incident amplitude examples") {
    CHECK(std::abs(incident_amplitude(1.0, CavityGeometry{1.0}, 0.0) -
                   ComplexAmplitude{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(incident_amplitude(4.0, CavityGeometry{0.0}, 0.0) -
                   ComplexAmplitude{2.0, 0.0}) < 1e-14);
    CHECK(std::abs(incident_amplitude(1.0, CavityGeometry{0.25}, 0.0) -
                   ComplexAmplitude{0.0, -1.0}) < 1e-14);
}

TEST_CASE("output amplitude: transparent emitters") {
    const auto mp = MirrorPair::from_reflectances(0.0, 0.0, -pi, -pi);
    const auto a = output_amplitude(1.0, mp, CavityGeometry{0.7}, 0.7);
    CHECK(std::abs(a - ComplexAmplitude{1.0, 0.0}) < 1e-12);
}

TEST_CASE("output amplitude: antiresonant quarter-wave example") {
    const auto mp = MirrorPair::from_reflectances(0.5, 0.5, -pi, -pi);
    const auto a = output_amplitude(0.001, mp, CavityGeometry{0.25}, 0.25);
    CHECK(std::norm(a) / 0.001 == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("|output|^2 / p equals the closed-form transmittance") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ul(0.0, 3.0), up(1e-6, 10.0);
    for (int i = 0; i < 3000; ++i) {
        const auto mp = random_mirrors(rng);
        const CavityGeometry geom{ul(rng)};
        const double p = up(rng);
        const auto a = output_amplitude(p, mp, geom, geom.length_wavelengths);
        const double t = transmittance_formula(mp.r1 * mp.r1, mp.r2 * mp.r2,
                                               mp.theta_plus(), geom.half_phase());
        CHECK(std::norm(a) / p == doctest::Approx(t).epsilon(1e-12));
    }
}

TEST_CASE("intracavity amplitudes: no backward wave without a second mirror") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> uz(0.0, 0.8);
    const auto mp = MirrorPair::from_reflectances(0.4, 0.0, -pi, -pi);
    for (int i = 0; i < 50; ++i) {
        const auto a = intracavity_amplitudes(1.0, mp, CavityGeometry{0.8}, uz(rng));
        CHECK(std::abs(a.backward) == 0.0);
    }
}

TEST_CASE("intracavity amplitudes: free propagation") {
    const auto mp = MirrorPair::from_reflectances(0.0, 0.0, -pi, -pi);
    const auto a = intracavity_amplitudes(2.5, mp, CavityGeometry{0.8}, 0.3);
    CHECK(std::norm(a.forward) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("|backward|^2 / |forward|^2 = R2; magnitudes independent of z") {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> ul(0.01, 2.0), up(1e-4, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const auto mp = random_mirrors(rng);
        const double L = ul(rng);
        const CavityGeometry geom{L};
        const double p = up(rng);
        const auto a0 = intracavity_amplitudes(p, mp, geom, 0.0);
        const auto a1 = intracavity_amplitudes(p, mp, geom, 0.37 * L);
        const auto a2 = intracavity_amplitudes(p, mp, geom, L);
        CHECK(std::abs(a0.forward) == doctest::Approx(std::abs(a1.forward)).epsilon(1e-12));
        CHECK(std::abs(a1.forward) == doctest::Approx(std::abs(a2.forward)).epsilon(1e-12));
        CHECK(std::abs(a0.backward) == doctest::Approx(std::abs(a2.backward)).epsilon(1e-12));
        if (mp.r2 > 0.0) {
            CHECK(std::norm(a1.backward) / std::norm(a1.forward) ==
                  doctest::Approx(mp.r2 * mp.r2).epsilon(1e-12));
        }
    }
}

TEST_CASE("mirror pair: r^2 + t^2 = 1 per mirror") {
    std::mt19937_64 rng(20);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const auto mp = MirrorPair::from_reflectances(ur(rng), ur(rng), -pi, -pi);
        CHECK(std::abs(mp.r1 * mp.r1 + mp.t1 * mp.t1 - 1.0) <= 1e-14);
        CHECK(std::abs(mp.r2 * mp.r2 + mp.t2 * mp.t2 - 1.0) <= 1e-14);
    }
    CHECK_THROWS_AS(MirrorPair::from_reflectances(1.2, 0.0, -pi, -pi),
                    InvalidParameterError);
    // R = 1 is representable for limit diagnostics
    const auto mp = MirrorPair::from_reflectances(1.0, 0.5, -pi, -pi);
    CHECK(mp.r1 == 1.0);
    CHECK(mp.t1 == 0.0);
}

TEST_CASE("truncated series converges to the closed forms") {
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> ul(0.0, 2.0), uz(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const auto mp = random_mirrors(rng, 0.9); // sqrt(R1 R2) <= 0.9
        const CavityGeometry geom{ul(rng)};
        const double root = mp.r1 * mp.r2;
        const double tail = std::pow(root, 64) / (1.0 - root);

        const double zo = geom.length_wavelengths * (1.0 + uz(rng));
        const auto s_out = qfp_test::output_series(1.0, mp, geom, zo, 64);
        const auto c_out = output_amplitude(1.0, mp, geom, zo);
        CHECK(std::abs(s_out - c_out) <= tail + 1e-13);

        const double zi = geom.length_wavelengths * uz(rng);
        const auto s_in = qfp_test::intracavity_series(1.0, mp, geom, zi, 64);
        const auto c_in = intracavity_amplitudes(1.0, mp, geom, zi);
        CHECK(std::abs(s_in.forward - c_in.forward) <= tail + 1e-13);
        CHECK(std::abs(s_in.backward - c_in.backward) <= tail + 1e-13);
    }
}

TEST_CASE("singular denominator raises the typed error") {
    // r1 r2 = 1 with aligned phase: denominator exactly 0
    MirrorPair mp;
    mp.r1 = 1.0;
    mp.r2 = 1.0;
    mp.t1 = 0.0;
    mp.t2 = 0.0;
    mp.theta1 = -pi;
    mp.theta2 = -pi;
    const CavityGeometry geom{1.0};
    CHECK_THROWS_AS(output_amplitude(1.0, mp, geom, 1.0), SingularityError);
    CHECK_THROWS_AS(intracavity_amplitudes(1.0, mp, geom, 0.5), SingularityError);
}
