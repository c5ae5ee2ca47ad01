#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <biphoton/error.hpp>
#include <biphoton/interference.hpp>
#include <biphoton/schmidt.hpp>

#include "oracles.hpp"

using namespace biphoton;

namespace {

const double kOmega0 = angular_frequency(Length::nanometers(800.0));

JointSpectralAmplitude model_jsa(const GaussianSourceModel& m, int n) {
    const FrequencyGrid g = model_grid(m, kOmega0, n);
    return gaussian_model_jsa(m, g, g);
}

JointSpectralAmplitude type2_jsa(int n = 64) {
    const Material& bbo = builtin_material("BBO");
    const Length lam = Length::nanometers(800.0);
    CrystalConfig c{&bbo, PdcType::type_II_eoe, Length::millimeters(2.0), collinear_type2_cut_angle(bbo, lam), Angle{}};
    const PumpEnvelope pump{kOmega0, 6e13};
    const FrequencyGrid g(kOmega0, 3e14, n);
    return build_jsa_collinear(c, pump, g, g);
}

}  // namespace

TEST_CASE("kernel contraction matches the quadruple sum") {
    const GaussianSourceModel m{4e13, 3e13};
    const JointSpectralAmplitude jsa = model_jsa(m, 16);
    const double v = two_crystal_homi_numeric(jsa, {0.0}).visibility;
    CHECK(v == doctest::Approx(oracle::homi_quadruple_sum(jsa)).epsilon(1e-10));

    const JointSpectralAmplitude asym = type2_jsa(16);
    CHECK(two_crystal_homi_numeric(asym, {0.0}).visibility ==
          doctest::Approx(oracle::homi_quadruple_sum(asym)).epsilon(1e-10));
}

TEST_CASE("analytic visibility is the single-source purity") {
    for (double ratio : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const GaussianSourceModel m{4e13, 4e13 / ratio};
        CHECK(homi_visibility_analytic(m) == doctest::Approx(1.0 / analytic_K(analytic_mu(m))).epsilon(1e-12));
    }
    const GaussianSourceModel eq{4e13, 4e13};
    CHECK(homi_visibility_analytic(eq) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
    CHECK(homi_baseline_analytic(eq) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("numeric dip follows the analytic curve") {
    const GaussianSourceModel m{4e13, 4e13};
    const JointSpectralAmplitude jsa = model_jsa(m, 128);
    const auto tau = default_tau_grid(homi_dip_width(m));
    CHECK(tau.size() == 41);
    const DipCurve num = two_crystal_homi_numeric(jsa, tau);
    const DipCurve ana = homi_dip_analytic(m, tau);
    for (std::size_t k = 0; k < tau.size(); ++k)
        CHECK(num.rate[k] == doctest::Approx(ana.rate[k] / ana.baseline).epsilon(1e-6));
    CHECK(ana.rate[20] == doctest::Approx(ana.baseline * (1.0 - ana.visibility)));
}

TEST_CASE("residual diagnostics") {
    const JointSpectralAmplitude jsa = model_jsa({4e13, 4e13}, 64);
    CHECK(symmetry_residual(jsa) < 1e-12);
    CHECK(symmetry_residual(type2_jsa()) > 0.1);
    const auto d = schmidt_svd(jsa);
    CHECK(factorability_residual(jsa) == doctest::Approx(1.0 - d.eigenvalues[0]).epsilon(1e-10));
    const EffectiveModes e = effective_mode_factorization(jsa);
    CHECK(e.weight == doctest::Approx(d.eigenvalues[0]).epsilon(1e-10));
    CHECK(e.p.norm() * std::sqrt(jsa.grid_s().spacing()) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Bell analyzer separates psi+ and psi- when g is f transposed") {
    const JointSpectralAmplitude f = type2_jsa();
    const PolarizedPairState pair(f, f.transposed());
    const BellRates r0 = bell_analyzer_rates(pair, 0.0);
    CHECK(r0.plus < 1e-8);
    CHECK(r0.minus == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(bell_condition_residual(pair) < 1e-12);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> tau(-2e-12, 2e-12);
    for (int k = 0; k < 20; ++k) {
        const BellRates r = bell_analyzer_rates(pair, tau(rng));
        CHECK(r.plus + r.minus == doctest::Approx(1.0).epsilon(1e-10));
    }
    const PolarizedPairState same(f, f);
    CHECK(bell_analyzer_rates(same, 0.0).plus > 0.01);
}

TEST_CASE("identical f and g give full polarization fringes") {
    const JointSpectralAmplitude f = type2_jsa(48);
    const PolarizedPairState pair(f, f);
    for (int a = 0; a < 19; ++a)
        for (int b = 0; b < 19; ++b) {
            const double ta = a * std::numbers::pi / 18, tb = b * std::numbers::pi / 18;
            CHECK(polarization_fringe(pair, ta, tb) == doctest::Approx(std::pow(std::sin(ta + tb), 2)).epsilon(1e-9));
        }
    const PolarizedPairState minus(f, f, -1);
    CHECK(polarization_fringe(minus, 0.3, 0.5) == doctest::Approx(std::pow(std::sin(0.3 - 0.5), 2)).epsilon(1e-9));
    const PolarizedPairState bell_only(f, f.transposed());
    CHECK(fringe_visibility(bell_only, std::numbers::pi / 4) < fringe_visibility(pair, std::numbers::pi / 4));
}

TEST_CASE("half-wave plate exchanges the two conditions") {
    const JointSpectralAmplitude f = type2_jsa(48);
    const PolarizedPairState pair(f, f.transposed());
    const PolarizedPairState turned = half_wave_plate_transform(pair);
    CHECK(polcorr_condition_residual(turned) == doctest::Approx(bell_condition_residual(pair)).epsilon(1e-12));
    CHECK(bell_condition_residual(turned) == doctest::Approx(polcorr_condition_residual(pair)).epsilon(1e-12));
}

TEST_CASE("pair state validation") {
    const JointSpectralAmplitude f = type2_jsa(32);
    const JointSpectralAmplitude other = model_jsa({4e13, 4e13}, 32);
    CHECK_THROWS_AS(PolarizedPairState(f, other), ValidationError);
}
