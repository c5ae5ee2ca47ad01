#include <doctest.h>

#include <cmath>
#include <numbers>

#include <biphoton/design.hpp>
#include <biphoton/error.hpp>
#include <biphoton/spectra.hpp>

#include "oracles.hpp"

using namespace biphoton;

namespace {

const double kOmega0 = angular_frequency(Length::nanometers(800.0));

GaussianBeamSurfaces fig5_surfaces(int n = 128) {
    const Material& bbo = builtin_material("BBO");
    const Length lp = Length::nanometers(400.0);
    const PumpEnvelope pump{kOmega0, sigma_from_fwhm(Length::nanometers(10.0), lp)};
    const BeamGeometry beam{factorable_waist(bbo, lp, Length::millimeters(1.0), Angle::degrees(3.0)),
                            Angle::degrees(3.0), Length::millimeters(1.0)};
    const FrequencyGrid g(kOmega0, 4.0 * pump.sigma_p, n);
    return gaussian_beam_surfaces(bbo, pump, beam, g, g);
}

// Gaussian integral of |model|^2 over the plane, up to a common constant.
double model_mass(double sigma, double inv_f2) {
    const double a = 1.0 / (sigma * sigma);
    return 1.0 / std::sqrt(inv_f2 * inv_f2 + 2.0 * a * inv_f2);
}

}  // namespace

TEST_CASE("frequency grid") {
    const FrequencyGrid g(kOmega0, 1e13, 5);
    CHECK(g.spacing() == doctest::Approx(5e12));
    CHECK(g.detuning(0) == doctest::Approx(-1e13));
    CHECK(g.detuning(4) == doctest::Approx(1e13));
    CHECK(g.omega(2) == doctest::Approx(kOmega0));
    CHECK_THROWS_AS(FrequencyGrid(kOmega0, 1e13, 1), ValidationError);
}

TEST_CASE("sinc half point and gaussian matching constant") {
    const double x = oracle::bisect([](double v) { return std::sin(v) / v - 0.5; }, 1.0, 2.5);
    CHECK(sinc_half_point() == doctest::Approx(x).epsilon(1e-13));
    CHECK(gaussian_sinc_gamma() == doctest::Approx(std::log(2.0) / (x * x)).epsilon(1e-13));
    CHECK(gaussian_sinc_gamma() == doctest::Approx(0.193).epsilon(0.001 / 0.193));
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc_phasematch(2.0, Length::meters(1.0)) == doctest::Approx(std::sin(1.0)));
}

TEST_CASE("gaussian model is normalized and anticorrelated") {
    const GaussianSourceModel m{4e13, 4e13};
    const FrequencyGrid g = model_grid(m, kOmega0, 96);
    const JointSpectralAmplitude jsa = gaussian_model_jsa(m, g, g);
    CHECK(jsa.is_normalized());
    CHECK(jsa.boundary_ratio() < 1e-3);

    // Weighted Pearson coefficient recomputed from the samples.
    const Eigen::MatrixXd w = jsa.values().cwiseAbs2();
    double sw = 0, ss = 0, si = 0, sss = 0, sii = 0, ssi = 0;
    for (int j = 0; j < g.size(); ++j)
        for (int k = 0; k < g.size(); ++k) {
            const double x = g.detuning(j), y = g.detuning(k), p = w(j, k);
            sw += p, ss += p * x, si += p * y, sss += p * x * x, sii += p * y * y, ssi += p * x * y;
        }
    const double cov = ssi / sw - ss * si / (sw * sw);
    const double r = cov / std::sqrt((sss / sw - ss * ss / (sw * sw)) * (sii / sw - si * si / (sw * sw)));
    CHECK(jsa.intensity_correlation() == doctest::Approx(r).epsilon(1e-10));
    // Covariance of |S|^2 is the inverse of its quadratic form: r = -a / (a + c) = -1/2 at sigma = sigma_F.
    CHECK(r == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("gaussian filter transmits the expected fraction") {
    const double sigma = 4e13, f1 = 8e13, f2 = 5e13;
    const GaussianSourceModel m{sigma, f1};
    const FrequencyGrid g = model_grid(m, kOmega0, 256);
    const FilteredJsa out = apply_gaussian_filter(gaussian_model_jsa(m, g, g), f2);
    const double inv = 1.0 / (f1 * f1) + 1.0 / (f2 * f2);
    CHECK(out.transmitted_fraction ==
          doctest::Approx(model_mass(sigma, inv) / model_mass(sigma, 1.0 / (f1 * f1))).epsilon(1e-8));
    CHECK(out.jsa.is_normalized());

    // Filtering model(sigma, f1) by f2 gives model(sigma, f) with 1/f^2 = 1/f1^2 + 1/f2^2.
    const JointSpectralAmplitude direct = gaussian_model_jsa({sigma, 1.0 / std::sqrt(inv)}, g, g);
    CHECK((out.jsa.values() - direct.values()).cwiseAbs().maxCoeff() < 1e-9 * direct.peak_magnitude());
}

TEST_CASE("strong filtering leaves a factorable product of filters") {
    const double sigma = 4e13;
    const GaussianSourceModel m{sigma, 10 * sigma};
    const FrequencyGrid g(kOmega0, 0.25 * sigma, 96);
    const FilteredJsa out = apply_gaussian_filter(gaussian_model_jsa(m, g, g), sigma / 20);
    Eigen::MatrixXcd ref(g.size(), g.size());
    for (int j = 0; j < g.size(); ++j)
        for (int k = 0; k < g.size(); ++k) {
            const double s = g.detuning(j), i = g.detuning(k);
            ref(j, k) = std::exp(-2 * (s * s + i * i) * std::pow(20 / sigma, 2));
        }
    const JointSpectralAmplitude r = JointSpectralAmplitude(g, g, ref).normalized();
    CHECK((out.jsa.values() - r.values()).cwiseAbs().maxCoeff() <= 0.01 * r.peak_magnitude());
}

TEST_CASE("sinc JSA peaks on the phase-matched diagonal") {
    const Material& bbo = builtin_material("BBO");
    CrystalConfig c{&bbo, PdcType::type_II_eoe, Length::millimeters(1.0), Angle{}, Angle{}};
    c.cut_angle = collinear_type2_cut_angle(bbo, Length::nanometers(800.0));
    const PumpEnvelope pump{kOmega0, 5e13};
    const FrequencyGrid g(kOmega0, 4e14, 65);
    const JointSpectralAmplitude jsa = build_jsa_collinear(c, pump, g, g);
    CHECK(jsa.is_normalized());
    Eigen::Index r = 0, col = 0;
    jsa.values().cwiseAbs().maxCoeff(&r, &col);
    CHECK(r == 32);
    CHECK(col == 32);
    c.emission_angle = Angle::degrees(1.0);
    CHECK_THROWS_AS(build_jsa_collinear(c, pump, g, g), ValidationError);
}

TEST_CASE("gaussian-beam factors have unit contour slopes") {
    const GaussianBeamSurfaces s = fig5_surfaces(64);
    const Eigen::MatrixXcd& lon = s.longitudinal.values();
    const Eigen::MatrixXcd& tr = s.transverse.values();
    double along_lon = 0, across_lon = 0, along_tr = 0, across_tr = 0;
    for (int j = 0; j + 1 < 64; ++j)
        for (int k = 1; k < 64; ++k) {
            along_lon = std::max(along_lon, std::abs(lon(j + 1, k - 1) - lon(j, k)));
            along_tr = std::max(along_tr, std::abs(tr(j + 1, k) - tr(j, k - 1)));
            across_lon = std::max(across_lon, std::abs(lon(j + 1, k) - lon(j, k - 1)));
            across_tr = std::max(across_tr, std::abs(tr(j + 1, k - 1) - tr(j, k)));
        }
    CHECK(along_lon < 1e-10 * across_lon);
    CHECK(along_tr < 1e-10 * across_tr);
    CHECK(std::abs(s.coefficients.pm_cross_coeff()) < 1e-6 * std::abs(s.coefficients.pm_diagonal_coeff()));
}

TEST_CASE("factorized and unfactorized gaussian-beam amplitudes agree at the design point") {
    const Material& bbo = builtin_material("BBO");
    const Length lp = Length::nanometers(400.0);
    const PumpEnvelope pump{kOmega0, sigma_from_fwhm(Length::nanometers(10.0), lp)};
    const BeamGeometry beam{Length::micrometers(287.0), Angle::degrees(3.0), Length::millimeters(1.0)};
    const FrequencyGrid g(kOmega0, 4.0 * pump.sigma_p, 96);
    const auto a = build_jsa_noncollinear_gaussian_beam(bbo, pump, beam, g, g);
    const auto b = build_jsa_gaussian_beam_unfactorized(bbo, pump, beam, g, g);
    const double overlap = std::abs((a.values().conjugate().cwiseProduct(b.values())).sum()) * a.measure();
    CHECK(overlap > 0.95);
}

TEST_CASE("gaussian-beam approximation regime is enforced") {
    const BeamGeometry tight{Length::micrometers(1.0), Angle::degrees(3.0), Length::millimeters(1.0)};
    CHECK_THROWS_AS(check_gaussian_beam_regime(tight), RegimeError);
    const BeamGeometry loose{Length::micrometers(287.0), Angle::degrees(3.0), Length::millimeters(1.0)};
    CHECK_NOTHROW(check_gaussian_beam_regime(loose));
}

TEST_CASE("transpose swaps signal and idler") {
    const GaussianBeamSurfaces s = fig5_surfaces(32);
    const JointSpectralAmplitude t = s.product.transposed();
    CHECK(t.values()(3, 7) == s.product.values()(7, 3));
}
