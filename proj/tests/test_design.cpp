#include <doctest.h>

#include <cmath>

#include <biphoton/design.hpp>
#include <biphoton/error.hpp>
#include <biphoton/spectra.hpp>

#include "oracles.hpp"

using namespace biphoton;

namespace {

const Length kPump = Length::nanometers(400.0);
const Length kL = Length::millimeters(1.0);
const Angle kTheta = Angle::degrees(3.0);

}  // namespace

TEST_CASE("design slopes come from the phase-matched cut") {
    const Material& bbo = builtin_material("BBO");
    const DesignSlopes s = design_slopes(bbo, kPump, kTheta);
    CHECK(degenerate_noncollinear_angle(bbo, kPump, s.cut_angle).deg() == doctest::Approx(3.0).epsilon(1e-10));
    const double wp = angular_frequency(kPump);
    const auto kp = [&](double w) { return wave_props_at(bbo, w, Ray::extraordinary(s.cut_angle)).k; };
    CHECK(s.kp_prime == doctest::Approx(oracle::derivative(kp, wp, wp * 1e-4)).epsilon(1e-8));
}

TEST_CASE("factorable waist") {
    const Material& bbo = builtin_material("BBO");
    const DesignSlopes s = design_slopes(bbo, kPump, kTheta);
    const double t = kTheta.rad();
    const double expected =
        kL.m() * std::sqrt(gaussian_sinc_gamma()) * (s.kp_prime - s.k_prime * std::cos(t)) / (s.k_prime * std::sin(t));
    const Length w0 = factorable_waist(bbo, kPump, kL, kTheta);
    CHECK(w0.m() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(w0.um() == doctest::Approx(287.0).epsilon(5.0 / 287.0));
    CHECK_THROWS_AS(factorable_waist(bbo, kPump, kL, Angle{}), ValidationError);
}

TEST_CASE("pump bandwidth threshold and regime checks") {
    const Material& bbo = builtin_material("BBO");
    const DesignSlopes s = design_slopes(bbo, kPump, kTheta);
    const double th = pump_bandwidth_threshold(bbo, kPump, kL, kTheta);
    CHECK(th == doctest::Approx(std::sqrt(2.0) / (gaussian_sinc_gamma() * kL.m() *
                                                  (s.kp_prime - s.k_prime * std::cos(kTheta.rad()))))
                    .epsilon(1e-12));
    CHECK(sigma_from_fwhm(Length::nanometers(10.0), kPump) > th);

    const Length w0 = factorable_waist(bbo, kPump, kL, kTheta);
    const RegimeCheck reg = validate_waist_regime(w0, kL, kTheta);
    CHECK(reg.flag);
    CHECK(reg.ratio == doctest::Approx(0.287 / (std::sqrt(gaussian_sinc_gamma()) * std::pow(std::sin(kTheta.rad()), 2)))
                           .epsilon(0.01));
    CHECK(validate_waist_regime(Length::micrometers(1.0), kL, kTheta).flag == false);

    const RegimeCheck corr = freq_correlated_margin(bbo, kPump, Length::micrometers(200.0), kTheta,
                                                    Length::millimeters(1.0));
    CHECK(corr.ratio == doctest::Approx(1e-3 / factorable_waist(bbo, kPump, Length::micrometers(200.0), kTheta).m()));
    CHECK(corr.flag);
    CHECK_FALSE(freq_correlated_margin(bbo, kPump, kL, kTheta, w0).flag);
}

TEST_CASE("design reports") {
    DesignInputs in{&builtin_material("BBO"), kPump, kL, kTheta, std::nullopt, std::nullopt};
    const DesignReport f = factorable_report(in);
    CHECK(f.operation == "factorable");
    bool found = false;
    for (const auto& v : f.outputs)
        if (v.name == "w0") {
            found = true;
            CHECK(v.value == doctest::Approx(factorable_waist(*in.material, kPump, kL, kTheta).m()));
        }
    CHECK(found);
    CHECK_THROWS_AS(correlated_report(in), ValidationError);
    CHECK_THROWS_AS(regime_report(in), ValidationError);
    in.w0 = Length::millimeters(1.0);
    CHECK(correlated_report(in).flags.size() >= 1);
    in.sigma_p = 1e14;
    CHECK(threshold_report(in).flags.size() == 1);
}

TEST_CASE("economy figure of merit") {
    const auto kdp = economy_figure({"KDP", 100, 1e-5, 65e3, 0.75, 6.5e7});
    CHECK(kdp.r == doctest::Approx(6.5e7));
    CHECK_FALSE(kdp.discrepancy);
    const auto bbo = economy_figure({"BBO", 2, 0.465, 1.25e6, 0.26, 2.7e6});
    CHECK(bbo.r == doctest::Approx(1.25e6 / 0.93));
    CHECK(bbo.discrepancy);
    const auto ktp = economy_figure({"KTP", 1, 2.2e-5, 720e3, 0.185, 3.3e10});
    CHECK(std::abs(*ktp.deviation) < 0.02);
    CHECK_FALSE(economy_figure({"x", 1, 1, 1, 0.1, std::nullopt}).deviation.has_value());
}

TEST_CASE("economy CSV parsing") {
    const auto rows = parse_economy_csv("# comment\nlabel,L_mm,P_W,Rs_Hz,ratio\nA,1,2,3,0.5\nB,1,2,3,0.5,1.5\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].label == "A");
    CHECK_FALSE(rows[0].printed_r.has_value());
    CHECK(*rows[1].printed_r == 1.5);
    CHECK_THROWS_AS(parse_economy_csv("A,1,2\n"), ValidationError);
    CHECK_THROWS_AS(parse_economy_csv("A,1,x,3,0.5\n"), ValidationError);
}
