// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <biphoton/design.hpp>
#include <biphoton/dispersion.hpp>
#include <biphoton/interference.hpp>
#include <biphoton/nsgate.hpp>
#include <biphoton/schmidt.hpp>
#include <biphoton/spectra.hpp>

#include "oracles.hpp"

using namespace biphoton;

namespace {

const double kOmega0 = angular_frequency(Length::nanometers(800.0));
const Length kPump = Length::nanometers(400.0);

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [FAILED]");
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

JointSpectralAmplitude model_jsa(const GaussianSourceModel& m, int n) {
    const FrequencyGrid g = model_grid(m, kOmega0, n);
    return gaussian_model_jsa(m, g, g);
}

JointSpectralAmplitude type2_jsa(int n) {
    const Material& bbo = builtin_material("BBO");
    CrystalConfig c{&bbo, PdcType::type_II_eoe, Length::millimeters(2.0),
                    collinear_type2_cut_angle(bbo, kPump * 2.0), Angle{}};
    const FrequencyGrid g(kOmega0, 3e14, n);
    return build_jsa_collinear(c, {kOmega0, 6e13}, g, g);
}

Outcome ac01() {
    Outcome o;
    const auto t0 = Clock::now();
    const double g = gaussian_sinc_gamma();
    const double dt = seconds_since(t0);
    o.require(std::abs(g - 0.193) <= 0.001, "gamma=" + fmt("%.6f", g));
    o.require(dt < 1e-3, "t=" + fmt("%.2e", dt) + "s");
    return o;
}

Outcome ac02() {
    Outcome o;
    const auto t0 = Clock::now();
    const Material& bbo = builtin_material("BBO");
    const Length L = Length::millimeters(1.0);
    const Angle theta = Angle::degrees(3.0);
    const Length w0 = factorable_waist(bbo, kPump, L, theta);
    o.require(std::abs(w0.um() - 287.0) <= 5.0, "w0=" + fmt("%.2f", w0.um()) + "um");
    const PumpEnvelope pump{kOmega0, sigma_from_fwhm(Length::nanometers(10.0), kPump)};
    const BeamGeometry beam{w0, theta, L};
    const auto pm = gaussian_beam_phase_matching(bbo, pump, beam);
    // Half span covering four amplitude widths along the signal axis.
    const double a = pm.pump_coeff - 0.5 * pm.pm_diagonal_coeff() - 0.25 * pm.pm_cross_coeff();
    const double b = -0.5 * pm.pm_diagonal_coeff() + 0.25 * pm.pm_cross_coeff();
    const FrequencyGrid g(kOmega0, 4.0 * std::sqrt((a + b) / (4 * a * b)), 256);
    const auto jsa = build_jsa_noncollinear_gaussian_beam(bbo, pump, beam, g, g);
    const double K = schmidt_svd(jsa).K;
    const double dt = seconds_since(t0);
    o.require(K < 1.05, "K=" + fmt("%.6f", K));
    o.require(!jsa.boundary_leakage(), "edge=" + fmt("%.1e", jsa.boundary_ratio()));
    o.require(dt < 5.0, "t=" + fmt("%.2f", dt) + "s");
    return o;
}

Outcome ac03() {
    Outcome o;
    const Angle t = degenerate_noncollinear_angle(builtin_material("BBO"), kPump, Angle::degrees(30.32));
    o.require(std::abs(t.deg() - 3.0) <= 0.2, "theta=" + fmt("%.4f", t.deg()) + "deg");
    return o;
}

Outcome ac04() {
    Outcome o;
    const Material& bbo = builtin_material("BBO");
    const double gvm = gvm_wavelength(bbo).um();
    o.require(std::abs(gvm - 1.51) <= 0.02, "gvm=" + fmt("%.4f", gvm) + "um");
    double min_pos = 1e300;
    for (int k = 0; k <= 70; ++k)
        min_pos = std::min(min_pos, typeII_contour_slope(bbo, Length::micrometers(1.20 + 0.01 * k)));
    o.require(min_pos > 0.0, "min slope [1.20,1.90]=" + fmt("%.3g", min_pos));
    const double at08 = typeII_contour_slope(bbo, Length::micrometers(0.8));
    o.require(at08 < 0.0, "slope(0.8um)=" + fmt("%.3g", at08));
    return o;
}

Outcome ac05() {
    Outcome o;
    const double sigma = 4e13;
    const GaussianSourceModel narrow{sigma, sigma * 1e-4}, wide{sigma, sigma * 1e4}, eq{sigma, sigma};
    o.require(homi_visibility_analytic(narrow) > 0.999 && homi_baseline_analytic(narrow) < 1e-3,
              "sigmaF->0: V=" + fmt("%.6f", homi_visibility_analytic(narrow)) +
                  " R0=" + fmt("%.2e", homi_baseline_analytic(narrow)));
    o.require(homi_visibility_analytic(wide) < 0.02 && homi_baseline_analytic(wide) > 0.999,
              "sigmaF->inf: V=" + fmt("%.2e", homi_visibility_analytic(wide)) +
                  " R0=" + fmt("%.6f", homi_baseline_analytic(wide)));
    const double v = homi_visibility_analytic(eq), r0 = homi_baseline_analytic(eq);
    o.require(std::abs(v - std::sqrt(3.0) / 2) <= 1e-12, "V(sigmaF=sigma)=" + fmt("%.15f", v));
    o.require(std::abs(r0 - 2.0 / 3.0) <= 1e-12, "R0(sigmaF=sigma)=" + fmt("%.15f", r0));
    return o;
}

Outcome ac06() {
    Outcome o;
    const auto t0 = Clock::now();
    double worst_analytic = 0, worst_numeric = 0;
    for (double ratio : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const GaussianSourceModel m{4e13, 4e13 / ratio};
        const double v = homi_visibility_analytic(m);
        worst_analytic = std::max(worst_analytic, std::abs(v - 1.0 / analytic_K(analytic_mu(m))));
        const double vn = two_crystal_homi_numeric(model_jsa(m, 256), {0.0}).visibility;
        worst_numeric = std::max(worst_numeric, std::abs(vn - v));
    }
    o.require(worst_analytic <= 1e-9, "|V-1/K|=" + fmt("%.1e", worst_analytic));
    o.require(worst_numeric <= 1e-3, "|V_num-V|=" + fmt("%.1e", worst_numeric));
    const JointSpectralAmplitude small = model_jsa({4e13, 3e13}, 16);
    const double q = oracle::homi_quadruple_sum(small);
    const double k = two_crystal_homi_numeric(small, {0.0}).visibility;
    o.require(std::abs(q - k) <= 1e-10, "quadruple-sum diff=" + fmt("%.1e", std::abs(q - k)));
    const double dt = seconds_since(t0);
    o.require(dt < 60.0, "t=" + fmt("%.2f", dt) + "s");
    return o;
}

Outcome ac07() {
    Outcome o;
    double worst = 0;
    for (double ratio : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const GaussianSourceModel m{4e13, 4e13 / ratio};
        const double K = schmidt_svd(model_jsa(m, 256)).K;
        const double Ka = analytic_K(analytic_mu(m));
        worst = std::max(worst, std::abs(K - Ka) / Ka);
    }
    o.require(worst < 0.01, "max rel K err=" + fmt("%.1e", worst));
    const FrequencyGrid g(0.0, 4e13, 128);
    const auto c = mehler_reconstruct({0.27, 1e-13, -1e-13}, g, g, 32);
    o.require(c.max_abs_error() < 1e-8 * c.peak(), "Mehler N=32 err/peak=" + fmt("%.1e", c.max_abs_error() / c.peak()));
    return o;
}

Outcome ac08() {
    Outcome o;
    const JointSpectralAmplitude f = type2_jsa(96);
    const PolarizedPairState pair(f, f.transposed());
    const BellRates r0 = bell_analyzer_rates(pair, 0.0);
    o.require(r0.plus < 1e-8, "Rc+(0)=" + fmt("%.1e", r0.plus));
    o.require(std::abs(r0.minus - 1.0) <= 1e-8, "Rc-(0)=" + fmt("%.10f", r0.minus));
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> tau(-3e-12, 3e-12);
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
        const BellRates r = bell_analyzer_rates(pair, tau(rng));
        worst = std::max(worst, std::abs(r.plus + r.minus - 1.0));
    }
    o.require(worst < 1e-10, "max|Rc+ + Rc- - 1|=" + fmt("%.1e", worst));
    const double asym = bell_analyzer_rates(PolarizedPairState(f, f), 0.0).plus;
    o.require(asym > 0.01, "g=f Rc+(0)=" + fmt("%.4f", asym));
    return o;
}

Outcome ac09() {
    Outcome o;
    const JointSpectralAmplitude f = type2_jsa(96);
    const PolarizedPairState same(f, f);
    double worst = 0;
    for (int a = 0; a < 19; ++a)
        for (int b = 0; b < 19; ++b) {
            const double ta = a * std::numbers::pi / 18, tb = b * std::numbers::pi / 18;
            worst = std::max(worst, std::abs(polarization_fringe(same, ta, tb) - std::pow(std::sin(ta + tb), 2)));
        }
    o.require(worst <= 1e-9, "max|rate-sin^2|=" + fmt("%.1e", worst));
    const double v_same = fringe_visibility(same, std::numbers::pi / 4);
    const double v_bell = fringe_visibility(PolarizedPairState(f, f.transposed()), std::numbers::pi / 4);
    o.require(v_bell < v_same, "V(bell-only)=" + fmt("%.4f", v_bell) + " < V(f=g)=" + fmt("%.4f", v_same));
    return o;
}

Outcome ac10() {
    Outcome o;
    const Material& bbo = builtin_material("BBO");
    const PumpEnvelope pump{kOmega0, sigma_from_fwhm(Length::nanometers(15.0), kPump)};
    const FrequencyGrid g(kOmega0, 8.0 * pump.sigma_p, 256);
    const Angle cut1 = Angle::degrees(30.32);
    CrystalConfig t1{&bbo, PdcType::type_I_eoo, Length::millimeters(1.0), cut1,
                     degenerate_noncollinear_angle(bbo, kPump, cut1)};
    CrystalConfig t2{&bbo, PdcType::type_II_eoe, Length::millimeters(1.0),
                     collinear_type2_cut_angle(bbo, kPump * 2.0), Angle{}};
    const double k1 = schmidt_svd(build_jsa_sinc(t1, pump, g, g)).K;
    const double k2 = schmidt_svd(build_jsa_sinc(t2, pump, g, g)).K;
    o.require(k1 > k2 && k2 > 1.0, "K(I)=" + fmt("%.3f", k1) + " > K(II)=" + fmt("%.3f", k2) + " > 1");
    return o;
}

Outcome ac11() {
    Outcome o;
    const Material& bbo = builtin_material("BBO");
    const Length L = Length::micrometers(200.0), w0 = Length::millimeters(1.0);
    const Angle theta = Angle::degrees(3.0);
    const RegimeCheck m = freq_correlated_margin(bbo, kPump, L, theta, w0);
    o.require(m.ratio >= 10.0, "margin=" + fmt("%.3f", m.ratio));
    const PumpEnvelope pump{kOmega0, sigma_from_fwhm(Length::nanometers(15.0), kPump)};
    const BeamGeometry beam{w0, theta, L};
    const auto pm = gaussian_beam_phase_matching(bbo, pump, beam);
    const double a = pm.pump_coeff - 0.5 * pm.pm_diagonal_coeff() - 0.25 * pm.pm_cross_coeff();
    const double b = -0.5 * pm.pm_diagonal_coeff() + 0.25 * pm.pm_cross_coeff();
    const FrequencyGrid g(kOmega0, 4.0 * std::sqrt((a + b) / (4 * a * b)), 256);
    const double r = build_jsa_noncollinear_gaussian_beam(bbo, pump, beam, g, g).intensity_correlation();
    o.require(r > 0.9, "pearson=" + fmt("%.4f", r));
    return o;
}

Outcome ac12() {
    Outcome o;
    const NSGateConfig cfg = default_ns_config();
    const NSConditionalMap m = ns_conditional_map(cfg);
    const double map_err = std::max(std::abs(m.c1 / m.c0 - 1.0), std::abs(m.c2 / m.c0 + 1.0));
    o.require(map_err < 1e-10, "map (1,1,-1) err=" + fmt("%.1e", map_err));
    o.require(std::abs(m.success - 0.25) <= 1e-6, "success=" + fmt("%.10f", m.success));
    const NSOptimum opt = ns_optimize();
    o.require(std::abs(opt.r - cfg.r) <= 1e-3 && std::abs(opt.s - cfg.s) <= 1e-3,
              "optimizer r=" + fmt("%.6f", opt.r) + " s=" + fmt("%.6f", opt.s));
    const double c0 = homi_mz_stage_states(0.0).coincidence;
    const double cpi = homi_mz_stage_states(std::numbers::pi).coincidence;
    o.require(std::abs(c0 - 1.0) <= 1e-10 && cpi <= 1e-10,
              "HOMI-MZ P(0)=" + fmt("%.12f", c0) + " P(pi)=" + fmt("%.1e", cpi));
    return o;
}

double mu_for_K(double K) { return std::sqrt((K - 1.0) / (K + 1.0)); }

Outcome ac13() {
    Outcome o;
    const auto t0 = Clock::now();
    const NSGateConfig cfg = default_ns_config();
    const double r1 = ns_sixfold_rate(0.0, cfg).rate;
    o.require(r1 < 1e-8, "rate(K=1)=" + fmt("%.1e", r1));

    bool increasing = true;
    double prev = r1;
    std::string seq;
    for (double mu : {0.1, 0.2, 0.3, 0.5, 0.7}) {
        const double r = ns_sixfold_rate(mu, cfg, 12).rate;
        increasing = increasing && r > prev;
        prev = r;
        seq += (seq.empty() ? "" : ",") + fmt("%.3e", r);
    }
    o.require(increasing, "increasing N=12 [" + seq + "]");

    double worst = 0;
    for (double K : {1.1, 1.3, 1.5, 1.7}) {
        const double a = ns_sixfold_rate(mu_for_K(K), cfg, 6).rate;
        const double b = ns_sixfold_rate(mu_for_K(K), cfg, 8).rate;
        worst = std::max(worst, std::abs(b - a) / b);
    }
    o.require(worst < 0.01, "N 6->8 max rel change=" + fmt("%.1e", worst));

    Fig6Preset p = fig6_preset(cfg);
    SpectralPhotonInput in;
    const auto ev = analytic_eigenvalues(0.3, 3).eigenvalues;
    for (auto s : p.sources) {
        s.weights = ev;
        in.sources.push_back(s);
    }
    const double total = total_probability(p.network, in);
    const double trunc = in.truncation_mass();
    o.require(std::abs(total - (1.0 - trunc)) <= 1e-8, "sum P=" + fmt("%.12f", total) + " 1-trunc=" +
                                                           fmt("%.12f", 1.0 - trunc));
    const double dt = seconds_since(t0);
    o.require(dt < 600.0, "t=" + fmt("%.2f", dt) + "s");
    return o;
}

Outcome ac14() {
    Outcome o;
    const EconomyRecord kdp = economy_figure({"KDP", 100, 1e-5, 65e3, 0.75, 6.5e7});
    const EconomyRecord bbo = economy_figure({"BBO", 2, 0.465, 1.25e6, 0.26, 2.7e6});
    const EconomyRecord ktp = economy_figure({"KTP", 1, 2.2e-5, 720e3, 0.185, 3.3e10});
    o.require(std::abs(kdp.r / 6.5e7 - 1) <= 0.02 && !kdp.discrepancy, "row1 R=" + fmt("%.4g", kdp.r));
    o.require(std::abs(ktp.r / 3.3e10 - 1) <= 0.02 && !ktp.discrepancy, "row3 R=" + fmt("%.4g", ktp.r));
    o.require(bbo.discrepancy, "row2 R=" + fmt("%.4g", bbo.r) + " flagged");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"gamma constant", ac01},
        {"factorable waist design", ac02},
        {"type-I phase-matching angle", ac03},
        {"group-velocity matching", ac04},
        {"visibility/rate tradeoff", ac05},
        {"visibility equals purity", ac06},
        {"Schmidt cross-validation", ac07},
        {"Bell analyzer", ac08},
        {"polarization fringes", ac09},
        {"type-I vs type-II entanglement", ac10},
        {"frequency-correlated design", ac11},
        {"NS gate contract", ac12},
        {"six-fold rate properties", ac13},
        {"economy table", ac14},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        const auto t0 = Clock::now();
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        if (!o.pass) ++failed;
        std::printf("AC%02zu %s  %-32s %s (%.2fs)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first,
                    o.detail.c_str(), seconds_since(t0));
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
