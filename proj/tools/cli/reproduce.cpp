#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include <biphoton/design.hpp>
#include <biphoton/error.hpp>
#include <biphoton/interference.hpp>
#include <biphoton/io.hpp>
#include <biphoton/nsgate.hpp>
#include <biphoton/schmidt.hpp>

#include "commands.hpp"
#include "quantity.hpp"
#include "sources.hpp"

namespace biphoton::cli {

using nlohmann::json;

namespace {

// Fixed figure configurations; only the grid size and mode count come from
// the command line.
Settings preset(const Settings& s) {
    Settings p;
    p.points = s.points;
    p.materials = s.materials;
    return p;
}

void fig1(const Settings& s, Artifacts& a, std::ostream& out) {
    Settings t1 = preset(s);
    t1.source = "type1";
    t1.pump_bw = "15nm_fwhm";
    t1.cut = "30.32deg";
    Settings t2 = t1;
    t2.source = "type2";
    t2.cut.clear();

    const BuiltSource s1 = build_source(t1);
    const BuiltSource s2 = build_source(t2);
    const double k1 = schmidt_svd(s1.jsa).K;
    const double k2 = schmidt_svd(s2.jsa).K;
    a.config()["resolved"] = {{"type1", s1.resolved}, {"type2", s2.resolved}};
    a.csv("fig1_type1.csv", jsa_to_csv(s1.jsa));
    a.csv("fig1_type2.csv", jsa_to_csv(s2.jsa));
    a.json("fig1.json", json{{"K_type1_noncollinear", k1},
                             {"K_type2_collinear", k2},
                             {"boundary_ratio_type1", s1.jsa.boundary_ratio()},
                             {"boundary_ratio_type2", s2.jsa.boundary_ratio()}});
    out << fmt::format("fig1: K(type I noncollinear) = {:.6g}, K(type II collinear) = {:.6g}\n", k1, k2);
}

void fig3(const Settings&, Artifacts& a, std::ostream& out) {
    constexpr double sigma = 4e13;
    std::string text = "sigma_f,V,R0,K\n";
    for (int k = 0; k <= 80; ++k) {
        const GaussianSourceModel m{sigma, sigma * std::pow(10.0, (k - 40) / 20.0)};
        const double K = analytic_K(analytic_mu(m));
        text += format_double(m.sigma_f) + "," + format_double(homi_visibility_analytic(m)) + "," +
                format_double(homi_baseline_analytic(m)) + "," + format_double(K) + "\n";
    }
    const GaussianSourceModel eq{sigma, sigma};
    a.config()["resolved"] = {{"sigma_rad_s", sigma}, {"sigma_f_decades", json::array({-2, 2})}, {"samples", 81}};
    a.csv("fig3.csv", text);
    a.json("fig3.json", json{{"V_at_equal_widths", homi_visibility_analytic(eq)},
                             {"R0_at_equal_widths", homi_baseline_analytic(eq)},
                             {"columns", "sigma_f,V,R0,K"}});
    out << fmt::format("fig3: at sigma_F = sigma, V = {:.15g}, R0 = {:.15g}\n", homi_visibility_analytic(eq),
                       homi_baseline_analytic(eq));
}

struct BeamCase {
    const Material* material;
    PumpEnvelope pump;
    BeamGeometry beam;
    Length pump_wavelength;
};

BeamCase beam_case(const Settings& s, Length length, std::optional<Length> w0, const char* fwhm) {
    BeamCase c;
    c.material = &material_database(s).get("BBO");
    c.pump_wavelength = Length::nanometers(400.0);
    c.pump = {angular_frequency(c.pump_wavelength * 2.0), parse_bandwidth(fwhm).sigma(c.pump_wavelength)};
    c.beam.length = length;
    c.beam.theta = Angle::degrees(3.0);
    c.beam.w0 = w0 ? *w0 : factorable_waist(*c.material, c.pump_wavelength, length, c.beam.theta);
    return c;
}

GaussianBeamSurfaces surfaces(const BeamCase& c, int points) {
    const auto pm = gaussian_beam_phase_matching(*c.material, c.pump, c.beam);
    const FrequencyGrid g(c.pump.omega0, auto_half_span(pm), points);
    return gaussian_beam_surfaces(*c.material, c.pump, c.beam, g, g);
}

json beam_json(const BeamCase& c, const FrequencyGrid& g) {
    return {{"material", c.material->name},    {"pump_wavelength_m", c.pump_wavelength.m()},
            {"sigma_p_rad_s", c.pump.sigma_p}, {"length_m", c.beam.length.m()},
            {"theta_deg", c.beam.theta.deg()}, {"w0_m", c.beam.w0.m()},
            {"half_span_rad_s", g.half_span()}, {"points", g.size()}};
}

void fig5(const Settings& s, Artifacts& a, std::ostream& out) {
    const BeamCase c = beam_case(s, Length::millimeters(1.0), std::nullopt, "10nm_fwhm");
    const GaussianBeamSurfaces sf = surfaces(c, s.points);
    const double K = schmidt_svd(sf.product).K;
    const RegimeCheck reg = validate_waist_regime(c.beam.w0, c.beam.length, c.beam.theta);
    a.config()["resolved"] = beam_json(c, sf.product.grid_s());
    a.csv("fig5_longitudinal.csv", jsa_to_csv(sf.longitudinal));
    a.csv("fig5_transverse.csv", jsa_to_csv(sf.transverse));
    a.csv("fig5_pump.csv", jsa_to_csv(sf.pump));
    a.csv("fig5_product.csv", jsa_to_csv(sf.product));
    a.json("fig5.json", json{{"K", K},
                             {"intensity_correlation", sf.product.intensity_correlation()},
                             {"boundary_ratio", sf.product.boundary_ratio()},
                             {"w0_m", c.beam.w0.m()},
                             {"cut_angle_deg", sf.coefficients.cut_angle.deg()},
                             {"pm_cross_coeff", sf.coefficients.pm_cross_coeff()},
                             {"regime_ratio", reg.ratio},
                             {"regime_valid", reg.flag}});
    out << fmt::format("fig5: w0 = {:.4g} um, K = {:.6g}\n", c.beam.w0.um(), K);
}

void fig7(const Settings& s, Artifacts& a, std::ostream& out) {
    const BeamCase c = beam_case(s, Length::micrometers(200.0), Length::millimeters(1.0), "15nm_fwhm");
    const GaussianBeamSurfaces sf = surfaces(c, s.points);
    const RegimeCheck margin =
        freq_correlated_margin(*c.material, c.pump_wavelength, c.beam.length, c.beam.theta, c.beam.w0);
    const double corr = sf.product.intensity_correlation();
    a.config()["resolved"] = beam_json(c, sf.product.grid_s());
    a.csv("fig7.csv", jsa_to_csv(sf.product));
    a.json("fig7.json", json{{"margin", margin.ratio},
                             {"frequency_correlated", margin.flag},
                             {"intensity_correlation", corr},
                             {"K", schmidt_svd(sf.product).K},
                             {"boundary_ratio", sf.product.boundary_ratio()}});
    out << fmt::format("fig7: margin = {:.4g}, correlation = {:.4f}\n", margin.ratio, corr);
}

// Smallest mode count >= 8 keeping the three-source truncation under half
// the refusal threshold.
int auto_modes(double mu) {
    int n = kDefaultSchmidtModes;
    while (1.0 - std::pow(1.0 - std::pow(mu, 2.0 * n), 3) > 0.5 * kMaxTruncationMass) ++n;
    return n;
}

void fig9(const Settings& s, Artifacts& a, std::ostream& out) {
    if (s.n_modes < 0) throw ValidationError("--n-modes must be non-negative");
    const NSGateConfig cfg = default_ns_config();
    std::string text = "K,rate,trunc_mass\n";
    json rows = json::array();
    for (int k = 0; k <= 14; ++k) {
        const double mu = 0.05 * k;
        const int n = s.n_modes > 0 ? s.n_modes : auto_modes(mu);
        const SixfoldRate r = ns_sixfold_rate(mu, cfg, n);
        text += format_double(r.K) + "," + format_double(r.rate) + "," + format_double(r.truncation_mass) + "\n";
        rows.push_back({{"mu", mu}, {"K", r.K}, {"rate", r.rate}, {"trunc_mass", r.truncation_mass}, {"n_modes", n}});
    }
    a.config()["resolved"] = {{"r", cfg.r}, {"s", cfg.s}, {"topology", cfg.topology}, {"convention", cfg.convention}};
    a.csv("fig9.csv", text);
    a.json("fig9.json", json{{"rows", rows}, {"normalization", "raw six-fold pattern probability"}});
    out << fmt::format("fig9: {} points, rate(K=1) = {:.3g}\n", rows.size(), rows.front()["rate"].get<double>());
}

}  // namespace

void cmd_reproduce(const Settings& s, Artifacts& a, std::ostream& out) {
    if (s.operation == "fig1") return fig1(s, a, out);
    if (s.operation == "fig3") return fig3(s, a, out);
    if (s.operation == "fig5") return fig5(s, a, out);
    if (s.operation == "fig7") return fig7(s, a, out);
    if (s.operation == "fig9") return fig9(s, a, out);
    throw ValidationError("unknown figure '" + s.operation + "'");
}

}  // namespace biphoton::cli
