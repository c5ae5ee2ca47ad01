#include "sources.hpp"

#include <cmath>

#include <biphoton/design.hpp>
#include <biphoton/error.hpp>

#include "quantity.hpp"

namespace biphoton::cli {

nlohmann::json jnum(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

Length degenerate_wavelength(const Settings& s) { return parse_length(s.pump) * 2.0; }

double auto_half_span(const GaussianBeamPhaseMatching& pm) {
    // log S = -a (nu_s + nu_i)^2 - b (nu_s - nu_i)^2
    const double a = pm.pump_coeff - 0.5 * pm.pm_diagonal_coeff() - 0.25 * pm.pm_cross_coeff();
    const double b = -0.5 * pm.pm_diagonal_coeff() + 0.25 * pm.pm_cross_coeff();
    if (!(a > 0.0) || !(b > 0.0)) throw RegimeError("Gaussian-beam amplitude is not bounded on the plane");
    return 4.0 * std::sqrt((a + b) / (4.0 * a * b));
}

namespace {

void check_points(int n) {
    if (n < 8 || n > 2048) throw ValidationError("--points must be in [8, 2048]");
}

FrequencyGrid square_grid(const Settings& s, double omega0, double auto_half_span) {
    check_points(s.points);
    double half = auto_half_span;
    if (!s.span.empty()) {
        const Bandwidth b = parse_bandwidth(s.span);
        if (b.infinite) throw ValidationError("--span must be finite");
        half = b.sigma(vacuum_wavelength(omega0));
    }
    return FrequencyGrid(omega0, half, s.points);
}

BuiltSource build_model(const Settings& s) {
    const Length lam = degenerate_wavelength(s);
    const GaussianSourceModel model{parse_bandwidth(s.sigma).sigma(lam), parse_bandwidth(s.sigma_f).sigma(lam)};
    if (!std::isfinite(model.sigma)) throw ValidationError("--sigma must be finite");
    if (!model.filtered() && s.span.empty())
        throw ValidationError("an unfiltered model is a non-normalizable ridge; give --sigma-f or --span");
    const double omega0 = angular_frequency(lam);
    const FrequencyGrid grid = s.span.empty() ? model_grid(model, omega0, s.points) : square_grid(s, omega0, 0.0);
    if (s.span.empty()) check_points(s.points);
    nlohmann::json r{{"omega0_rad_s", omega0}, {"sigma_rad_s", jnum(model.sigma)},
                     {"sigma_f_rad_s", jnum(model.sigma_f)}, {"half_span_rad_s", grid.half_span()}};
    return {gaussian_model_jsa(model, grid, grid), r, model};
}

BuiltSource build_crystal(const Settings& s) {
    const Material& mat = material_database(s).get(s.material);
    const Length pump_lambda = parse_length(s.pump);
    const Length lam = pump_lambda * 2.0;
    const double omega0 = angular_frequency(lam);
    const PumpEnvelope pump{omega0, parse_bandwidth(s.pump_bw).sigma(pump_lambda)};
    if (!std::isfinite(pump.sigma_p)) throw ValidationError("--pump-bw must be finite");

    CrystalConfig c;
    c.material = &mat;
    c.length = parse_length(s.length);
    if (s.source == "type1") {
        c.type = PdcType::type_I_eoo;
        if (!s.cut.empty()) {
            c.cut_angle = parse_angle(s.cut);
            c.emission_angle = s.theta.empty() ? degenerate_noncollinear_angle(mat, pump_lambda, c.cut_angle)
                                               : parse_angle(s.theta);
        } else {
            c.emission_angle = s.theta.empty() ? Angle::degrees(3.0) : parse_angle(s.theta);
            c.cut_angle = cut_angle_for_emission(mat, pump_lambda, c.emission_angle);
        }
    } else {
        c.type = PdcType::type_II_eoe;
        if (!s.theta.empty() && parse_angle(s.theta).rad() != 0.0)
            throw ValidationError("type2 sources are collinear; --theta must be 0");
        c.cut_angle = s.cut.empty() ? collinear_type2_cut_angle(mat, lam) : parse_angle(s.cut);
    }
    const FrequencyGrid grid = square_grid(s, omega0, 8.0 * pump.sigma_p);
    nlohmann::json r{{"omega0_rad_s", omega0},         {"sigma_p_rad_s", pump.sigma_p},
                     {"length_m", c.length.m()},       {"cut_angle_deg", c.cut_angle.deg()},
                     {"theta_deg", c.emission_angle.deg()}, {"half_span_rad_s", grid.half_span()}};
    return {build_jsa_sinc(c, pump, grid, grid), r, std::nullopt};
}

}  // namespace

void validate_quantities(const Settings& s) {
    for (const std::string* v : {&s.length, &s.pump, &s.w0})
        if (!v->empty()) parse_length(*v);
    for (const std::string* v : {&s.cut, &s.theta})
        if (!v->empty()) parse_angle(*v);
    for (const std::string* v : {&s.sigma, &s.sigma_f, &s.pump_bw, &s.span})
        if (!v->empty()) parse_bandwidth(*v);
    if (!(parse_length(s.length).m() > 0.0)) throw ValidationError("--L must be positive");
    if (!(parse_length(s.pump).m() > 0.0)) throw ValidationError("--pump must be positive");
}

BuiltSource build_source(const Settings& s) {
    if (s.source == "model") return build_model(s);
    if (s.source == "type1" || s.source == "type2") return build_crystal(s);
    if (s.source != "gaussian-beam") throw ValidationError("unknown source '" + s.source + "'");

    const Material& mat = material_database(s).get(s.material);
    const Length pump_lambda = parse_length(s.pump);
    const double omega0 = angular_frequency(pump_lambda * 2.0);
    const PumpEnvelope pump{omega0, parse_bandwidth(s.pump_bw).sigma(pump_lambda)};
    if (!std::isfinite(pump.sigma_p)) throw ValidationError("--pump-bw must be finite");
    BeamGeometry beam;
    beam.length = parse_length(s.length);
    beam.theta = s.theta.empty() ? Angle::degrees(3.0) : parse_angle(s.theta);
    beam.w0 = s.w0.empty() ? factorable_waist(mat, pump_lambda, beam.length, beam.theta) : parse_length(s.w0);
    const GaussianBeamPhaseMatching pm = gaussian_beam_phase_matching(mat, pump, beam);
    const FrequencyGrid grid = square_grid(s, omega0, auto_half_span(pm));
    nlohmann::json r{{"omega0_rad_s", omega0},
                     {"sigma_p_rad_s", pump.sigma_p},
                     {"length_m", beam.length.m()},
                     {"theta_deg", beam.theta.deg()},
                     {"w0_m", beam.w0.m()},
                     {"cut_angle_deg", pm.cut_angle.deg()},
                     {"half_span_rad_s", grid.half_span()}};
    return {build_jsa_noncollinear_gaussian_beam(mat, pump, beam, grid, grid), r, std::nullopt};
}

}  // namespace biphoton::cli
