#include "biphoton/design.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "biphoton/error.hpp"
#include "biphoton/spectra.hpp"

namespace biphoton {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(what) + " must be positive and finite");
}

double sqrt_gamma() { return std::sqrt(gaussian_sinc_gamma()); }

}  // namespace

DesignSlopes design_slopes(const Material& material, Length pump_wavelength, Angle theta) {
    require_positive(pump_wavelength.m(), "pump wavelength");
    DesignSlopes s;
    s.cut_angle = cut_angle_for_emission(material, pump_wavelength, theta);
    s.kp_prime = wave_props(material, pump_wavelength, Ray::extraordinary(s.cut_angle)).k_prime;
    s.k_prime = wave_props(material, pump_wavelength * 2.0, Ray::ordinary()).k_prime;
    return s;
}

namespace {

double dkz(const DesignSlopes& s, Angle theta) { return s.kp_prime - s.k_prime * std::cos(theta.rad()); }

}  // namespace

Length factorable_waist(const Material& material, Length pump_wavelength, Length length, Angle theta) {
    require_positive(length.m(), "crystal length");
    if (theta.rad() == 0.0) throw ValidationError("collinear geometry has no transverse lever (theta = 0)");
    const auto s = design_slopes(material, pump_wavelength, theta);
    return length * (sqrt_gamma() * dkz(s, theta) / (s.k_prime * std::sin(std::abs(theta.rad()))));
}

double pump_bandwidth_threshold(const Material& material, Length pump_wavelength, Length length, Angle theta) {
    require_positive(length.m(), "crystal length");
    const auto s = design_slopes(material, pump_wavelength, theta);
    const double d = dkz(s, theta);
    if (!(std::abs(d) > 1e-15)) throw RegimeError("pump and signal group slopes coincide; no bandwidth threshold");
    return std::sqrt(2.0) / (gaussian_sinc_gamma() * length.m() * std::abs(d));
}

RegimeCheck freq_correlated_margin(const Material& material, Length pump_wavelength, Length length, Angle theta,
                                   Length w0) {
    require_positive(w0.m(), "beam waist");
    const double ratio = w0 / factorable_waist(material, pump_wavelength, length, theta);
    return {ratio, ratio >= kRegimeMargin};
}

RegimeCheck validate_waist_regime(Length w0, Length length, Angle theta) {
    require_positive(w0.m(), "beam waist");
    require_positive(length.m(), "crystal length");
    const double s = std::sin(theta.rad());
    const double bound = sqrt_gamma() * s * s;
    if (bound == 0.0) return {std::numeric_limits<double>::infinity(), true};
    const double ratio = (w0 / length) / bound;
    return {ratio, ratio >= kRegimeMargin};
}

namespace {

DesignReport base_report(std::string op, const DesignInputs& in) {
    if (in.material == nullptr) throw ValidationError("design: material not set");
    DesignReport r;
    r.operation = std::move(op);
    r.inputs = {{"pump_wavelength", in.pump_wavelength.m(), "m"},
                {"length", in.length.m(), "m"},
                {"theta", in.theta.rad(), "rad"}};
    const Angle cut = cut_angle_for_emission(*in.material, in.pump_wavelength, in.theta);
    r.outputs.push_back({"cut_angle", cut.rad(), "rad"});
    return r;
}

Length need_w0(const DesignInputs& in) {
    if (!in.w0) throw ValidationError("this design check needs the beam waist w0");
    return *in.w0;
}

}  // namespace

DesignReport factorable_report(const DesignInputs& in) {
    auto r = base_report("factorable", in);
    const Length w0 = factorable_waist(*in.material, in.pump_wavelength, in.length, in.theta);
    const auto s = design_slopes(*in.material, in.pump_wavelength, in.theta);
    r.outputs.push_back({"kp_prime", s.kp_prime, "s/m"});
    r.outputs.push_back({"k_prime", s.k_prime, "s/m"});
    r.outputs.push_back({"w0", w0.m(), "m"});
    r.outputs.push_back({"w0_over_L", w0 / in.length, "1"});
    const auto reg = validate_waist_regime(w0, in.length, in.theta);
    r.flags.push_back({"waist_regime_valid", reg.ratio, reg.flag});
    return r;
}

DesignReport threshold_report(const DesignInputs& in) {
    auto r = base_report("threshold", in);
    const double th = pump_bandwidth_threshold(*in.material, in.pump_wavelength, in.length, in.theta);
    r.outputs.push_back({"sigma_p_min", th, "rad/s"});
    if (in.sigma_p) {
        r.inputs.push_back({"sigma_p", *in.sigma_p, "rad/s"});
        r.flags.push_back({"pump_above_threshold", *in.sigma_p / th, *in.sigma_p > th});
    }
    return r;
}

DesignReport correlated_report(const DesignInputs& in) {
    auto r = base_report("correlated", in);
    const Length w0 = need_w0(in);
    r.inputs.push_back({"w0", w0.m(), "m"});
    const Length wf = factorable_waist(*in.material, in.pump_wavelength, in.length, in.theta);
    r.outputs.push_back({"factorable_w0", wf.m(), "m"});
    const auto c = freq_correlated_margin(*in.material, in.pump_wavelength, in.length, in.theta, w0);
    r.flags.push_back({"frequency_correlated", c.ratio, c.flag});
    const auto reg = validate_waist_regime(w0, in.length, in.theta);
    r.flags.push_back({"waist_regime_valid", reg.ratio, reg.flag});
    return r;
}

DesignReport regime_report(const DesignInputs& in) {
    if (in.material == nullptr) throw ValidationError("design: material not set");
    DesignReport r;
    r.operation = "regime";
    const Length w0 = need_w0(in);
    r.inputs = {{"w0", w0.m(), "m"}, {"length", in.length.m(), "m"}, {"theta", in.theta.rad(), "rad"}};
    const auto reg = validate_waist_regime(w0, in.length, in.theta);
    r.outputs.push_back({"w0_over_L", w0 / in.length, "1"});
    r.flags.push_back({"waist_regime_valid", reg.ratio, reg.flag});
    return r;
}

EconomyRecord economy_figure(const EconomyInputs& in) {
    require_positive(in.length_mm, "crystal length");
    require_positive(in.power_w, "pump power");
    require_positive(in.singles_hz, "singles rate");
    require_positive(in.coincidence_ratio, "coincidence ratio");
    EconomyRecord rec;
    rec.inputs = in;
    rec.r = in.singles_hz / (in.length_mm * in.power_w);
    if (in.printed_r) {
        require_positive(*in.printed_r, "printed R");
        rec.deviation = (rec.r - *in.printed_r) / *in.printed_r;
        rec.discrepancy = std::abs(*rec.deviation) > kEconomyTolerance;
    }
    return rec;
}

std::vector<EconomyInputs> parse_economy_csv(std::string_view text) {
    std::vector<EconomyInputs> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        const bool header = first_row && !cells.empty() && cells[0] == "label";
        first_row = false;
        if (header) continue;
        if (cells.size() != 5 && cells.size() != 6)
            throw ValidationError("economy CSV line " + std::to_string(line_no) +
                                  ": expected label,L_mm,P_W,Rs_Hz,ratio[,R_printed]");
        auto num = [&](std::size_t k) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cells[k], &used);
                if (used != cells[k].size()) throw std::invalid_argument(cells[k]);
                return v;
            } catch (const std::logic_error&) {
                throw ValidationError("economy CSV line " + std::to_string(line_no) + ": bad number '" + cells[k] +
                                      "'");
            }
        };
        EconomyInputs row{cells[0], num(1), num(2), num(3), num(4), std::nullopt};
        if (cells.size() == 6 && !cells[5].empty()) row.printed_r = num(5);
        rows.push_back(row);
    }
    return rows;
}

std::vector<EconomyInputs> load_economy_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open economy CSV " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_economy_csv(ss.str());
}

}  // namespace biphoton
