#include "biphoton/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "biphoton/error.hpp"
#include "numeric.hpp"

namespace biphoton {

namespace detail {
extern const std::string_view kBuiltinMaterialsText;
}

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<double> parse_numbers(const std::string& text, int line_no) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(t, &used));
            if (used != t.size()) throw std::invalid_argument(t);
        } catch (const std::logic_error&) {
            throw ValidationError("materials file line " + std::to_string(line_no) +
                                  ": not a number: '" + t + "'");
        }
    }
    return out;
}

struct AxisRecord {
    std::string material;
    std::string axis;
    std::string form;
    std::vector<double> coeffs;
    std::vector<double> range;
    int first_line = 0;
};

SellmeierAxis make_axis(const AxisRecord& rec) {
    if (rec.form != "sellmeier_v1")
        throw ValidationError("materials file line " + std::to_string(rec.first_line) +
                              ": unsupported form '" + rec.form + "'");
    if (rec.coeffs.size() < 2 || rec.coeffs.size() % 2 != 0)
        throw ValidationError("materials file line " + std::to_string(rec.first_line) +
                              ": sellmeier_v1 needs A,D followed by (B,C) pairs");
    SellmeierAxis ax;
    ax.a = rec.coeffs[0];
    ax.d = rec.coeffs[1];
    for (std::size_t k = 2; k < rec.coeffs.size(); k += 2) ax.poles.emplace_back(rec.coeffs[k], rec.coeffs[k + 1]);
    return ax;
}

void check_range(const Material& m, double lambda_um) {
    if (!m.range.contains(lambda_um)) {
        std::ostringstream os;
        os << m.name << ": wavelength " << lambda_um << " um outside validity range [" << m.range.lo_um
           << ", " << m.range.hi_um << "] um";
        throw RangeError(os.str());
    }
}

// Principal index and its slope dn/dlambda (per micrometre).
std::pair<double, double> principal_index(const SellmeierAxis& ax, double lambda_um) {
    const double n2 = ax.n_squared(lambda_um);
    if (!(n2 > 1.0)) throw RangeError("Sellmeier evaluation gave n^2 <= 1");
    const double n = std::sqrt(n2);
    return {n, ax.dn_squared_dlambda(lambda_um) / (2.0 * n)};
}

// Index and dn/dlambda (per micrometre) for a ray.
std::pair<double, double> index_and_slope(const Material& m, double lambda_um, Ray ray) {
    check_range(m, lambda_um);
    const auto [no, dno] = principal_index(m.ordinary, lambda_um);
    if (ray.axis == Axis::ordinary) return {no, dno};
    const auto [ne, dne] = principal_index(m.extraordinary, lambda_um);
    const double c2 = std::cos(ray.theta.rad()) * std::cos(ray.theta.rad());
    const double s2 = 1.0 - c2;
    const double inv_n2 = c2 / (no * no) + s2 / (ne * ne);
    const double n = 1.0 / std::sqrt(inv_n2);
    const double dn = n * n * n * (c2 * dno / (no * no * no) + s2 * dne / (ne * ne * ne));
    return {n, dn};
}

double n_at(const Material& m, double lambda_um, Ray ray) { return index_and_slope(m, lambda_um, ray).first; }

}  // namespace

double SellmeierAxis::n_squared(double lambda_um) const {
    const double l2 = lambda_um * lambda_um;
    double v = a - d * l2;
    for (const auto& [b, c] : poles) v += b / (l2 - c);
    return v;
}

double SellmeierAxis::dn_squared_dlambda(double lambda_um) const {
    const double l2 = lambda_um * lambda_um;
    double v = -2.0 * d * lambda_um;
    for (const auto& [b, c] : poles) v -= 2.0 * lambda_um * b / ((l2 - c) * (l2 - c));
    return v;
}

bool Material::negative_uniaxial() const {
    const double mid = 0.5 * (range.lo_um + range.hi_um);
    return extraordinary.n_squared(mid) < ordinary.n_squared(mid);
}

MaterialDatabase MaterialDatabase::parse(std::string_view text) {
    std::vector<AxisRecord> records;
    AxisRecord cur;
    bool open = false;
    auto close = [&] {
        if (!open) return;
        if (cur.material.empty() || cur.axis.empty() || cur.form.empty() || cur.coeffs.empty() ||
            cur.range.empty())
            throw ValidationError("materials file line " + std::to_string(cur.first_line) +
                                  ": block needs material, axis, form, coeffs and range_um");
        records.push_back(cur);
        cur = AxisRecord{};
        open = false;
    };

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty()) {
            close();
            continue;
        }
        if (line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("materials file line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!open) {
            open = true;
            cur.first_line = line_no;
        }
        if (key == "material") {
            cur.material = value;
        } else if (key == "axis") {
            if (value != "o" && value != "e")
                throw ValidationError("materials file line " + std::to_string(line_no) + ": axis must be o or e");
            cur.axis = value;
        } else if (key == "form") {
            cur.form = value;
        } else if (key == "coeffs") {
            cur.coeffs = parse_numbers(value, line_no);
        } else if (key == "range_um") {
            cur.range = parse_numbers(value, line_no);
            if (cur.range.size() != 2 || !(cur.range[0] > 0.0) || !(cur.range[1] > cur.range[0]))
                throw ValidationError("materials file line " + std::to_string(line_no) +
                                      ": range_um must be lo,hi with 0 < lo < hi");
        } else {
            throw ValidationError("materials file line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    close();

    struct Partial {
        std::optional<SellmeierAxis> o, e;
        ValidityRange range{0.0, 1e300};
    };
    std::map<std::string, Partial> by_name;
    std::vector<std::string> order;
    for (const auto& rec : records) {
        if (!by_name.contains(rec.material)) order.push_back(rec.material);
        auto& p = by_name[rec.material];
        auto& slot = rec.axis == "o" ? p.o : p.e;
        if (slot)
            throw ValidationError("materials file: duplicate axis '" + rec.axis + "' for " + rec.material);
        slot = make_axis(rec);
        p.range.lo_um = std::max(p.range.lo_um, rec.range[0]);
        p.range.hi_um = std::min(p.range.hi_um, rec.range[1]);
    }

    MaterialDatabase db;
    for (const auto& name : order) {
        const auto& p = by_name[name];
        if (!p.o || !p.e) throw ValidationError("materials file: " + name + " needs both o and e axes");
        if (!(p.range.hi_um > p.range.lo_um))
            throw ValidationError("materials file: " + name + " axes have disjoint validity ranges");
        db.materials_.push_back(Material{name, *p.o, *p.e, p.range});
    }
    if (db.materials_.empty()) throw ValidationError("materials file defines no materials");
    return db;
}

MaterialDatabase MaterialDatabase::load(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open materials file " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

const MaterialDatabase& MaterialDatabase::builtin() {
    static const MaterialDatabase db = parse(detail::kBuiltinMaterialsText);
    return db;
}

const Material& MaterialDatabase::get(std::string_view name) const {
    for (const auto& m : materials_)
        if (m.name == name) return m;
    throw ValidationError("unknown material '" + std::string(name) + "'");
}

bool MaterialDatabase::contains(std::string_view name) const {
    return std::any_of(materials_.begin(), materials_.end(), [&](const Material& m) { return m.name == name; });
}

std::vector<std::string> MaterialDatabase::names() const {
    std::vector<std::string> out;
    for (const auto& m : materials_) out.push_back(m.name);
    return out;
}

const Material& builtin_material(std::string_view name) { return MaterialDatabase::builtin().get(name); }

double refractive_index(const Material& material, Length wavelength, Ray ray) {
    return n_at(material, wavelength.um(), ray);
}

double refractive_index_slope(const Material& material, Length wavelength, Ray ray) {
    return index_and_slope(material, wavelength.um(), ray).second * 1e6;
}

WaveProps wave_props(const Material& material, Length wavelength, Ray ray) {
    const double lam_um = wavelength.um();
    const auto [n, dn_um] = index_and_slope(material, lam_um, ray);
    const double omega = angular_frequency(wavelength);
    return {omega, n * omega / kSpeedOfLight, (n - lam_um * dn_um) / kSpeedOfLight};
}

WaveProps wave_props_at(const Material& material, double omega, Ray ray) {
    return wave_props(material, vacuum_wavelength(omega), ray);
}

Angle degenerate_noncollinear_angle(const Material& material, Length pump_wavelength, Angle cut_angle) {
    // k_p = n_p * 2 omega0 / c and k = n * omega0 / c, so cos(theta) = n_p / n.
    const double np = n_at(material, pump_wavelength.um(), Ray::extraordinary(cut_angle));
    const double n = n_at(material, 2.0 * pump_wavelength.um(), Ray::ordinary());
    const double c = np / n;
    if (c > 1.0) {
        std::ostringstream os;
        os << material.name << ": not phase-matchable at cut angle " << cut_angle.deg()
           << " deg (k_p exceeds 2k by a fraction " << c - 1.0 << ")";
        throw NotPhaseMatchableError(os.str());
    }
    return Angle::radians(std::acos(c));
}

Angle cut_angle_for_emission(const Material& material, Length pump_wavelength, Angle theta) {
    const double lp = pump_wavelength.um();
    const double target = n_at(material, 2.0 * lp, Ray::ordinary()) * std::cos(theta.rad());
    const double no = n_at(material, lp, Ray::ordinary());
    const double ne = n_at(material, lp, Ray::extraordinary(Angle::degrees(90.0)));
    const double s2 = (1.0 / (target * target) - 1.0 / (no * no)) / (1.0 / (ne * ne) - 1.0 / (no * no));
    if (!(s2 >= 0.0 && s2 <= 1.0))
        throw NotPhaseMatchableError(material.name + ": no cut angle gives the requested emission angle");
    return Angle::radians(std::asin(std::sqrt(s2)));
}

TypeIIRays type2_rays(const Material& material, Angle cut_angle) {
    const Ray e = Ray::extraordinary(cut_angle);
    const Ray pump = material.negative_uniaxial() ? e : Ray::ordinary();
    return {pump, Ray::ordinary(), e};
}

Angle collinear_type2_cut_angle(const Material& material, Length degenerate_wavelength) {
    const double lam = degenerate_wavelength.um();
    check_range(material, lam);
    check_range(material, 0.5 * lam);
    const auto mismatch = [&](double th) {
        const auto rays = type2_rays(material, Angle::radians(th));
        return 2.0 * n_at(material, 0.5 * lam, rays.pump) - n_at(material, lam, rays.signal) -
               n_at(material, lam, rays.idler);
    };
    const auto bracket = detail::first_bracket(mismatch, 0.0, 0.5 * kPi, 900);
    if (!bracket) {
        std::ostringstream os;
        os << material.name << ": collinear type-II PDC at " << lam << " um is not phase-matchable";
        throw NotPhaseMatchableError(os.str());
    }
    return Angle::radians(detail::bisect(mismatch, bracket->first, bracket->second, 1e-13));
}

namespace {

struct TypeIISlopes {
    double kp, ks, ki;
};

TypeIISlopes type2_slopes(const Material& material, double lam_um) {
    const Length lam = Length::micrometers(lam_um);
    const Angle cut = collinear_type2_cut_angle(material, lam);
    const auto rays = type2_rays(material, cut);
    return {wave_props(material, lam / 2.0, rays.pump).k_prime, wave_props(material, lam, rays.signal).k_prime,
            wave_props(material, lam, rays.idler).k_prime};
}

}  // namespace

Length gvm_wavelength(const Material& material) {
    const auto residual = [&](double lam_um) {
        const auto s = type2_slopes(material, lam_um);
        return s.kp - 0.5 * (s.ks + s.ki);
    };
    // The pump sits at half the degenerate wavelength, so both must be in range.
    const double lo = 2.0 * material.range.lo_um;
    const double hi = material.range.hi_um;
    const int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) / 0.01)));
    const auto bracket = detail::first_bracket(residual, lo, hi, steps);
    if (!bracket)
        throw RegimeError(material.name + ": no group-velocity-matched wavelength in the validity range");
    return Length::micrometers(detail::bisect(residual, bracket->first, bracket->second, 1e-13));
}

double typeII_contour_slope(const Material& material, Length degenerate_wavelength) {
    const auto s = type2_slopes(material, degenerate_wavelength.um());
    const double den = s.kp - s.ki;
    if (std::abs(den) < 1e-15) {
        std::ostringstream os;
        os << material.name << ": contour slope undefined at " << degenerate_wavelength.um()
           << " um (k_p' equals the idler group slope)";
        throw RegimeError(os.str());
    }
    return -(s.kp - s.ks) / den;
}

}  // namespace biphoton
