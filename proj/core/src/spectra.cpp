#include "biphoton/spectra.hpp"

#include <cmath>
#include <sstream>

#include "biphoton/error.hpp"
#include "numeric.hpp"

namespace biphoton {

namespace {

template <class F>
Eigen::MatrixXcd tabulate(const FrequencyGrid& gs, const FrequencyGrid& gi, F&& f) {
    Eigen::MatrixXcd m(gs.size(), gi.size());
    for (int a = 0; a < gs.size(); ++a)
        for (int b = 0; b < gi.size(); ++b) m(a, b) = f(gs.detuning(a), gi.detuning(b));
    return m;
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(what) + " must be positive and finite");
}

}  // namespace

FrequencyGrid::FrequencyGrid(double omega0, double half_span, int n_points)
    : omega0_(omega0), half_span_(half_span), n_(n_points) {
    if (n_points < 2) throw ValidationError("frequency grid needs at least 2 points");
    if (!(half_span > 0.0) || !std::isfinite(half_span)) throw ValidationError("grid half span must be positive");
    if (!(omega0 >= 0.0) || !std::isfinite(omega0)) throw ValidationError("grid centre frequency must be >= 0");
}

Eigen::VectorXd FrequencyGrid::detunings() const {
    Eigen::VectorXd v(n_);
    for (int j = 0; j < n_; ++j) v(j) = detuning(j);
    return v;
}

FrequencyGrid default_grid(double omega0, double width) {
    require_positive(width, "grid width");
    return FrequencyGrid(omega0, 4.0 * width, kDefaultGridPoints);
}

double pump_envelope_value(const PumpEnvelope& pump, double nu_sum) {
    const double x = nu_sum / pump.sigma_p;
    return std::exp(-x * x);
}

JointSpectralAmplitude::JointSpectralAmplitude(FrequencyGrid grid_s, FrequencyGrid grid_i, Eigen::MatrixXcd values)
    : grid_s_(grid_s), grid_i_(grid_i), values_(std::move(values)) {
    if (values_.rows() != grid_s_.size() || values_.cols() != grid_i_.size())
        throw ValidationError("JSA matrix shape does not match its grids");
    if (!values_.allFinite()) throw ValidationError("JSA contains non-finite values");
}

double JointSpectralAmplitude::norm_squared() const { return values_.squaredNorm() * measure(); }

bool JointSpectralAmplitude::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

JointSpectralAmplitude JointSpectralAmplitude::normalized() const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) throw RegimeError("cannot normalize a JSA that vanishes on its grid");
    return {grid_s_, grid_i_, values_ / std::sqrt(n2)};
}

double JointSpectralAmplitude::peak_magnitude() const { return values_.cwiseAbs().maxCoeff(); }

double JointSpectralAmplitude::boundary_ratio() const {
    const auto mag = values_.cwiseAbs();
    const auto last_r = mag.rows() - 1;
    const auto last_c = mag.cols() - 1;
    const double edge = std::max({mag.row(0).maxCoeff(), mag.row(last_r).maxCoeff(), mag.col(0).maxCoeff(),
                                  mag.col(last_c).maxCoeff()});
    const double peak = mag.maxCoeff();
    return peak > 0.0 ? edge / peak : 0.0;
}

JointSpectralAmplitude JointSpectralAmplitude::transposed() const {
    return {grid_i_, grid_s_, values_.transpose()};
}

double JointSpectralAmplitude::intensity_correlation() const {
    const Eigen::MatrixXd w = values_.cwiseAbs2();
    const double total = w.sum();
    if (!(total > 0.0)) throw RegimeError("intensity correlation of a vanishing JSA");
    const Eigen::VectorXd xs = grid_s_.detunings();
    const Eigen::VectorXd xi = grid_i_.detunings();
    const Eigen::VectorXd ps = w.rowwise().sum() / total;
    const Eigen::VectorXd pi = w.colwise().sum().transpose() / total;
    const double ms = ps.dot(xs);
    const double mi = pi.dot(xi);
    const Eigen::VectorXd ds = xs.array() - ms;
    const Eigen::VectorXd di = xi.array() - mi;
    const double cov = ds.dot(w * di) / total;
    const double vs = ps.dot(ds.cwiseAbs2());
    const double vi = pi.dot(di.cwiseAbs2());
    return cov / std::sqrt(vs * vi);
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double sinc_phasematch(double delta_k, Length length) { return sinc(0.5 * length.m() * delta_k); }

double sinc_half_point() {
    static const double x = detail::bisect([](double v) { return sinc(v) - 0.5; }, 1.0, 2.5, 1e-15);
    return x;
}

double gaussian_sinc_gamma() {
    static const double gamma = std::numbers::ln2 / (sinc_half_point() * sinc_half_point());
    return gamma;
}

JointSpectralAmplitude gaussian_model_jsa(const GaussianSourceModel& model, const FrequencyGrid& grid_s,
                                          const FrequencyGrid& grid_i) {
    require_positive(model.sigma, "sigma");
    if (!(model.sigma_f > 0.0)) throw ValidationError("sigma_F must be positive");
    const double inv_s2 = 1.0 / (model.sigma * model.sigma);
    const double inv_f2 = model.filtered() ? 1.0 / (model.sigma_f * model.sigma_f) : 0.0;
    auto m = tabulate(grid_s, grid_i, [&](double ns, double ni) {
        const double sum = ns + ni;
        return std::complex<double>(std::exp(-2.0 * sum * sum * inv_s2 - 2.0 * (ns * ns + ni * ni) * inv_f2), 0.0);
    });
    return JointSpectralAmplitude(grid_s, grid_i, std::move(m)).normalized();
}

FrequencyGrid model_grid(const GaussianSourceModel& model, double omega0, int n_points) {
    require_positive(model.sigma, "sigma");
    if (!model.filtered()) return FrequencyGrid(omega0, 4.0 * model.sigma, n_points);
    // Width of the amplitude along one axis: sqrt of the (s,s) entry of the
    // inverse quadratic form of the exponent.
    const double p = 2.0 / (model.sigma * model.sigma);
    const double q = 2.0 / (model.sigma_f * model.sigma_f);
    const double det = (p + q) * (p + q) - p * p;
    const double width = std::sqrt((p + q) / det);
    return FrequencyGrid(omega0, 4.0 * width, n_points);
}

JointSpectralAmplitude build_jsa_sinc(const CrystalConfig& crystal, const PumpEnvelope& pump,
                                      const FrequencyGrid& grid_s, const FrequencyGrid& grid_i) {
    if (crystal.material == nullptr) throw ValidationError("crystal material not set");
    require_positive(crystal.length.m(), "crystal length");
    require_positive(pump.sigma_p, "pump bandwidth");
    const Material& mat = *crystal.material;
    Ray pump_ray = Ray::extraordinary(crystal.cut_angle);
    Ray sig_ray = Ray::ordinary();
    Ray idl_ray = Ray::ordinary();
    if (crystal.type == PdcType::type_II_eoe) {
        const auto rays = type2_rays(mat, crystal.cut_angle);
        pump_ray = rays.pump;
        sig_ray = rays.signal;
        idl_ray = rays.idler;
    }
    const double cos_t = std::cos(crystal.emission_angle.rad());

    std::vector<double> ks(grid_s.size()), ki(grid_i.size());
    for (int a = 0; a < grid_s.size(); ++a) ks[a] = wave_props_at(mat, grid_s.omega(a), sig_ray).k;
    for (int b = 0; b < grid_i.size(); ++b) ki[b] = wave_props_at(mat, grid_i.omega(b), idl_ray).k;

    Eigen::MatrixXcd m(grid_s.size(), grid_i.size());
    for (int a = 0; a < grid_s.size(); ++a) {
        for (int b = 0; b < grid_i.size(); ++b) {
            const double wp = grid_s.omega(a) + grid_i.omega(b);
            const double kp = wave_props_at(mat, wp, pump_ray).k;
            const double dk = kp - (ks[a] + ki[b]) * cos_t;
            const double nu_sum = wp - 2.0 * pump.omega0;
            m(a, b) = pump_envelope_value(pump, nu_sum) * sinc_phasematch(dk, crystal.length);
        }
    }
    return JointSpectralAmplitude(grid_s, grid_i, std::move(m)).normalized();
}

JointSpectralAmplitude build_jsa_collinear(const CrystalConfig& crystal, const PumpEnvelope& pump,
                                           const FrequencyGrid& grid_s, const FrequencyGrid& grid_i) {
    if (crystal.emission_angle.rad() != 0.0)
        throw ValidationError("build_jsa_collinear needs a zero emission angle; use build_jsa_sinc");
    return build_jsa_sinc(crystal, pump, grid_s, grid_i);
}

void check_gaussian_beam_regime(const BeamGeometry& beam) {
    const double lhs = beam.w0 / beam.length;
    const double s = std::sin(beam.theta.rad());
    const double rhs = std::sqrt(gaussian_sinc_gamma()) * s * s;
    if (lhs < 10.0 * rhs) {
        std::ostringstream os;
        os.precision(6);
        os << "Gaussian-beam factorization outside its regime: w0/L = " << lhs
           << " but 10 sqrt(gamma) sin^2(theta) = " << 10.0 * rhs;
        throw RegimeError(os.str());
    }
}

GaussianBeamPhaseMatching gaussian_beam_phase_matching(const Material& material, const PumpEnvelope& pump,
                                                       const BeamGeometry& beam) {
    require_positive(beam.w0.m(), "beam waist");
    require_positive(beam.length.m(), "crystal length");
    require_positive(pump.sigma_p, "pump bandwidth");
    require_positive(pump.omega0, "centre frequency");
    const Length lambda0 = vacuum_wavelength(pump.omega0);
    const Length lambda_p = lambda0 / 2.0;

    GaussianBeamPhaseMatching pm;
    pm.cut_angle = cut_angle_for_emission(material, lambda_p, beam.theta);
    const WaveProps p = wave_props(material, lambda_p, Ray::extraordinary(pm.cut_angle));
    const WaveProps s = wave_props(material, lambda0, Ray::ordinary());
    pm.kp_prime = p.k_prime;
    pm.k_prime = s.k_prime;
    pm.k = s.k;
    pm.dkz_slope = p.k_prime - s.k_prime * std::cos(beam.theta.rad());
    pm.dkt_slope = -s.k_prime * std::sin(beam.theta.rad());
    pm.pump_coeff = 1.0 / (pump.sigma_p * pump.sigma_p);
    const double L = beam.length.m();
    const double w0 = beam.w0.m();
    pm.longitudinal_coeff = gaussian_sinc_gamma() * L * L * pm.dkz_slope * pm.dkz_slope / 4.0;
    pm.transverse_coeff = w0 * w0 * pm.dkt_slope * pm.dkt_slope / 4.0;
    return pm;
}

GaussianBeamSurfaces gaussian_beam_surfaces(const Material& material, const PumpEnvelope& pump,
                                            const BeamGeometry& beam, const FrequencyGrid& grid_s,
                                            const FrequencyGrid& grid_i) {
    check_gaussian_beam_regime(beam);
    const auto pm = gaussian_beam_phase_matching(material, pump, beam);
    auto sum2 = [](double a, double b) { return (a + b) * (a + b); };
    auto diff2 = [](double a, double b) { return (a - b) * (a - b); };
    auto lon = tabulate(grid_s, grid_i, [&](double a, double b) {
        return std::complex<double>(std::exp(-pm.longitudinal_coeff * sum2(a, b)), 0.0);
    });
    auto tra = tabulate(grid_s, grid_i, [&](double a, double b) {
        return std::complex<double>(std::exp(-pm.transverse_coeff * diff2(a, b)), 0.0);
    });
    auto pmp = tabulate(grid_s, grid_i, [&](double a, double b) {
        return std::complex<double>(pump_envelope_value(pump, a + b), 0.0);
    });
    Eigen::MatrixXcd prod = lon.cwiseProduct(tra).cwiseProduct(pmp);
    return {JointSpectralAmplitude(grid_s, grid_i, std::move(lon)),
            JointSpectralAmplitude(grid_s, grid_i, std::move(tra)),
            JointSpectralAmplitude(grid_s, grid_i, std::move(pmp)),
            JointSpectralAmplitude(grid_s, grid_i, std::move(prod)).normalized(), pm};
}

JointSpectralAmplitude build_jsa_noncollinear_gaussian_beam(const Material& material, const PumpEnvelope& pump,
                                                            const BeamGeometry& beam, const FrequencyGrid& grid_s,
                                                            const FrequencyGrid& grid_i) {
    check_gaussian_beam_regime(beam);
    const auto pm = gaussian_beam_phase_matching(material, pump, beam);
    const double a = pm.pump_coeff + pm.longitudinal_coeff;
    const double b = pm.transverse_coeff;
    auto m = tabulate(grid_s, grid_i, [&](double s, double i) {
        return std::complex<double>(std::exp(-a * (s + i) * (s + i) - b * (s - i) * (s - i)), 0.0);
    });
    return JointSpectralAmplitude(grid_s, grid_i, std::move(m)).normalized();
}

JointSpectralAmplitude build_jsa_gaussian_beam_unfactorized(const Material& material, const PumpEnvelope& pump,
                                                            const BeamGeometry& beam, const FrequencyGrid& grid_s,
                                                            const FrequencyGrid& grid_i) {
    const auto pm = gaussian_beam_phase_matching(material, pump, beam);
    const double L = beam.length.m();
    const double w0 = beam.w0.m();
    auto m = tabulate(grid_s, grid_i, [&](double s, double i) {
        const double dkz = pm.dkz_slope * (s + i);
        const double dkt = pm.dkt_slope * (s - i);
        const double v = std::exp(-dkt * dkt * w0 * w0 / 4.0) * sinc((dkt * dkt / (4.0 * pm.k) - dkz / 2.0) * L) *
                         pump_envelope_value(pump, s + i);
        return std::complex<double>(v, 0.0);
    });
    return JointSpectralAmplitude(grid_s, grid_i, std::move(m)).normalized();
}

FilteredJsa apply_gaussian_filter(const JointSpectralAmplitude& jsa, double sigma_f) {
    if (!(sigma_f > 0.0)) throw ValidationError("filter width must be positive");
    if (!std::isfinite(sigma_f)) return {jsa.normalized(), 1.0};
    const auto& gs = jsa.grid_s();
    const auto& gi = jsa.grid_i();
    const double k = 2.0 / (sigma_f * sigma_f);
    Eigen::MatrixXcd m = jsa.values();
    for (int a = 0; a < gs.size(); ++a)
        for (int b = 0; b < gi.size(); ++b) {
            const double ns = gs.detuning(a);
            const double ni = gi.detuning(b);
            m(a, b) *= std::exp(-k * (ns * ns + ni * ni));
        }
    JointSpectralAmplitude filtered(gs, gi, std::move(m));
    const double fraction = filtered.norm_squared() / jsa.norm_squared();
    return {filtered.normalized(), fraction};
}

}  // namespace biphoton
