#include "biphoton/interference.hpp"

#include <algorithm>
#include <cmath>

#include "biphoton/error.hpp"
#include "biphoton/schmidt.hpp"

namespace biphoton {

namespace {

using cd = std::complex<double>;

void require_normalized(const JointSpectralAmplitude& jsa, const char* who) {
    if (!jsa.is_normalized(1e-8)) throw ValidationError(std::string(who) + " needs a normalized JSA");
}

void require_square(const JointSpectralAmplitude& jsa, const char* who) {
    if (!(jsa.grid_s() == jsa.grid_i()))
        throw ValidationError(std::string(who) + " needs identical signal and idler grids");
}

double l2(const Eigen::MatrixXcd& m, double measure) { return std::sqrt(m.squaredNorm() * measure); }

}  // namespace

double homi_visibility_analytic(const GaussianSourceModel& model) {
    if (!(model.sigma > 0.0) || !(model.sigma_f > 0.0)) throw ValidationError("sigma and sigma_F must be positive");
    if (!model.filtered()) return 0.0;
    const double f2 = model.sigma_f * model.sigma_f;
    const double r = f2 / (f2 + model.sigma * model.sigma);
    return std::sqrt(1.0 - r * r);
}

double homi_baseline_analytic(const GaussianSourceModel& model) {
    if (!(model.sigma > 0.0) || !(model.sigma_f > 0.0)) throw ValidationError("sigma and sigma_F must be positive");
    if (!model.filtered()) return 1.0;
    const double f2 = model.sigma_f * model.sigma_f;
    return 2.0 * f2 / (2.0 * f2 + model.sigma * model.sigma);
}

double homi_dip_width(const GaussianSourceModel& model) {
    if (!(model.sigma > 0.0) || !(model.sigma_f > 0.0)) throw ValidationError("sigma and sigma_F must be positive");
    if (!model.filtered()) return std::sqrt(8.0) / model.sigma;
    const double s2 = model.sigma * model.sigma;
    const double f2 = model.sigma_f * model.sigma_f;
    return std::sqrt(8.0 * (f2 + s2)) / (model.sigma * model.sigma_f);
}

DipCurve homi_dip_analytic(const GaussianSourceModel& model, const std::vector<double>& tau) {
    DipCurve out;
    out.tau = tau;
    out.visibility = homi_visibility_analytic(model);
    out.baseline = homi_baseline_analytic(model);
    const double w = homi_dip_width(model);
    for (double t : tau) out.rate.push_back(out.baseline * (1.0 - out.visibility * std::exp(-(t / w) * (t / w))));
    return out;
}

std::vector<double> default_tau_grid(double dip_width) {
    if (!(dip_width > 0.0)) throw ValidationError("dip width must be positive");
    std::vector<double> tau(41);
    for (int k = 0; k < 41; ++k) tau[k] = -4.0 * dip_width + k * (8.0 * dip_width / 40.0);
    return tau;
}

Eigen::MatrixXcd reduced_signal_kernel(const JointSpectralAmplitude& jsa) {
    const Eigen::MatrixXcd f = jsa.values() * std::sqrt(jsa.measure());
    return f * f.adjoint();
}

DipCurve two_crystal_homi_numeric(const JointSpectralAmplitude& jsa, const std::vector<double>& tau) {
    require_normalized(jsa, "two_crystal_homi_numeric");
    const Eigen::MatrixXd p = reduced_signal_kernel(jsa).cwiseAbs2();
    const Eigen::VectorXd nu = jsa.grid_s().detunings();
    const auto cross = [&](double t) {
        // sum_ab P_ab exp(i (nu_a - nu_b) t) = e^T P conj(e) with e_a = exp(i nu_a t).
        // The centre frequency cancels in the difference.
        const Eigen::VectorXcd e = (nu.cast<cd>() * cd(0.0, t)).array().exp();
        return (e.transpose() * p.cast<cd>() * e.conjugate())(0, 0).real();
    };
    DipCurve out;
    out.tau = tau;
    for (double t : tau) out.rate.push_back(1.0 - cross(t));
    out.baseline = 1.0;
    out.visibility = cross(0.0);
    return out;
}

double factorability_residual(const JointSpectralAmplitude& jsa) {
    const auto d = schmidt_svd(jsa);
    return std::max(0.0, 1.0 - d.eigenvalues.front());
}

double symmetry_residual(const JointSpectralAmplitude& jsa) {
    require_square(jsa, "symmetry_residual");
    return l2(jsa.values() - jsa.values().transpose(), jsa.measure());
}

PolarizedPairState::PolarizedPairState(JointSpectralAmplitude f_, JointSpectralAmplitude g_, int sign_,
                                       PairFamily family_)
    : f(std::move(f_)), g(std::move(g_)), sign(sign_), family(family_) {
    if (sign != 1 && sign != -1) throw ValidationError("pair sign must be +1 or -1");
    require_square(f, "PolarizedPairState");
    if (!(f.grid_s() == g.grid_s()) || !(f.grid_i() == g.grid_i()))
        throw ValidationError("f and g must share one grid");
    require_normalized(f, "PolarizedPairState (f)");
    require_normalized(g, "PolarizedPairState (g)");
}

BellRates bell_analyzer_rates(const PolarizedPairState& pair, double tau) {
    const auto& f = pair.f.values();
    const Eigen::MatrixXcd gt = pair.g.values().transpose();
    const auto& grid = pair.f.grid_s();
    const int n = grid.size();
    Eigen::MatrixXcd ph(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) ph(a, b) = std::polar(1.0, (grid.detuning(a) - grid.detuning(b)) * tau);
    const Eigen::MatrixXcd shifted = ph.cwiseProduct(gt);
    const double m = pair.f.measure();
    return {0.25 * (f - shifted).squaredNorm() * m, 0.25 * (f + shifted).squaredNorm() * m};
}

double bell_condition_residual(const PolarizedPairState& pair) {
    return l2(pair.g.values() - pair.f.values().transpose(), pair.f.measure());
}

double polcorr_condition_residual(const PolarizedPairState& pair) {
    return l2(pair.f.values() - pair.g.values(), pair.f.measure());
}

PolarizedPairState half_wave_plate_transform(const PolarizedPairState& pair) {
    return PolarizedPairState(pair.f, pair.g.transposed(), pair.sign, pair.family);
}

double polarization_fringe(const PolarizedPairState& pair, double theta_a, double theta_b) {
    const double cf = std::cos(theta_a) * std::sin(theta_b);
    const double cg = pair.sign * std::sin(theta_a) * std::cos(theta_b);
    return (cf * pair.f.values() + cg * pair.g.values()).squaredNorm() * pair.f.measure();
}

double fringe_visibility(const PolarizedPairState& pair, double theta_b, int n_points) {
    if (n_points < 4) throw ValidationError("fringe scan needs at least 4 points");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int k = 0; k < n_points; ++k) {
        const double r = polarization_fringe(pair, std::numbers::pi * k / n_points, theta_b);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return hi + lo > 0.0 ? (hi - lo) / (hi + lo) : 0.0;
}

EffectiveModes effective_mode_factorization(const JointSpectralAmplitude& jsa) {
    const auto d = schmidt_svd(jsa);
    EffectiveModes out;
    out.p = d.signal_modes.col(0);
    out.q = d.idler_modes.col(0);
    out.weight = d.eigenvalues.front();
    out.residual = std::max(0.0, 1.0 - out.weight);
    return out;
}

}  // namespace biphoton
