#pragma once

// Two-photon and four-photon interference observables: two-crystal HOM dips,
// Bell-state-analyzer rates and polarization-correlation fringes.

#include <vector>

#include <Eigen/Dense>

#include "biphoton/spectra.hpp"

namespace biphoton {

struct DipCurve {
    std::vector<double> tau;    // s
    std::vector<double> rate;   // Rc(tau), with Rc(infinity) = R0
    double visibility = 0.0;
    double baseline = 1.0;      // R0
};

/// V = sqrt(1 - sigma_F^4 / (sigma_F^2 + sigma^2)^2).
double homi_visibility_analytic(const GaussianSourceModel& model);

/// R0 = 2 sigma_F^2 / (2 sigma_F^2 + sigma^2).
double homi_baseline_analytic(const GaussianSourceModel& model);

/// 1/e delay of the dip: sqrt(8 (sigma_F^2 + sigma^2)) / (sigma sigma_F).
double homi_dip_width(const GaussianSourceModel& model);

/// R0 [1 - V exp(-sigma^2 sigma_F^2 tau^2 / (8 (sigma_F^2 + sigma^2)))].
DipCurve homi_dip_analytic(const GaussianSourceModel& model, const std::vector<double>& tau);

/// 41 delays spanning +-4 dip widths.
std::vector<double> default_tau_grid(double dip_width);

/// Two identical crystals, signal photons interfered, idlers as triggers:
///   Rc(tau) = 1 - Re sum rho(w1, w3) rho(w3, w1) exp(i (w1 - w3) tau),
/// rho(w, w') = sum_nu f(w, nu) f*(w', nu) d(nu). Rates are normalized so
/// that Rc(infinity) = 1; V = 1 - Rc(0).
DipCurve two_crystal_homi_numeric(const JointSpectralAmplitude& jsa, const std::vector<double>& tau);

/// Reduced density kernel of the signal photon, sampled with its measure:
/// rho_ab = rho(w_a, w_b) d(nu_s).
Eigen::MatrixXcd reduced_signal_kernel(const JointSpectralAmplitude& jsa);

/// 1 - lambda_0: weight outside the leading Schmidt pair.
double factorability_residual(const JointSpectralAmplitude& jsa);

/// L2 norm of S(nu_s, nu_i) - S(nu_i, nu_s); needs identical signal and idler grids.
double symmetry_residual(const JointSpectralAmplitude& jsa);

enum class PairFamily { psi, phi };

/// (f a_H b_V +- g a_V b_H) / sqrt(2), or the phi family with H/V patterns
/// H H and V V. f and g share one square grid and are normalized.
struct PolarizedPairState {
    JointSpectralAmplitude f;
    JointSpectralAmplitude g;
    int sign = +1;
    PairFamily family = PairFamily::psi;

    PolarizedPairState(JointSpectralAmplitude f, JointSpectralAmplitude g, int sign = +1,
                       PairFamily family = PairFamily::psi);
};

struct BellRates {
    double plus = 0.0;   // psi+ input
    double minus = 0.0;  // psi- input
};

/// Rc+- = 1/4 sum |f(w1, w2) -+ exp(i (w1 - w2) tau) g(w2, w1)|^2 dw1 dw2.
BellRates bell_analyzer_rates(const PolarizedPairState& pair, double tau);

/// || g - f^T ||: zero when the Bell analyzer works ideally.
double bell_condition_residual(const PolarizedPairState& pair);

/// || f - g ||: zero when polarization fringes reach unit visibility.
double polcorr_condition_residual(const PolarizedPairState& pair);

/// Half-wave plate on one arm: g(w1, w2) -> g(w2, w1). Exchanges the two
/// residuals above.
PolarizedPairState half_wave_plate_transform(const PolarizedPairState& pair);

/// Rc = sum |cos(ta) sin(tb) f + s sin(ta) cos(tb) g|^2 with s the pair sign.
double polarization_fringe(const PolarizedPairState& pair, double theta_a, double theta_b);

/// (max - min) / (max + min) of polarization_fringe over theta_a in [0, pi)
/// at fixed theta_b, sampled at n_points.
double fringe_visibility(const PolarizedPairState& pair, double theta_b, int n_points = 360);

/// Leading Schmidt pair S ~ sqrt(lambda_0) p(w_s) q(w_i), the effective
/// single-mode operators of a nearly factorable source.
struct EffectiveModes {
    Eigen::VectorXcd p;
    Eigen::VectorXcd q;
    double weight = 0.0;    // lambda_0
    double residual = 0.0;  // 1 - lambda_0
};

EffectiveModes effective_mode_factorization(const JointSpectralAmplitude& jsa);

}  // namespace biphoton
