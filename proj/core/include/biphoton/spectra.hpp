#pragma once

// Discretized joint spectral amplitudes S(omega_s, omega_i).
//
// Rows index the signal detuning, columns the idler detuning. Detunings are
// nu = omega - omega0 in rad/s and the discrete measure is d(nu_s) d(nu_i).

#include <limits>

#include <Eigen/Dense>

#include "biphoton/dispersion.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

/// Uniform detuning grid nu_j = -half_span + j * spacing, j = 0..n-1.
class FrequencyGrid {
public:
    FrequencyGrid(double omega0, double half_span, int n_points);

    double omega0() const { return omega0_; }
    double half_span() const { return half_span_; }
    int size() const { return n_; }
    double spacing() const { return 2.0 * half_span_ / (n_ - 1); }
    double detuning(int j) const { return -half_span_ + j * spacing(); }
    double omega(int j) const { return omega0_ + detuning(j); }
    Eigen::VectorXd detunings() const;

    bool operator==(const FrequencyGrid&) const = default;

private:
    double omega0_;
    double half_span_;
    int n_;
};

inline constexpr int kDefaultGridPoints = 256;

/// 256-point grid spanning +-4 `width` around omega0.
FrequencyGrid default_grid(double omega0, double width);

/// Gaussian pump envelope exp[-(nu_s + nu_i)^2 / sigma_p^2] centred at 2 omega0.
struct PumpEnvelope {
    double omega0 = 0.0;   // rad/s, degenerate signal/idler frequency
    double sigma_p = 0.0;  // rad/s
};

double pump_envelope_value(const PumpEnvelope& pump, double nu_sum);

class JointSpectralAmplitude {
public:
    JointSpectralAmplitude(FrequencyGrid grid_s, FrequencyGrid grid_i, Eigen::MatrixXcd values);

    const FrequencyGrid& grid_s() const { return grid_s_; }
    const FrequencyGrid& grid_i() const { return grid_i_; }
    const Eigen::MatrixXcd& values() const { return values_; }

    /// d(nu_s) * d(nu_i)
    double measure() const { return grid_s_.spacing() * grid_i_.spacing(); }
    /// sum |S|^2 d(nu_s) d(nu_i)
    double norm_squared() const;
    bool is_normalized(double tol = 1e-10) const;
    JointSpectralAmplitude normalized() const;

    double peak_magnitude() const;
    /// Largest magnitude on the grid boundary relative to the peak.
    double boundary_ratio() const;
    /// True when the amplitude has not decayed to `threshold` of its peak at
    /// the grid edges, i.e. the grid is too narrow.
    bool boundary_leakage(double threshold = 1e-3) const { return boundary_ratio() > threshold; }

    /// S(nu_i, nu_s): signal and idler exchanged.
    JointSpectralAmplitude transposed() const;

    /// Weighted Pearson correlation of (nu_s, nu_i) under |S|^2.
    double intensity_correlation() const;

private:
    FrequencyGrid grid_s_;
    FrequencyGrid grid_i_;
    Eigen::MatrixXcd values_;
};

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// sinc(L dk / 2).
double sinc_phasematch(double delta_k, Length length);

/// Point x at which sinc(x) = 1/2.
double sinc_half_point();

/// gamma = ln 2 / x_half^2: exp(-gamma x^2) has the same FWHM as sinc(x).
double gaussian_sinc_gamma();

inline constexpr double kNoFilter = std::numeric_limits<double>::infinity();

/// Two-parameter Gaussian source: combined pump/phase-matching width sigma
/// and a symmetric Gaussian filter of width sigma_F (kNoFilter for none).
struct GaussianSourceModel {
    double sigma = 0.0;
    double sigma_f = kNoFilter;

    bool filtered() const { return std::isfinite(sigma_f); }
};

/// exp[-2(nu_s + nu_i)^2 / sigma^2 - 2(nu_s^2 + nu_i^2) / sigma_F^2], normalized.
JointSpectralAmplitude gaussian_model_jsa(const GaussianSourceModel& model, const FrequencyGrid& grid_s,
                                          const FrequencyGrid& grid_i);

/// Square grid sized for the model: half span 4x the wider of the two
/// amplitude widths along the diagonals.
FrequencyGrid model_grid(const GaussianSourceModel& model, double omega0, int n_points = kDefaultGridPoints);

struct CrystalConfig {
    const Material* material = nullptr;
    PdcType type = PdcType::type_I_eoo;
    Length length;
    Angle cut_angle;
    /// Internal emission angle of the signal; the idler leaves at minus this.
    Angle emission_angle;
};

/// alpha(nu_s + nu_i) * sinc(L dk / 2) with the exact dispersion of the
/// crystal. dk is the mismatch along the pump axis,
///   k_p(omega_s + omega_i) - [k_s(omega_s) + k_i(omega_i)] cos(theta).
/// Type I: pump e at the cut angle, signal and idler o. Type II: signal o,
/// idler e, pump on the fast axis.
JointSpectralAmplitude build_jsa_sinc(const CrystalConfig& crystal, const PumpEnvelope& pump,
                                      const FrequencyGrid& grid_s, const FrequencyGrid& grid_i);

/// build_jsa_sinc for a collinear configuration (emission angle must be 0).
JointSpectralAmplitude build_jsa_collinear(const CrystalConfig& crystal, const PumpEnvelope& pump,
                                           const FrequencyGrid& grid_s, const FrequencyGrid& grid_i);

struct BeamGeometry {
    Length w0;      // beam diameter at the waist
    Angle theta;    // internal emission angle
    Length length;  // crystal length
};

/// Linearized phase-matching data for degenerate noncollinear type-I PDC
/// pumped by a Gaussian beam (pump e at the cut angle, signal/idler o at
/// +-theta). The log-amplitude of the product S is
///   -a (nu_s + nu_i)^2 - b (nu_s - nu_i)^2.
struct GaussianBeamPhaseMatching {
    Angle cut_angle;
    double kp_prime = 0.0;     // s/m at 2 omega0
    double k_prime = 0.0;      // s/m at omega0
    double k = 0.0;            // rad/m at omega0
    double dkz_slope = 0.0;    // kp' - k' cos(theta)
    double dkt_slope = 0.0;    // -k' sin(theta)
    double pump_coeff = 0.0;   // 1 / sigma_p^2
    double longitudinal_coeff = 0.0;  // gamma L^2 dkz_slope^2 / 4
    double transverse_coeff = 0.0;    // w0^2 dkt_slope^2 / 4

    /// Coefficient of nu_s nu_i in the log of the phase-matching product
    /// phi_z * phi_perp alone; zero when the waist satisfies the factorable
    /// condition.
    double pm_cross_coeff() const { return -2.0 * (longitudinal_coeff - transverse_coeff); }
    /// Coefficient of nu_s^2 (equal to that of nu_i^2) in the same log.
    double pm_diagonal_coeff() const { return -(longitudinal_coeff + transverse_coeff); }
};

/// Throws RegimeError unless w0 / L >= 10 sqrt(gamma) sin^2(theta).
void check_gaussian_beam_regime(const BeamGeometry& beam);

GaussianBeamPhaseMatching gaussian_beam_phase_matching(const Material& material, const PumpEnvelope& pump,
                                                       const BeamGeometry& beam);

/// The three factors of the factorized Gaussian-beam JSA and their product,
/// each on the same grid. The factors are left unnormalized (peak 1); the
/// product is normalized.
struct GaussianBeamSurfaces {
    JointSpectralAmplitude longitudinal;
    JointSpectralAmplitude transverse;
    JointSpectralAmplitude pump;
    JointSpectralAmplitude product;
    GaussianBeamPhaseMatching coefficients;
};

GaussianBeamSurfaces gaussian_beam_surfaces(const Material& material, const PumpEnvelope& pump,
                                            const BeamGeometry& beam, const FrequencyGrid& grid_s,
                                            const FrequencyGrid& grid_i);

JointSpectralAmplitude build_jsa_noncollinear_gaussian_beam(const Material& material, const PumpEnvelope& pump,
                                                            const BeamGeometry& beam, const FrequencyGrid& grid_s,
                                                            const FrequencyGrid& grid_i);

/// Diagnostic only: the unfactorized Gaussian-beam phase-matching function
///   exp(-dk_perp^2 w0^2 / 4) sinc[(dk_perp^2 / (4k) - dk_z / 2) L]
/// times the pump envelope, with the same linearized mismatches.
JointSpectralAmplitude build_jsa_gaussian_beam_unfactorized(const Material& material, const PumpEnvelope& pump,
                                                            const BeamGeometry& beam, const FrequencyGrid& grid_s,
                                                            const FrequencyGrid& grid_i);

struct FilteredJsa {
    JointSpectralAmplitude jsa;          // normalized
    double transmitted_fraction = 1.0;   // filtered / unfiltered norm before renormalizing
};

/// Multiplies by exp(-2 nu_s^2 / sigma_F^2) exp(-2 nu_i^2 / sigma_F^2) and renormalizes.
FilteredJsa apply_gaussian_filter(const JointSpectralAmplitude& jsa, double sigma_f);

}  // namespace biphoton
