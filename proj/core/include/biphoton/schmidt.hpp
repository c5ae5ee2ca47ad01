#pragma once

// Schmidt decomposition of joint spectral amplitudes, numerically by SVD and
// analytically through the Mehler identity for Gaussian amplitudes.

#include <vector>

#include <Eigen/Dense>

#include "biphoton/spectra.hpp"

namespace biphoton {

/// S(nu_s, nu_i) = sum_n sqrt(lambda_n) psi_n(nu_s) phi_n(nu_i).
///
/// Modes are sampled on the JSA grids and orthonormal under the grid inner
/// product: sum_j conj(psi_m(j)) psi_n(j) d(nu_s) = delta_mn. Each signal
/// mode is phased so its largest-magnitude sample is real and positive.
struct SchmidtDecomposition {
    FrequencyGrid grid_s;
    FrequencyGrid grid_i;
    std::vector<double> eigenvalues;   // descending
    Eigen::MatrixXcd signal_modes;     // column n is psi_n
    Eigen::MatrixXcd idler_modes;      // column n is phi_n
    double truncated_mass = 0.0;       // sum of discarded lambda_n
    double K = 1.0;

    int size() const { return static_cast<int>(eigenvalues.size()); }
    double purity() const { return 1.0 / K; }
    Eigen::MatrixXcd reconstruct() const;
};

inline constexpr double kDefaultEigenvalueCutoff = 1e-12;

/// Thin SVD of S * sqrt(d(nu_s) d(nu_i)). Rejects unnormalized input.
SchmidtDecomposition schmidt_svd(const JointSpectralAmplitude& jsa, double cutoff = kDefaultEigenvalueCutoff);

/// K = 1 / sum lambda_n^2.
double cooperativity(const std::vector<double>& eigenvalues);

/// Largest-magnitude sample of each column made real and positive.
void fix_mode_phases(Eigen::MatrixXcd& signal_modes, Eigen::MatrixXcd& idler_modes);

/// Mehler-form parameters: the amplitude is proportional to
///   exp[-(1+mu^2)/(2(1-mu^2)) (a1^2 x1^2 + a2^2 x2^2) + 2 a1 a2 mu x1 x2 / (1-mu^2)].
struct MehlerParams {
    double mu = 0.0;
    double alpha1 = 0.0;  // s/rad
    double alpha2 = 0.0;  // s/rad
};

/// mu = 1 + r^2 - sqrt(2 r^2 + r^4), r = sigma / sigma_F.
double analytic_mu(const GaussianSourceModel& model);

/// Mehler parameters of gaussian_model_jsa. The model is anticorrelated, so
/// alpha2 = -alpha1 and mu = analytic_mu(model).
MehlerParams mehler_params(const GaussianSourceModel& model);

struct AnalyticEigenvalues {
    std::vector<double> eigenvalues;  // lambda_0 .. lambda_{n_max}
    double tail_mass = 0.0;           // sum over n > n_max
};

/// lambda_n = (1 - mu^2) mu^(2n).
AnalyticEigenvalues analytic_eigenvalues(double mu, int n_max);

/// K = (1 + mu^2) / (1 - mu^2).
double analytic_K(double mu);

enum class HermiteNormalization {
    unscaled,     // u_n(x) = (2^n n!)^(-1/2) H_n(x) exp(-x^2/2)
    orthonormal,  // pi^(-1/4) u_n(x), unit L2 norm on the real line
};

/// Hermite-Gaussian function through the normalized three-term recurrence,
/// stable for large n.
double hermite_mode(int n, double x, HermiteNormalization norm = HermiteNormalization::unscaled);

/// Truncated right side of the Mehler identity next to its closed left side.
struct MehlerComparison {
    Eigen::MatrixXd series;       // sqrt(1-mu^2) sum_{n<=N} mu^n u_n(a1 x1) u_n(a2 x2)
    Eigen::MatrixXd closed_form;  // the exponential
    double max_abs_error() const { return (series - closed_form).cwiseAbs().maxCoeff(); }
    double peak() const { return closed_form.cwiseAbs().maxCoeff(); }
};

MehlerComparison mehler_reconstruct(const MehlerParams& params, const FrequencyGrid& grid_s,
                                    const FrequencyGrid& grid_i, int n_terms);

}  // namespace biphoton
