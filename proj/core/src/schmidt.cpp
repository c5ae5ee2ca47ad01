#include "biphoton/schmidt.hpp"

#include <cmath>

#include "biphoton/error.hpp"

namespace biphoton {

Eigen::MatrixXcd SchmidtDecomposition::reconstruct() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(grid_s.size(), grid_i.size());
    for (int n = 0; n < size(); ++n)
        out += std::sqrt(eigenvalues[n]) * signal_modes.col(n) * idler_modes.col(n).transpose();
    return out;
}

void fix_mode_phases(Eigen::MatrixXcd& signal_modes, Eigen::MatrixXcd& idler_modes) {
    for (Eigen::Index n = 0; n < signal_modes.cols(); ++n) {
        Eigen::Index at = 0;
        signal_modes.col(n).cwiseAbs().maxCoeff(&at);
        const std::complex<double> v = signal_modes(at, n);
        if (std::abs(v) == 0.0) continue;
        const std::complex<double> phase = std::conj(v) / std::abs(v);
        signal_modes.col(n) *= phase;
        idler_modes.col(n) /= phase;
    }
}

SchmidtDecomposition schmidt_svd(const JointSpectralAmplitude& jsa, double cutoff) {
    if (!jsa.is_normalized(1e-8))
        throw ValidationError("schmidt_svd needs a normalized JSA (norm^2 = " + std::to_string(jsa.norm_squared()) +
                              ")");
    const double ds = jsa.grid_s().spacing();
    const double di = jsa.grid_i().spacing();
    const Eigen::MatrixXcd f = jsa.values() * std::sqrt(ds * di);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();

    SchmidtDecomposition out{jsa.grid_s(), jsa.grid_i(), {}, {}, {}, 0.0, 1.0};
    int kept = 0;
    for (Eigen::Index n = 0; n < sv.size(); ++n) {
        const double lam = sv(n) * sv(n);
        if (lam >= cutoff) {
            out.eigenvalues.push_back(lam);
            ++kept;
        } else {
            out.truncated_mass += lam;
        }
    }
    if (kept == 0) throw RegimeError("schmidt_svd: no eigenvalue above the cutoff");
    out.signal_modes = svd.matrixU().leftCols(kept) / std::sqrt(ds);
    // S = U diag(s) V^H, so the idler functions are the conjugated columns of V.
    out.idler_modes = svd.matrixV().leftCols(kept).conjugate() / std::sqrt(di);
    fix_mode_phases(out.signal_modes, out.idler_modes);
    out.K = cooperativity(out.eigenvalues);
    return out;
}

double cooperativity(const std::vector<double>& eigenvalues) {
    if (eigenvalues.empty()) throw ValidationError("cooperativity of an empty eigenvalue list");
    double s = 0.0;
    for (double l : eigenvalues) {
        if (l < 0.0) throw ValidationError("negative Schmidt eigenvalue");
        s += l * l;
    }
    if (!(s > 0.0)) throw ValidationError("all Schmidt eigenvalues vanish");
    return 1.0 / s;
}

double analytic_mu(const GaussianSourceModel& model) {
    if (!(model.sigma > 0.0) || !(model.sigma_f > 0.0)) throw ValidationError("sigma and sigma_F must be positive");
    if (!model.filtered()) throw RegimeError("unfiltered model has no Mehler form (mu = 1)");
    const double r2 = (model.sigma / model.sigma_f) * (model.sigma / model.sigma_f);
    // 1 + r2 - sqrt(2 r2 + r2^2) rewritten to avoid cancellation at large r.
    return 1.0 / (1.0 + r2 + std::sqrt(2.0 * r2 + r2 * r2));
}

MehlerParams mehler_params(const GaussianSourceModel& model) {
    const double mu = analytic_mu(model);
    // Model exponent: -p (x1^2 + x2^2) - q x1 x2 with q = 4/sigma^2; the
    // identity with a2 = -a1 gives 2 a^2 mu / (1 - mu^2) = q.
    const double q = 4.0 / (model.sigma * model.sigma);
    const double a = std::sqrt(q * (1.0 - mu * mu) / (2.0 * mu));
    return {mu, a, -a};
}

AnalyticEigenvalues analytic_eigenvalues(double mu, int n_max) {
    if (!(mu >= 0.0 && mu < 1.0)) throw ValidationError("mu must lie in [0, 1)");
    if (n_max < 0) throw ValidationError("n_max must be >= 0");
    AnalyticEigenvalues out;
    const double mu2 = mu * mu;
    double p = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        out.eigenvalues.push_back((1.0 - mu2) * p);
        p *= mu2;
    }
    out.tail_mass = p;
    return out;
}

double analytic_K(double mu) {
    if (!(mu >= 0.0 && mu < 1.0)) throw ValidationError("mu must lie in [0, 1)");
    return (1.0 + mu * mu) / (1.0 - mu * mu);
}

double hermite_mode(int n, double x, HermiteNormalization norm) {
    if (n < 0) throw ValidationError("Hermite order must be >= 0");
    // Orthonormal recurrence:
    //   psi_{k+1} = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1}.
    const double pi_q = std::pow(std::numbers::pi, -0.25);
    double prev = 0.0;
    double cur = pi_q * std::exp(-0.5 * x * x);
    for (int k = 0; k < n; ++k) {
        const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return norm == HermiteNormalization::orthonormal ? cur : cur / pi_q;
}

MehlerComparison mehler_reconstruct(const MehlerParams& params, const FrequencyGrid& grid_s,
                                    const FrequencyGrid& grid_i, int n_terms) {
    const double mu = params.mu;
    if (!(mu > 0.0 && mu < 1.0)) throw ValidationError("Mehler identity needs 0 < mu < 1");
    if (n_terms < 0) throw ValidationError("number of terms must be >= 0");
    const int ns = grid_s.size();
    const int ni = grid_i.size();
    Eigen::MatrixXd us(ns, n_terms + 1), ui(ni, n_terms + 1);
    for (int j = 0; j < ns; ++j)
        for (int n = 0; n <= n_terms; ++n) us(j, n) = hermite_mode(n, params.alpha1 * grid_s.detuning(j));
    for (int j = 0; j < ni; ++j)
        for (int n = 0; n <= n_terms; ++n) ui(j, n) = hermite_mode(n, params.alpha2 * grid_i.detuning(j));
    Eigen::VectorXd w(n_terms + 1);
    for (int n = 0; n <= n_terms; ++n) w(n) = std::sqrt(1.0 - mu * mu) * std::pow(mu, n);

    MehlerComparison out;
    out.series = us * w.asDiagonal() * ui.transpose();
    out.closed_form.resize(ns, ni);
    const double c1 = (1.0 + mu * mu) / (2.0 * (1.0 - mu * mu));
    const double c2 = 2.0 * mu / (1.0 - mu * mu);
    for (int a = 0; a < ns; ++a)
        for (int b = 0; b < ni; ++b) {
            const double x1 = params.alpha1 * grid_s.detuning(a);
            const double x2 = params.alpha2 * grid_i.detuning(b);
            out.closed_form(a, b) = std::exp(-c1 * (x1 * x1 + x2 * x2) + c2 * x1 * x2);
        }
    return out;
}

}  // namespace biphoton
