#include "biphoton/nsgate.hpp"

#include <cmath>

#include "biphoton/error.hpp"
#include "biphoton/schmidt.hpp"

namespace biphoton {

namespace {

using cd = std::complex<double>;

void check_reflectivity(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(std::string("NS gate reflectivity ") + name + " must lie in [0, 1]");
}

}  // namespace

NSGateConfig default_ns_config() {
    const double r2 = std::sqrt(2.0);
    return {1.0 / (4.0 - 2.0 * r2), (r2 - 1.0) * (r2 - 1.0)};
}

void add_ns_gate(LinearNetwork& network, const NSGateConfig& cfg, int signal, int ancilla, int vacuum) {
    if (cfg.topology != "ralph3") throw ValidationError("unknown NS topology '" + cfg.topology + "'");
    check_reflectivity(cfg.r, "r");
    check_reflectivity(cfg.s, "s");
    network.add_beamsplitter(ancilla, vacuum, cfg.r);
    network.add_beamsplitter(ancilla, signal, cfg.s);
    network.add_beamsplitter(ancilla, vacuum, cfg.r);
}

LinearNetwork ns_gate_network(const NSGateConfig& cfg) {
    LinearNetwork net(3);
    add_ns_gate(net, cfg, 0, 1, 2);
    return net;
}

double NSConditionalMap::sign_flip_residual() const {
    if (std::abs(c0) == 0.0) return std::numeric_limits<double>::infinity();
    return std::norm(c1 / c0 - 1.0) + std::norm(c2 / c0 + 1.0);
}

NSConditionalMap ns_conditional_map(const NSGateConfig& cfg) {
    const Eigen::MatrixXcd u = ns_gate_network(cfg).unitary();
    NSConditionalMap m;
    m.c0 = fock_amplitude(u, {0, 1, 0}, {0, 1, 0});
    m.c1 = fock_amplitude(u, {1, 1, 0}, {1, 1, 0});
    m.c2 = fock_amplitude(u, {2, 1, 0}, {2, 1, 0});
    m.success = std::norm(m.c0);
    return m;
}

NSOptimum ns_optimize(int grid) {
    if (grid < 2) throw ValidationError("optimizer grid needs at least 2 points per axis");
    auto residual = [](double r, double s) {
        if (!(r > 0.0 && r < 1.0 && s > 0.0 && s < 1.0)) return std::numeric_limits<double>::infinity();
        return ns_conditional_map({r, s}).sign_flip_residual();
    };
    double best_r = 0.0, best_s = 0.0, best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const double r = (i + 0.5) / grid;
            const double s = (j + 0.5) / grid;
            const double v = residual(r, s);
            if (v < best) {
                best = v;
                best_r = r;
                best_s = s;
            }
        }
    double step = 1.0 / grid;
    while (step > 1e-13) {
        bool moved = false;
        for (const auto& [dr, ds] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
            const double v = residual(best_r + dr * step, best_s + ds * step);
            if (v < best) {
                best = v;
                best_r += dr * step;
                best_s += ds * step;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return {best_r, best_s, ns_conditional_map({best_r, best_s}).success, best};
}

HomiMzStages homi_mz_stage_states(double phase) {
    LinearNetwork bs(2);
    bs.add_beamsplitter(0, 1, 0.5);
    HomiMzStages st{FockState::basis({1, 1}), FockState(2), FockState(2), FockState(2), 0.0};
    st.psi2 = st.psi1.evolve(bs.unitary());
    st.psi3 = st.psi2.with_number_phase(1, 2, phase);
    st.psi4 = st.psi3.evolve(bs.unitary());
    st.coincidence = std::norm(st.psi4.amplitude({1, 1}));
    return st;
}

Fig6Preset fig6_preset(const NSGateConfig& cfg) {
    LinearNetwork net(7);
    net.add_beamsplitter(3, 4, 0.5);
    add_ns_gate(net, cfg, 4, 5, 6);
    net.add_beamsplitter(3, 4, 0.5);
    return {net,
            {{0, 3, {}}, {1, 4, {}}, {2, 5, {}}},
            {{1, 1, 1, 1, 1, 1, 0}},
            {"T1", "T2", "T3", "D1", "D2", "C1", "C2"}};
}

SixfoldRate ns_sixfold_rate(double mu, const NSGateConfig& cfg, int n_modes) {
    if (n_modes < 1) throw ValidationError("need at least one Schmidt mode");
    const auto ev = analytic_eigenvalues(mu, n_modes - 1);
    auto preset = fig6_preset(cfg);
    SpectralPhotonInput input;
    for (auto src : preset.sources) {
        src.weights = ev.eigenvalues;
        input.sources.push_back(src);
    }
    SixfoldRate out;
    out.mu = mu;
    out.K = analytic_K(mu);
    out.n_modes = n_modes;
    out.truncation_mass = input.truncation_mass();
    if (out.truncation_mass > kMaxTruncationMass)
        throw RegimeError("Schmidt truncation discards " + std::to_string(out.truncation_mass) +
                          " of the state (limit " + std::to_string(kMaxTruncationMass) + "); raise N_modes");
    out.rate = pattern_probability(preset.network, input, preset.sixfold);
    return out;
}

double schmidt_basis_deviation(const GaussianSourceModel& model, int n_modes) {
    const auto params = mehler_params(model);
    const FrequencyGrid grid = model_grid(model, 0.0);
    const auto d = schmidt_svd(gaussian_model_jsa(model, grid, grid));
    int m = 0;
    while (m < std::min(n_modes, d.size()) && d.eigenvalues[m] >= 1e-8) ++m;
    const double a = std::abs(params.alpha1);
    Eigen::MatrixXcd herm(grid.size(), m);
    for (int j = 0; j < grid.size(); ++j)
        for (int n = 0; n < m; ++n)
            herm(j, n) = std::sqrt(a) * hermite_mode(n, a * grid.detuning(j), HermiteNormalization::orthonormal);
    const Eigen::MatrixXd overlap = (d.signal_modes.leftCols(m).adjoint() * herm * grid.spacing()).cwiseAbs();
    return (overlap - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
}

SixfoldRate ns_sixfold_rate(const GaussianSourceModel& model, const NSGateConfig& cfg, int n_modes) {
    const double mu = analytic_mu(model);
    const double dev = schmidt_basis_deviation(model, n_modes);
    if (dev > 1e-8)
        throw RegimeError("Schmidt modes of the source deviate from the shared Hermite-Gaussian basis by " +
                          std::to_string(dev));
    return ns_sixfold_rate(mu, cfg, n_modes);
}

}  // namespace biphoton
