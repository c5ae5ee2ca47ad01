#pragma once

// Nonlinear sign-shift gate, the two-photon HOM Mach-Zehnder test and the
// six-photon coincidence test of the gate driven by three PDC sources.

#include <complex>
#include <string>
#include <vector>

#include "biphoton/focksim.hpp"
#include "biphoton/spectra.hpp"

namespace biphoton {

/// Three-beamsplitter NS gate on signal A, ancilla B (one photon in) and
/// vacuum port C: BS_BC(r), then BS_AB(s) with the pi phase on the A side,
/// then BS_BC(r). Heralded by one photon in B and none in C.
struct NSGateConfig {
    double r = 0.0;
    double s = 0.0;
    std::string topology = "ralph3";
    std::string convention = "pi_on_second_port";
};

/// r = 1 / (4 - 2 sqrt 2), s = (sqrt 2 - 1)^2.
NSGateConfig default_ns_config();

void add_ns_gate(LinearNetwork& network, const NSGateConfig& cfg, int signal, int ancilla, int vacuum);

/// The gate alone on channels A = 0, B = 1, C = 2.
LinearNetwork ns_gate_network(const NSGateConfig& cfg);

/// Heralded output amplitudes c_k for |k> in A, |1> in B, |0> in C.
struct NSConditionalMap {
    std::complex<double> c0, c1, c2;
    double success = 0.0;  // |c0|^2
    /// |c1/c0 - 1|^2 + |c2/c0 + 1|^2: zero for the ideal sign flip.
    double sign_flip_residual() const;
};

NSConditionalMap ns_conditional_map(const NSGateConfig& cfg);

struct NSOptimum {
    double r = 0.0;
    double s = 0.0;
    double success = 0.0;
    double residual = 0.0;
};

/// Searches (r, s) in (0, 1)^2 for the sign-flip map: a `grid` x `grid` scan
/// of sign_flip_residual followed by a compass search to 1e-13 in r and s.
NSOptimum ns_optimize(int grid = 200);

/// Stages of a HOM Mach-Zehnder on two channels with |1>|1> input: psi2
/// after the first 50:50 splitter, psi3 after a phase exp(i phase) on the
/// two-photon component of the second arm, psi4 after the second splitter.
struct HomiMzStages {
    FockState psi1, psi2, psi3, psi4;
    double coincidence = 0.0;  // |<1,1|psi4>|^2
};

HomiMzStages homi_mz_stage_states(double phase);

/// Six-photon apparatus: triggers T1..T3 on channels 0..2; source k sends
/// its idler to T_k and its signal to channel 3 + k. Channels 3 (u) and 4
/// (l) form the HOM Mach-Zehnder whose detectors are D1 and D2; the NS gate
/// sits on arm l with channel 5 as ancilla (detector C1) and channel 6 as
/// vacuum port (detector C2).
struct Fig6Preset {
    LinearNetwork network;
    std::vector<PairSource> sources;     // weights left empty
    DetectionPattern sixfold;            // T1 T2 T3 D1 D2 C1, nothing at C2
    std::vector<std::string> channel_names;
};

Fig6Preset fig6_preset(const NSGateConfig& cfg);

inline constexpr int kDefaultSchmidtModes = 8;
inline constexpr double kMaxTruncationMass = 1e-3;

struct SixfoldRate {
    double rate = 0.0;
    double truncation_mass = 0.0;
    double mu = 0.0;
    double K = 1.0;
    int n_modes = 0;
};

/// Six-fold probability with three identical sources of Schmidt parameter
/// mu, truncated to n_modes. Throws RegimeError when the discarded weight
/// exceeds kMaxTruncationMass.
SixfoldRate ns_sixfold_rate(double mu, const NSGateConfig& cfg, int n_modes = kDefaultSchmidtModes);

/// As above for the Gaussian source model. Also checks numerically that the
/// SVD modes of the model coincide with the Hermite-Gaussian basis the
/// labels refer to.
SixfoldRate ns_sixfold_rate(const GaussianSourceModel& model, const NSGateConfig& cfg,
                            int n_modes = kDefaultSchmidtModes);

/// Largest deviation of |<svd mode m, hermite mode n>| from delta_mn over the
/// modes with eigenvalue above 1e-8 (at most n_modes of them).
double schmidt_basis_deviation(const GaussianSourceModel& model, int n_modes);

}  // namespace biphoton
