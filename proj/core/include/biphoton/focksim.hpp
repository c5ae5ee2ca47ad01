#pragma once

// Multiphoton interference in passive linear networks. Photons carry a
// channel index and a spectral label; labels index one orthonormal spectral
// basis shared by every source, and the network acts on channels only.
//
// Unitaries use the (output, input) convention: a_in^dag -> sum_out U(out, in) b_out^dag.

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace biphoton {

inline constexpr int kMaxPermanentSize = 12;

/// Ryser formula with Gray-code updates. Throws for n > kMaxPermanentSize.
std::complex<double> permanent(const Eigen::MatrixXcd& m);

/// [[sqrt(r), sqrt(1-r)], [sqrt(1-r), -sqrt(r)]]: the pi phase is picked up
/// on reflection from the second port only.
Eigen::Matrix2cd beamsplitter(double r);

struct NetworkElement {
    enum class Kind { beamsplitter, phase };
    Kind kind = Kind::beamsplitter;
    int first = 0;       // channel (bs: the port without the pi phase)
    int second = -1;     // bs only
    double r = 0.0;      // bs intensity reflectivity
    double phi = 0.0;    // phase shift, rad
};

class LinearNetwork {
public:
    explicit LinearNetwork(int n_channels);

    int n_channels() const { return n_; }
    const Eigen::MatrixXcd& unitary() const { return u_; }
    const std::vector<NetworkElement>& elements() const { return elements_; }

    /// Beamsplitter between channels a and b, applied after everything so far;
    /// reflection from b picks up the pi phase.
    LinearNetwork& add_beamsplitter(int a, int b, double r);
    LinearNetwork& add_phase(int channel, double phi);
    LinearNetwork& add(const NetworkElement& e);

    /// Rebuilds a network from an element list.
    static LinearNetwork replay(int n_channels, const std::vector<NetworkElement>& elements);

    /// max |U^dag U - 1|.
    double unitarity_error() const;

private:
    void check_channel(int c) const;

    int n_;
    Eigen::MatrixXcd u_;
    std::vector<NetworkElement> elements_;
};

/// Pair source emitting sum_n sqrt(lambda_n) a^dag_{channel_a, n} a^dag_{channel_b, n}.
struct PairSource {
    int channel_a = 0;
    int channel_b = 0;
    std::vector<double> weights;  // lambda_n, kept modes only
};

struct SinglePhoton {
    int channel = 0;
    int label = 0;
};

/// Product of pair sources and single photons acting on the vacuum.
struct SpectralPhotonInput {
    std::vector<PairSource> sources;
    std::vector<SinglePhoton> singles;

    int photon_count() const { return 2 * static_cast<int>(sources.size()) + static_cast<int>(singles.size()); }
    /// 1 - prod_k sum_n lambda_{k,n}: the norm missing from the truncated state.
    double truncation_mass() const;
};

/// Photon counts per output channel; detectors do not resolve frequency.
struct DetectionPattern {
    std::vector<int> counts;
    int total() const;
};

/// <out| prod a^dag |0> for one spectral mode, with |in> and |out> normalized
/// Fock states given as counts per channel: Perm(U[out rows, in cols]) /
/// sqrt(prod n_in! prod n_out!).
std::complex<double> fock_amplitude(const Eigen::MatrixXcd& u, const std::vector<int>& in_counts,
                                    const std::vector<int>& out_counts);

/// Probability of a frequency-unresolved detection pattern: amplitudes of
/// each spectrally resolved output configuration are summed coherently over
/// the input label assignments, then |.|^2 is summed over configurations.
double pattern_probability(const LinearNetwork& network, const SpectralPhotonInput& input,
                           const DetectionPattern& pattern);

/// All patterns with the input photon number, in lexicographic order.
std::vector<DetectionPattern> enumerate_patterns(int n_channels, int n_photons);

/// Sum of pattern_probability over every pattern. Equals 1 minus the
/// truncation mass for a normalized input.
double total_probability(const LinearNetwork& network, const SpectralPhotonInput& input);

/// Fock-space state over a few channels: normalized-basis amplitudes keyed
/// by occupation numbers.
class FockState {
public:
    using Occupation = std::vector<int>;

    explicit FockState(int n_channels) : n_(n_channels) {}
    static FockState basis(const Occupation& occ);

    int n_channels() const { return n_; }
    const std::map<Occupation, std::complex<double>>& amplitudes() const { return amp_; }
    std::complex<double> amplitude(const Occupation& occ) const;
    void add(const Occupation& occ, std::complex<double> a);
    double norm_squared() const;

    /// Propagates the state through a linear network.
    FockState evolve(const Eigen::MatrixXcd& u) const;
    /// Multiplies every component with exactly `n` photons in `channel` by exp(i phi).
    FockState with_number_phase(int channel, int n, double phi) const;

private:
    int n_;
    std::map<Occupation, std::complex<double>> amp_;
};

}  // namespace biphoton
