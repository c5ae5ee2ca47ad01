#include "biphoton/focksim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>

#include "biphoton/error.hpp"
#include "permanent_impl.hpp"

namespace biphoton {

namespace {

using cd = std::complex<double>;

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

Eigen::Matrix2cd beamsplitter(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("beamsplitter reflectivity must lie in [0, 1]");
    const double a = std::sqrt(r);
    const double b = std::sqrt(1.0 - r);
    Eigen::Matrix2cd m;
    m << a, b, b, -a;
    return m;
}

LinearNetwork::LinearNetwork(int n_channels) : n_(n_channels) {
    if (n_channels < 1) throw ValidationError("network needs at least one channel");
    u_ = Eigen::MatrixXcd::Identity(n_, n_);
}

void LinearNetwork::check_channel(int c) const {
    if (c < 0 || c >= n_)
        throw ValidationError("channel " + std::to_string(c) + " outside network of " + std::to_string(n_));
}

LinearNetwork& LinearNetwork::add_beamsplitter(int a, int b, double r) {
    return add({NetworkElement::Kind::beamsplitter, a, b, r, 0.0});
}

LinearNetwork& LinearNetwork::add_phase(int channel, double phi) {
    return add({NetworkElement::Kind::phase, channel, -1, 0.0, phi});
}

LinearNetwork& LinearNetwork::add(const NetworkElement& e) {
    check_channel(e.first);
    Eigen::MatrixXcd step = Eigen::MatrixXcd::Identity(n_, n_);
    if (e.kind == NetworkElement::Kind::beamsplitter) {
        check_channel(e.second);
        if (e.first == e.second) throw ValidationError("beamsplitter needs two distinct channels");
        const Eigen::Matrix2cd bs = beamsplitter(e.r);
        step(e.first, e.first) = bs(0, 0);
        step(e.first, e.second) = bs(0, 1);
        step(e.second, e.first) = bs(1, 0);
        step(e.second, e.second) = bs(1, 1);
    } else {
        if (!std::isfinite(e.phi)) throw ValidationError("phase must be finite");
        step(e.first, e.first) = std::polar(1.0, e.phi);
    }
    u_ = step * u_;
    elements_.push_back(e);
    return *this;
}

LinearNetwork LinearNetwork::replay(int n_channels, const std::vector<NetworkElement>& elements) {
    LinearNetwork net(n_channels);
    for (const auto& e : elements) net.add(e);
    return net;
}

double LinearNetwork::unitarity_error() const {
    return (u_.adjoint() * u_ - Eigen::MatrixXcd::Identity(n_, n_)).cwiseAbs().maxCoeff();
}

double SpectralPhotonInput::truncation_mass() const {
    double kept = 1.0;
    for (const auto& s : sources) kept *= std::accumulate(s.weights.begin(), s.weights.end(), 0.0);
    return 1.0 - kept;
}

int DetectionPattern::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

cd fock_amplitude(const Eigen::MatrixXcd& u, const std::vector<int>& in_counts, const std::vector<int>& out_counts) {
    const int n = static_cast<int>(u.rows());
    if (static_cast<int>(in_counts.size()) != n || static_cast<int>(out_counts.size()) != n)
        throw ValidationError("occupation vectors must have one entry per channel");
    std::vector<int> cols, rows;
    double norm = 1.0;
    for (int c = 0; c < n; ++c) {
        if (in_counts[c] < 0 || out_counts[c] < 0) throw ValidationError("negative occupation");
        for (int k = 0; k < in_counts[c]; ++k) cols.push_back(c);
        for (int k = 0; k < out_counts[c]; ++k) rows.push_back(c);
        norm *= factorial(in_counts[c]) * factorial(out_counts[c]);
    }
    if (rows.size() != cols.size()) return 0.0;
    if (static_cast<int>(rows.size()) > kMaxPermanentSize) throw ValidationError("too many photons for the permanent");
    Eigen::MatrixXcd sub(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = u(rows[i], cols[j]);
    return permanent(sub) / std::sqrt(norm);
}

namespace {

struct Photon {
    int channel;
    int label;
};

// Photons of one input label assignment; the weight multiplies its amplitude.
struct LabelledInput {
    std::vector<Photon> photons;
    double weight;
};

template <class F>
void for_each_assignment(const SpectralPhotonInput& input, F&& visit) {
    const int ns = static_cast<int>(input.sources.size());
    std::vector<int> idx(ns, 0);
    for (const auto& s : input.sources)
        if (s.weights.empty()) return;
    LabelledInput li;
    while (true) {
        li.photons.clear();
        li.weight = 1.0;
        for (int k = 0; k < ns; ++k) {
            const auto& s = input.sources[k];
            li.photons.push_back({s.channel_a, idx[k]});
            li.photons.push_back({s.channel_b, idx[k]});
            li.weight *= std::sqrt(s.weights[idx[k]]);
        }
        for (const auto& p : input.singles) li.photons.push_back({p.channel, p.label});
        visit(li);
        int k = ns - 1;
        while (k >= 0 && ++idx[k] == static_cast<int>(input.sources[k].weights.size())) idx[k--] = 0;
        if (k < 0) break;
    }
}

// Coherent amplitudes of every spectrally resolved output configuration
// compatible with `slots` (output channel of each detected photon, sorted).
class PatternAccumulator {
public:
    PatternAccumulator(const Eigen::MatrixXcd& u, std::vector<int> slots) : u_(u), slots_(std::move(slots)) {
        key_.resize(slots_.size());
    }

    void add(const LabelledInput& in) {
        labels_.clear();
        for (const auto& p : in.photons) labels_.push_back(p.label);
        std::sort(labels_.begin(), labels_.end());
        labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
        const int nl = static_cast<int>(labels_.size());
        remaining_.assign(nl, 0);
        in_cols_.assign(nl, {});
        for (const auto& p : in.photons) {
            const int l = label_index(p.label);
            ++remaining_[l];
            in_cols_[l].push_back(p.channel);
        }
        input_ = &in;
        assign(0);
    }

    double probability() const {
        double p = 0.0;
        for (const auto& [key, a] : amps_) p += std::norm(a);
        return p;
    }

private:
    int label_index(int label) const {
        return static_cast<int>(std::lower_bound(labels_.begin(), labels_.end(), label) - labels_.begin());
    }

    void assign(std::size_t slot) {
        if (slot == slots_.size()) {
            amps_[key_] += input_->weight * config_amplitude();
            return;
        }
        // Within one output channel labels are non-decreasing so that every
        // configuration is produced once.
        const bool same_channel = slot > 0 && slots_[slot] == slots_[slot - 1];
        const int start = same_channel ? label_index(key_[slot - 1]) : 0;
        for (int l = start; l < static_cast<int>(labels_.size()); ++l) {
            if (remaining_[l] == 0) continue;
            --remaining_[l];
            key_[slot] = labels_[l];
            assign(slot + 1);
            ++remaining_[l];
        }
    }

    cd config_amplitude() const {
        cd amp = 1.0;
        std::array<cd, kMaxPermanentSize * kMaxPermanentSize> sub;
        for (std::size_t l = 0; l < labels_.size(); ++l) {
            const auto& cols = in_cols_[l];
            const int n = static_cast<int>(cols.size());
            int r = 0;
            double norm = 1.0;  // prod of m_o! over this label's output occupations
            int run = 0;
            int prev = -1;
            for (std::size_t s = 0; s < slots_.size(); ++s) {
                if (key_[s] != labels_[l]) continue;
                run = slots_[s] == prev ? run + 1 : 1;
                prev = slots_[s];
                norm *= run;
                for (int j = 0; j < n; ++j) sub[r + n * j] = u_(slots_[s], cols[j]);
                ++r;
            }
            amp *= detail::ryser(sub.data(), n) / std::sqrt(norm);
            if (amp == 0.0) return 0.0;
        }
        return amp;
    }

    const Eigen::MatrixXcd& u_;
    std::vector<int> slots_;
    std::vector<int> key_;
    std::vector<int> labels_;
    std::vector<int> remaining_;
    std::vector<std::vector<int>> in_cols_;
    const LabelledInput* input_ = nullptr;
    std::map<std::vector<int>, cd> amps_;
};

void validate_input(const LinearNetwork& network, const SpectralPhotonInput& input) {
    const int n = network.n_channels();
    auto check = [&](int c) {
        if (c < 0 || c >= n) throw ValidationError("input photon channel " + std::to_string(c) + " outside network");
    };
    for (const auto& s : input.sources) {
        check(s.channel_a);
        check(s.channel_b);
        for (double w : s.weights)
            if (!(w >= 0.0)) throw ValidationError("source weights must be nonnegative");
    }
    for (const auto& p : input.singles) {
        check(p.channel);
        if (p.label < 0) throw ValidationError("spectral labels must be nonnegative");
    }
    if (input.photon_count() > kMaxPermanentSize) throw ValidationError("too many photons for the permanent");
}

}  // namespace

double pattern_probability(const LinearNetwork& network, const SpectralPhotonInput& input,
                           const DetectionPattern& pattern) {
    validate_input(network, input);
    if (static_cast<int>(pattern.counts.size()) != network.n_channels())
        throw ValidationError("pattern needs one count per channel");
    if (std::any_of(pattern.counts.begin(), pattern.counts.end(), [](int c) { return c < 0; }))
        throw ValidationError("pattern counts must be nonnegative");
    if (pattern.total() != input.photon_count())
        throw ValidationError("pattern has " + std::to_string(pattern.total()) + " photons but the input has " +
                              std::to_string(input.photon_count()));
    std::vector<int> slots;
    for (int c = 0; c < network.n_channels(); ++c)
        for (int k = 0; k < pattern.counts[c]; ++k) slots.push_back(c);
    PatternAccumulator acc(network.unitary(), std::move(slots));
    for_each_assignment(input, [&](const LabelledInput& li) { acc.add(li); });
    return acc.probability();
}

std::vector<DetectionPattern> enumerate_patterns(int n_channels, int n_photons) {
    std::vector<DetectionPattern> out;
    std::vector<int> counts(n_channels, 0);
    std::function<void(int, int)> rec = [&](int c, int left) {
        if (c == n_channels - 1) {
            counts[c] = left;
            out.push_back({counts});
            return;
        }
        for (int k = left; k >= 0; --k) {
            counts[c] = k;
            rec(c + 1, left - k);
        }
    };
    if (n_channels > 0) rec(0, n_photons);
    return out;
}

double total_probability(const LinearNetwork& network, const SpectralPhotonInput& input) {
    double total = 0.0;
    for (const auto& p : enumerate_patterns(network.n_channels(), input.photon_count()))
        total += pattern_probability(network, input, p);
    return total;
}

FockState FockState::basis(const Occupation& occ) {
    FockState s(static_cast<int>(occ.size()));
    s.add(occ, 1.0);
    return s;
}

cd FockState::amplitude(const Occupation& occ) const {
    const auto it = amp_.find(occ);
    return it == amp_.end() ? cd(0.0) : it->second;
}

void FockState::add(const Occupation& occ, cd a) {
    if (static_cast<int>(occ.size()) != n_) throw ValidationError("occupation size does not match the state");
    amp_[occ] += a;
}

double FockState::norm_squared() const {
    double s = 0.0;
    for (const auto& [occ, a] : amp_) s += std::norm(a);
    return s;
}

FockState FockState::evolve(const Eigen::MatrixXcd& u) const {
    if (u.rows() != n_ || u.cols() != n_) throw ValidationError("unitary size does not match the state");
    FockState out(n_);
    for (const auto& [occ, a] : amp_) {
        // Expand prod_c (sum_o U(o, c) b_o^dag)^{n_c} as a polynomial in the
        // output creation operators, keyed by exponents.
        std::map<Occupation, cd> poly{{Occupation(n_, 0), 1.0}};
        double in_norm = 1.0;
        for (int c = 0; c < n_; ++c) {
            in_norm *= factorial(occ[c]);
            for (int k = 0; k < occ[c]; ++k) {
                std::map<Occupation, cd> next;
                for (const auto& [mono, coeff] : poly)
                    for (int o = 0; o < n_; ++o) {
                        if (u(o, c) == 0.0) continue;
                        Occupation m = mono;
                        ++m[o];
                        next[m] += coeff * u(o, c);
                    }
                poly.swap(next);
            }
        }
        for (const auto& [mono, coeff] : poly) {
            double out_norm = 1.0;
            for (int o = 0; o < n_; ++o) out_norm *= factorial(mono[o]);
            out.add(mono, a * coeff * std::sqrt(out_norm / in_norm));
        }
    }
    return out;
}

FockState FockState::with_number_phase(int channel, int n, double phi) const {
    if (channel < 0 || channel >= n_) throw ValidationError("channel outside the state");
    FockState out(n_);
    for (const auto& [occ, a] : amp_) out.add(occ, occ[channel] == n ? a * std::polar(1.0, phi) : a);
    return out;
}

}  // namespace biphoton
