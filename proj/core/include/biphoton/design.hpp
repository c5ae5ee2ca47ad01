#pragma once

// Source-engineering rules for degenerate noncollinear type-I PDC pumped by a
// focused Gaussian beam, and the economy figure of merit R = Rs / (L P).

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biphoton/dispersion.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

/// Factor by which a quantity must exceed its bound to count as "much
/// greater than" in the regime checks below.
inline constexpr double kRegimeMargin = 10.0;

/// Group slopes entering the design rules: kp' for the extraordinary pump at
/// the cut angle that phase-matches emission at theta, k' for the ordinary
/// signal/idler at the degenerate frequency.
struct DesignSlopes {
    Angle cut_angle;
    double kp_prime = 0.0;  // s/m
    double k_prime = 0.0;   // s/m
};

DesignSlopes design_slopes(const Material& material, Length pump_wavelength, Angle theta);

/// w0 = L sqrt(gamma) (kp' - k' cos(theta)) / (k' sin(theta)).
Length factorable_waist(const Material& material, Length pump_wavelength, Length length, Angle theta);

/// sigma_p,min = sqrt(2) / (gamma L (kp' - k' cos(theta))), rad/s.
double pump_bandwidth_threshold(const Material& material, Length pump_wavelength, Length length, Angle theta);

struct RegimeCheck {
    double ratio = 0.0;
    bool flag = false;  // ratio >= kRegimeMargin
};

/// (w0 / L) / (sqrt(gamma) (kp' - k' cos(theta)) / (k' sin(theta))): how far
/// the waist exceeds the factorable one. Flagged frequency-correlated at >= 10.
RegimeCheck freq_correlated_margin(const Material& material, Length pump_wavelength, Length length, Angle theta,
                                   Length w0);

/// (w0 / L) / (sqrt(gamma) sin^2(theta)). Flagged valid at >= 10.
RegimeCheck validate_waist_regime(Length w0, Length length, Angle theta);

struct DesignValue {
    std::string name;
    double value = 0.0;
    std::string unit;
};

struct DesignFlag {
    std::string name;
    double margin = 0.0;
    bool flag = false;
};

struct DesignReport {
    std::string operation;
    std::vector<DesignValue> inputs;
    std::vector<DesignValue> outputs;
    std::vector<DesignFlag> flags;
};

struct DesignInputs {
    const Material* material = nullptr;
    Length pump_wavelength;
    Length length;
    Angle theta;
    std::optional<Length> w0;
    std::optional<double> sigma_p;  // rad/s
};

DesignReport factorable_report(const DesignInputs& in);
DesignReport threshold_report(const DesignInputs& in);
DesignReport correlated_report(const DesignInputs& in);
DesignReport regime_report(const DesignInputs& in);

struct EconomyInputs {
    std::string label;
    double length_mm = 0.0;
    double power_w = 0.0;
    double singles_hz = 0.0;
    double coincidence_ratio = 0.0;      // Rc / Rs, fraction
    std::optional<double> printed_r;     // published R, if known
};

struct EconomyRecord {
    EconomyInputs inputs;
    double r = 0.0;                      // Hz / (mm W)
    std::optional<double> deviation;     // (r - printed) / printed
    bool discrepancy = false;            // |deviation| > 2%
};

inline constexpr double kEconomyTolerance = 0.02;

/// R = Rs / (L P) with L in mm, P in W, Rs in Hz.
EconomyRecord economy_figure(const EconomyInputs& in);

/// CSV rows `label,L_mm,P_W,Rs_Hz,ratio[,R_printed]`; a header row and
/// `#` comment lines are skipped.
std::vector<EconomyInputs> parse_economy_csv(std::string_view text);
std::vector<EconomyInputs> load_economy_csv(const std::filesystem::path& path);

}  // namespace biphoton
