#pragma once

// Builds the joint spectral amplitude described by the source options.

#include <json.hpp>

#include <biphoton/spectra.hpp>

#include "settings.hpp"

namespace biphoton::cli {

struct BuiltSource {
    JointSpectralAmplitude jsa;
    nlohmann::json resolved;  // SI values actually used
    std::optional<GaussianSourceModel> model;
};

BuiltSource build_source(const Settings& s);

/// Parses every unit-bearing option that is set, so malformed values are
/// rejected whichever source or operation ends up using them.
void validate_quantities(const Settings& s);

/// Degenerate signal/idler wavelength: twice the pump wavelength.
Length degenerate_wavelength(const Settings& s);

/// Half span (rad/s) covering a Gaussian-beam amplitude out to four widths.
double auto_half_span(const GaussianBeamPhaseMatching& pm);

/// JSON value for a double; non-finite values become "inf"/"-inf"/"nan".
nlohmann::json jnum(double v);

}  // namespace biphoton::cli
