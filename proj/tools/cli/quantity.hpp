#pragma once

// Unit-suffixed command-line quantities, converted to SI at the boundary.

#include <string>
#include <string_view>

#include <biphoton/units.hpp>

namespace biphoton::cli {

/// "1mm", "287um", "400nm".
Length parse_length(std::string_view text);

/// "3deg", "0.0524rad".
Angle parse_angle(std::string_view text);

/// Bandwidth as written: "10nm_fwhm" or "4e13rad_s"; "inf" means none.
struct Bandwidth {
    double value = 0.0;
    enum class Unit { nm_fwhm, rad_s } unit = Unit::rad_s;
    bool infinite = false;

    /// Width sigma (rad/s) of exp(-x^2/sigma^2); nm_fwhm needs the centre wavelength.
    double sigma(Length center) const;
};

Bandwidth parse_bandwidth(std::string_view text);

}  // namespace biphoton::cli
