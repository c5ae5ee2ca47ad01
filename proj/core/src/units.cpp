#include "biphoton/units.hpp"

#include <cmath>

#include "biphoton/error.hpp"

namespace biphoton {

double angular_frequency(Length wavelength) {
    if (!(wavelength.m() > 0.0)) throw ValidationError("wavelength must be positive");
    return 2.0 * std::numbers::pi * kSpeedOfLight / wavelength.m();
}

Length vacuum_wavelength(double omega) {
    if (!(omega > 0.0)) throw ValidationError("angular frequency must be positive");
    return Length::meters(2.0 * std::numbers::pi * kSpeedOfLight / omega);
}

double sigma_from_fwhm(Length fwhm, Length center) {
    if (!(fwhm.m() > 0.0) || !(center.m() > 0.0))
        throw ValidationError("bandwidth and center wavelength must be positive");
    const double delta_omega =
        2.0 * std::numbers::pi * kSpeedOfLight * fwhm.m() / (center.m() * center.m());
    return delta_omega / std::sqrt(2.0 * std::numbers::ln2);
}

}  // namespace biphoton
