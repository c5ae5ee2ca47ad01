#pragma once

#include <compare>
#include <numbers>

namespace biphoton {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// A length stored in metres. Construct through the named factories so the
/// unit is always visible at the call site.
class Length {
public:
    constexpr Length() = default;

    static constexpr Length meters(double v) { return Length(v); }
    static constexpr Length millimeters(double v) { return Length(v * 1e-3); }
    static constexpr Length micrometers(double v) { return Length(v * 1e-6); }
    static constexpr Length nanometers(double v) { return Length(v * 1e-9); }

    constexpr double m() const { return m_; }
    constexpr double mm() const { return m_ * 1e3; }
    constexpr double um() const { return m_ * 1e6; }
    constexpr double nm() const { return m_ * 1e9; }

    constexpr Length operator*(double k) const { return Length(m_ * k); }
    constexpr Length operator/(double k) const { return Length(m_ / k); }
    constexpr double operator/(Length other) const { return m_ / other.m_; }
    constexpr auto operator<=>(const Length&) const = default;

private:
    constexpr explicit Length(double m) : m_(m) {}
    double m_ = 0.0;
};

/// A plane angle stored in radians.
class Angle {
public:
    constexpr Angle() = default;

    static constexpr Angle radians(double v) { return Angle(v); }
    static constexpr Angle degrees(double v) { return Angle(v * std::numbers::pi / 180.0); }

    constexpr double rad() const { return rad_; }
    constexpr double deg() const { return rad_ * 180.0 / std::numbers::pi; }

    constexpr Angle operator-() const { return Angle(-rad_); }
    constexpr auto operator<=>(const Angle&) const = default;

private:
    constexpr explicit Angle(double r) : rad_(r) {}
    double rad_ = 0.0;
};

/// Angular frequency (rad/s) of light with the given vacuum wavelength.
double angular_frequency(Length wavelength);

/// Vacuum wavelength of light with the given angular frequency (rad/s).
Length vacuum_wavelength(double omega);

/// Converts a FWHM wavelength bandwidth into the width sigma of an amplitude
/// envelope exp(-x^2/sigma^2) whose intensity has that FWHM. Returns rad/s.
double sigma_from_fwhm(Length fwhm, Length center);

}  // namespace biphoton
