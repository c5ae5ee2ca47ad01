#include "quantity.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include <biphoton/error.hpp>

namespace biphoton::cli {

namespace {

// Splits "12.5um" into 12.5 and "um".
std::pair<double, std::string_view> split(std::string_view text, const char* what) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || !std::isfinite(v))
        throw ValidationError(std::string("cannot read ") + what + " '" + std::string(text) + "'");
    return {v, std::string_view(ptr, end - ptr)};
}

[[noreturn]] void bad_unit(std::string_view text, const char* what, const char* allowed) {
    throw ValidationError(std::string(what) + " '" + std::string(text) + "' needs a unit (" + allowed + ")");
}

}  // namespace

Length parse_length(std::string_view text) {
    const auto [v, unit] = split(text, "length");
    if (unit == "mm") return Length::millimeters(v);
    if (unit == "um") return Length::micrometers(v);
    if (unit == "nm") return Length::nanometers(v);
    bad_unit(text, "length", "mm, um, nm");
}

Angle parse_angle(std::string_view text) {
    const auto [v, unit] = split(text, "angle");
    if (unit == "deg") return Angle::degrees(v);
    if (unit == "rad") return Angle::radians(v);
    bad_unit(text, "angle", "deg, rad");
}

Bandwidth parse_bandwidth(std::string_view text) {
    if (text == "inf") return {std::numeric_limits<double>::infinity(), Bandwidth::Unit::rad_s, true};
    const auto [v, unit] = split(text, "bandwidth");
    if (!(v > 0.0)) throw ValidationError("bandwidth '" + std::string(text) + "' must be positive");
    if (unit == "nm_fwhm") return {v, Bandwidth::Unit::nm_fwhm, false};
    if (unit == "rad_s") return {v, Bandwidth::Unit::rad_s, false};
    bad_unit(text, "bandwidth", "nm_fwhm, rad_s");
}

double Bandwidth::sigma(Length center) const {
    if (infinite) return std::numeric_limits<double>::infinity();
    if (unit == Unit::rad_s) return value;
    return sigma_from_fwhm(Length::nanometers(value), center);
}

}  // namespace biphoton::cli
