#pragma once

// Refractive indices, wavevectors and phase-matching solutions for uniaxial
// nonlinear crystals.
//
// Angular frequencies are in rad/s, wavevectors in rad/m and group slopes
// dk/domega in s/m throughout.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biphoton/units.hpp"

namespace biphoton {

/// One principal axis of a Sellmeier fit:
///   n^2 = a - d*lam^2 + sum_k B_k / (lam^2 - C_k),  lam in micrometres.
struct SellmeierAxis {
    double a = 0.0;
    double d = 0.0;
    std::vector<std::pair<double, double>> poles;  // (B_k, C_k), um^2

    double n_squared(double lambda_um) const;
    double dn_squared_dlambda(double lambda_um) const;  // per micrometre
};

struct ValidityRange {
    double lo_um = 0.0;
    double hi_um = 0.0;

    bool contains(double lambda_um) const { return lambda_um >= lo_um && lambda_um <= hi_um; }
};

struct Material {
    std::string name;
    SellmeierAxis ordinary;
    SellmeierAxis extraordinary;
    ValidityRange range;

    /// True when n_e < n_o in the middle of the validity range (BBO, KDP).
    bool negative_uniaxial() const;
};

enum class Axis { ordinary, extraordinary };

/// Polarization of a wave relative to the crystal: ordinary, or extraordinary
/// propagating at `theta` from the optic axis (index ellipsoid).
struct Ray {
    Axis axis = Axis::ordinary;
    Angle theta;

    static Ray ordinary() { return {Axis::ordinary, Angle{}}; }
    static Ray extraordinary(Angle theta) { return {Axis::extraordinary, theta}; }
};

/// Immutable collection of materials parsed from the key-value materials format.
class MaterialDatabase {
public:
    /// Materials compiled into the library (BBO, KTP, KDP).
    static const MaterialDatabase& builtin();

    static MaterialDatabase parse(std::string_view text);
    static MaterialDatabase load(const std::filesystem::path& path);

    const Material& get(std::string_view name) const;
    bool contains(std::string_view name) const;
    std::vector<std::string> names() const;

private:
    std::vector<Material> materials_;
};

/// Shorthand for MaterialDatabase::builtin().get(name).
const Material& builtin_material(std::string_view name);

struct WaveProps {
    double omega = 0.0;    // rad/s
    double k = 0.0;        // rad/m
    double k_prime = 0.0;  // s/m
};

enum class PdcType { type_I_eoo, type_II_eoe };

double refractive_index(const Material& material, Length wavelength, Ray ray);

/// dn/dlambda in 1/m.
double refractive_index_slope(const Material& material, Length wavelength, Ray ray);

WaveProps wave_props(const Material& material, Length wavelength, Ray ray);
WaveProps wave_props_at(const Material& material, double omega, Ray ray);

/// Internal emission angle theta (signal at +theta, idler at -theta) for
/// degenerate type-I PDC with the pump extraordinary at `cut_angle`:
/// k_p(2 omega0) = 2 k(omega0) cos(theta).
Angle degenerate_noncollinear_angle(const Material& material, Length pump_wavelength, Angle cut_angle);

/// Inverse of degenerate_noncollinear_angle, solved on the index ellipsoid.
Angle cut_angle_for_emission(const Material& material, Length pump_wavelength, Angle theta);

/// Collinear type-II cut angle at degeneracy (signal o, idler e; the pump
/// takes the fast polarization of the crystal).
Angle collinear_type2_cut_angle(const Material& material, Length degenerate_wavelength);

/// Rays used for degenerate collinear type-II PDC at the given cut angle.
struct TypeIIRays {
    Ray pump;
    Ray signal;
    Ray idler;
};
TypeIIRays type2_rays(const Material& material, Angle cut_angle);

/// Degenerate wavelength at which collinear type-II PDC is symmetrically
/// group-velocity matched: k_p'(2 omega0) = (k_o'(omega0) + k_e'(omega0)) / 2.
Length gvm_wavelength(const Material& material);

/// -(k_p' - k_s') / (k_p' - k_i') for collinear type-II PDC at degeneracy
/// (signal ordinary, idler extraordinary).
double typeII_contour_slope(const Material& material, Length degenerate_wavelength);

}  // namespace biphoton
