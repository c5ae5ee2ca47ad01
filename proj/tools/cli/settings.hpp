#pragma once

// Options of one CLI invocation, kept as typed on the command line (units
// included) so they can be echoed into every artifact.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include <biphoton/dispersion.hpp>

namespace biphoton::cli {

struct Settings {
    std::string command;
    std::string operation;  // design / reproduce target

    std::filesystem::path out = ".";
    std::string materials;
    std::string config;
    std::uint64_t seed = 0;

    // Source description shared by jsa, schmidt, homi, bell and polcorr.
    std::string source = "model";
    std::string sigma = "4e13rad_s";
    std::string sigma_f = "4e13rad_s";
    std::string material = "BBO";
    std::string length = "1mm";
    std::string pump = "400nm";
    std::string pump_bw = "10nm_fwhm";
    std::string cut;
    std::string theta;
    std::string w0;
    std::string span;
    int points = 256;

    int modes = 0;
    std::string pairing = "transpose";
    int random_tau = 20;

    std::optional<double> r;
    std::optional<double> s;
    bool optimize = false;
    int grid = 200;
    double phase = 0.0;

    std::string csv;
    int n_modes = 0;

    /// Every option, as typed or defaulted.
    nlohmann::json to_json() const;
};

/// Material database selected by --materials (builtin when empty).
const MaterialDatabase& material_database(const Settings& s);

}  // namespace biphoton::cli
