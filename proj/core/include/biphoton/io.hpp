#pragma once

// File formats: JSA CSV with a JSON sidecar, Schmidt decomposition JSON,
// network element lists, and canonical JSON formatting.

#include <filesystem>
#include <string>
#include <string_view>

#include "biphoton/focksim.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/spectra.hpp"

namespace biphoton {

/// `# omega0_rad_s=...`, `# n_s=... n_i=...`, then `nu_s,nu_i,re,im` rows
/// (signal index outer).
std::string jsa_to_csv(const JointSpectralAmplitude& jsa);
JointSpectralAmplitude jsa_from_csv(std::string_view text);

/// Grid and normalization fields describing a JSA.
std::string jsa_metadata_json(const JointSpectralAmplitude& jsa);

/// Writes `<stem>.csv` and `<stem>.json` into `dir`.
void save_jsa(const JointSpectralAmplitude& jsa, const std::filesystem::path& dir, const std::string& stem);
JointSpectralAmplitude load_jsa_csv(const std::filesystem::path& csv);

/// {"eigenvalues": [...], "K": ..., "truncated_mass": ..., "n_modes": ...}
std::string decomposition_json(const SchmidtDecomposition& d);

/// `nu,re_psi0,im_psi0,re_phi0,im_phi0,...` for the first n_modes pairs.
std::string modes_csv(const SchmidtDecomposition& d, int n_modes);

/// [{"type": "bs", "channels": [i, j], "r": ...}, {"type": "phase", "channel": i, "phi": ...}]
std::string network_to_json(const LinearNetwork& network);

/// Channel count is the larger of `min_channels` and the highest channel
/// referenced plus one.
LinearNetwork network_from_json(std::string_view text, int min_channels = 0);

/// Re-emits JSON with sorted keys, two-space indentation and every
/// non-integer number printed with 17 significant digits.
std::string canonical_json(std::string_view json_text);

/// printf("%.17g").
std::string format_double(double v);

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace biphoton
