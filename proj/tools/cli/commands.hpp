#pragma once

#include <iosfwd>

#include "artifacts.hpp"
#include "settings.hpp"

namespace biphoton::cli {

void cmd_jsa(const Settings& s, Artifacts& a, std::ostream& out);
void cmd_schmidt(const Settings& s, Artifacts& a, std::ostream& out);
void cmd_homi(const Settings& s, Artifacts& a, std::ostream& out);
void cmd_bell(const Settings& s, Artifacts& a, std::ostream& out);
void cmd_polcorr(const Settings& s, Artifacts& a, std::ostream& out);
void cmd_design(const Settings& s, Artifacts& a, std::ostream& out);
void cmd_nsgate(const Settings& s, Artifacts& a, std::ostream& out);
void cmd_economy(const Settings& s, Artifacts& a, std::ostream& out);
void cmd_reproduce(const Settings& s, Artifacts& a, std::ostream& out);

/// Text of the shipped Table 1 economy CSV.
extern const char* const kTable1Csv;

}  // namespace biphoton::cli
