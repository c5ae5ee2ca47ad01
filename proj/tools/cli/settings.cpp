#include "settings.hpp"

#include <map>

#include "sources.hpp"

namespace biphoton::cli {

nlohmann::json Settings::to_json() const {
    nlohmann::json j{{"command", command},
                     {"seed", seed},
                     {"materials", materials.empty() ? std::string("builtin") : materials}};
    const bool source_cmd = command == "jsa" || command == "schmidt" || command == "homi" || command == "bell" ||
                            command == "polcorr";
    if (source_cmd) {
        j.update({{"source", source}, {"sigma", sigma}, {"sigma-f", sigma_f}, {"cut", cut}, {"span", span},
                  {"points", points}});
    }
    if (source_cmd || command == "design") {
        j.update({{"material", material}, {"L", length}, {"pump", pump}, {"pump-bw", pump_bw}, {"theta", theta},
                  {"w0", w0}});
    }
    if (!operation.empty()) j["operation"] = operation;
    if (command == "schmidt") j["modes"] = modes;
    if (command == "bell" || command == "polcorr") j["pairing"] = pairing;
    if (command == "bell") j["random-tau"] = random_tau;
    if (command == "nsgate") {
        j["r"] = r ? jnum(*r) : nlohmann::json("default");
        j["s"] = s ? jnum(*s) : nlohmann::json("default");
        j["optimize"] = optimize;
        j["grid"] = grid;
        j["phase"] = jnum(phase);
    }
    if (command == "economy") j["csv"] = csv.empty() ? std::string("builtin:table1.csv") : csv;
    if (command == "reproduce") {
        j["points"] = points;
        j["n-modes"] = n_modes;
    }
    return j;
}

const MaterialDatabase& material_database(const Settings& s) {
    if (s.materials.empty()) return MaterialDatabase::builtin();
    static std::map<std::string, MaterialDatabase> loaded;
    auto it = loaded.find(s.materials);
    if (it == loaded.end()) it = loaded.emplace(s.materials, MaterialDatabase::load(s.materials)).first;
    return it->second;
}

}  // namespace biphoton::cli
