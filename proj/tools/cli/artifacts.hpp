#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace biphoton::cli {

/// Writes the files of one command, each stamped with the resolved config.
class Artifacts {
public:
    Artifacts(std::filesystem::path dir, nlohmann::json config);

    nlohmann::json& config() { return config_; }

    /// `body` plus a "config" key, canonically formatted.
    void json(const std::string& name, nlohmann::json body);
    /// `# config=<compact json>` followed by `text`.
    void csv(const std::string& name, std::string_view text);

    const std::vector<std::filesystem::path>& written() const { return written_; }

private:
    std::filesystem::path dir_;
    nlohmann::json config_;
    std::vector<std::filesystem::path> written_;
};

}  // namespace biphoton::cli
