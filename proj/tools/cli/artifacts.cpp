#include "artifacts.hpp"

#include <biphoton/io.hpp>

namespace biphoton::cli {

Artifacts::Artifacts(std::filesystem::path dir, nlohmann::json config)
    : dir_(std::move(dir)), config_(std::move(config)) {}

void Artifacts::json(const std::string& name, nlohmann::json body) {
    body["config"] = config_;
    const auto path = dir_ / name;
    write_text_file(path, canonical_json(body.dump()));
    written_.push_back(path);
}

void Artifacts::csv(const std::string& name, std::string_view text) {
    const auto path = dir_ / name;
    std::string content = "# config=" + config_.dump() + "\n";
    content += text;
    write_text_file(path, content);
    written_.push_back(path);
}

}  // namespace biphoton::cli
