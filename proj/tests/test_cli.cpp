#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include <biphoton/io.hpp>

#include "cli/cli.hpp"

namespace fs = std::filesystem;
using biphoton::cli::run;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh(const std::string& name) {
    const fs::path p = fs::path(BIPHOTON_TEST_TMP) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(biphoton::read_text_file(p)); }

}  // namespace

TEST_CASE("design factorable reports the waist") {
    const fs::path dir = fresh("design");
    const Result r = invoke({"--out", dir.string(), "design", "factorable", "--material", "BBO", "--L", "1mm",
                             "--pump", "400nm", "--theta", "3deg"});
    REQUIRE(r.code == 0);
    const auto j = read_json(dir / "design_factorable.json");
    CHECK(j["outputs"]["w0"]["value"].get<double>() * 1e6 == doctest::Approx(287.0).epsilon(5.0 / 287.0));
    CHECK(j["config"]["theta"] == "3deg");
    CHECK(r.out.find("w0") != std::string::npos);
}

TEST_CASE("exit codes") {
    const fs::path dir = fresh("codes");
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"--out", dir.string(), "jsa", "--L", "1furlong"}).code == 2);
    CHECK(invoke({"--out", dir.string(), "jsa", "--source", "type1", "--cut", "10deg"}).code == 3);
    CHECK(invoke({"--out", dir.string(), "design", "regime"}).code == 2);
    const Result r = invoke({"--out", dir.string(), "schmidt", "--material", "KDP", "--source", "type2", "--pump",
                             "900nm"});
    CHECK(r.code == 2);
    const auto err = nlohmann::json::parse(r.err);
    CHECK(err["error"]["kind"] == "validation");
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("identical runs produce identical artifacts") {
    const fs::path a = fresh("det_a"), b = fresh("det_b");
    for (const fs::path& d : {a, b})
        REQUIRE(invoke({"--out", d.string(), "--seed", "5", "bell", "--points", "48", "--source", "type2"}).code == 0);
    CHECK(biphoton::read_text_file(a / "bell.json") == biphoton::read_text_file(b / "bell.json"));
    CHECK(biphoton::read_text_file(a / "bell.csv") == biphoton::read_text_file(b / "bell.csv"));
}

TEST_CASE("config file merges under explicit flags and rejects unknown keys") {
    const fs::path dir = fresh("config");
    biphoton::write_text_file(dir / "good.json", R"({"sigma": "2e13rad_s", "points": 64})");
    biphoton::write_text_file(dir / "bad.json", R"({"sigmaa": "2e13rad_s"})");
    REQUIRE(invoke({"--out", dir.string(), "--config", (dir / "good.json").string(), "jsa", "--points", "32"}).code ==
            0);
    const auto j = read_json(dir / "jsa.json");
    CHECK(j["config"]["points"] == 32);
    CHECK(j["config"]["sigma"] == "2e13rad_s");
    CHECK(j["grid_s"]["n_points"] == 32);

    const Result bad = invoke({"--out", dir.string(), "--config", (dir / "bad.json").string(), "jsa"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("sigmaa") != std::string::npos);
}

TEST_CASE("economy flags the second table row") {
    const fs::path dir = fresh("economy");
    REQUIRE(invoke({"--out", dir.string(), "economy"}).code == 0);
    const auto j = read_json(dir / "economy.json");
    REQUIRE(j["records"].size() == 3);
    CHECK(j["records"][0]["R"].get<double>() == doctest::Approx(6.5e7).epsilon(0.02));
    CHECK(j["records"][1]["discrepancy"] == true);
    CHECK(j["records"][2]["R"].get<double>() == doctest::Approx(3.3e10).epsilon(0.02));
}

TEST_CASE("reproduce fig5 writes four surfaces with the config embedded") {
    const fs::path dir = fresh("fig5");
    REQUIRE(invoke({"--out", dir.string(), "reproduce", "fig5", "--points", "64"}).code == 0);
    for (const char* name : {"fig5_longitudinal.csv", "fig5_transverse.csv", "fig5_pump.csv", "fig5_product.csv"}) {
        const std::string text = biphoton::read_text_file(dir / name);
        CHECK(text.rfind("# config=", 0) == 0);
        CHECK_NOTHROW(biphoton::jsa_from_csv(text));
    }
    CHECK(read_json(dir / "fig5.json")["K"].get<double>() < 1.05);
}

TEST_CASE("nsgate and fig9") {
    const fs::path dir = fresh("ns");
    REQUIRE(invoke({"--out", dir.string(), "nsgate"}).code == 0);
    const auto j = read_json(dir / "nsgate.json");
    CHECK(j["success"].get<double>() == doctest::Approx(0.25));
    CHECK(j["topology"] == "ralph3");
    REQUIRE(invoke({"--out", dir.string(), "reproduce", "fig9"}).code == 0);
    const std::string csv = biphoton::read_text_file(dir / "fig9.csv");
    CHECK(csv.find("K,rate,trunc_mass\n") != std::string::npos);
}
