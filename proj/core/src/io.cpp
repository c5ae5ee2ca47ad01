#include "biphoton/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "biphoton/error.hpp"

namespace biphoton {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void dump(const json& j, std::string& out, int indent) {
    const std::string pad(indent * 2, ' ');
    const std::string pad_in((indent + 1) * 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann objects iterate in key order
                if (!first) out += ",\n";
                first = false;
                out += pad_in + json(it.key()).dump() + ": ";
                dump(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) out += ",\n";
                out += pad_in;
                dump(j[k], out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += std::isnan(v) ? "null" : (v > 0 ? "\"inf\"" : "\"-inf\"");
                return;
            }
            out += format_double(v);
            return;
        }
        default:
            out += j.dump();
    }
}

json parse_json(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string(what) + ": invalid JSON: " + e.what());
    }
}

}  // namespace

std::string canonical_json(std::string_view json_text) {
    std::string out;
    dump(parse_json(json_text, "canonical_json"), out, 0);
    out += "\n";
    return out;
}

std::string jsa_to_csv(const JointSpectralAmplitude& jsa) {
    const auto& gs = jsa.grid_s();
    const auto& gi = jsa.grid_i();
    std::string out;
    out += "# omega0_rad_s=" + format_double(gs.omega0()) + "\n";
    out += "# n_s=" + std::to_string(gs.size()) + " n_i=" + std::to_string(gi.size()) + "\n";
    out += "nu_s,nu_i,re,im\n";
    for (int a = 0; a < gs.size(); ++a)
        for (int b = 0; b < gi.size(); ++b) {
            const auto v = jsa.values()(a, b);
            out += format_double(gs.detuning(a)) + "," + format_double(gi.detuning(b)) + "," +
                   format_double(v.real()) + "," + format_double(v.imag()) + "\n";
        }
    return out;
}

JointSpectralAmplitude jsa_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    double omega0 = -1.0;
    int ns = -1, ni = -1;
    std::vector<std::array<double, 4>> rows;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (std::sscanf(line.c_str(), "# omega0_rad_s=%lf", &omega0) == 1) continue;
            if (std::sscanf(line.c_str(), "# n_s=%d n_i=%d", &ns, &ni) == 2) continue;
            continue;
        }
        if (line.rfind("nu_s", 0) == 0) continue;
        std::array<double, 4> r{};
        char tail = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf%c", &r[0], &r[1], &r[2], &r[3], &tail) != 4)
            throw ValidationError("JSA CSV line " + std::to_string(line_no) + ": expected nu_s,nu_i,re,im");
        rows.push_back(r);
    }
    if (omega0 < 0.0 || ns < 2 || ni < 2) throw ValidationError("JSA CSV header lacks omega0_rad_s or n_s/n_i");
    if (static_cast<long>(rows.size()) != static_cast<long>(ns) * ni)
        throw ValidationError("JSA CSV has " + std::to_string(rows.size()) + " rows, expected n_s*n_i");
    const FrequencyGrid gs(omega0, -rows.front()[0], ns);
    const FrequencyGrid gi(omega0, -rows.front()[1], ni);
    Eigen::MatrixXcd m(ns, ni);
    for (int a = 0; a < ns; ++a)
        for (int b = 0; b < ni; ++b) {
            const auto& r = rows[static_cast<std::size_t>(a) * ni + b];
            m(a, b) = {r[2], r[3]};
        }
    return JointSpectralAmplitude(gs, gi, std::move(m));
}

std::string jsa_metadata_json(const JointSpectralAmplitude& jsa) {
    auto grid = [](const FrequencyGrid& g) {
        return json{{"omega0_rad_s", g.omega0()},
                    {"half_span_rad_s", g.half_span()},
                    {"n_points", g.size()},
                    {"spacing_rad_s", g.spacing()}};
    };
    const json j{{"grid_s", grid(jsa.grid_s())},
                 {"grid_i", grid(jsa.grid_i())},
                 {"norm_squared", jsa.norm_squared()},
                 {"normalized", jsa.is_normalized()},
                 {"boundary_ratio", jsa.boundary_ratio()},
                 {"boundary_leakage", jsa.boundary_leakage()}};
    return canonical_json(j.dump());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + path.string());
    f << text;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void save_jsa(const JointSpectralAmplitude& jsa, const std::filesystem::path& dir, const std::string& stem) {
    write_text_file(dir / (stem + ".csv"), jsa_to_csv(jsa));
    write_text_file(dir / (stem + ".json"), jsa_metadata_json(jsa));
}

JointSpectralAmplitude load_jsa_csv(const std::filesystem::path& csv) { return jsa_from_csv(read_text_file(csv)); }

std::string decomposition_json(const SchmidtDecomposition& d) {
    const json j{{"eigenvalues", d.eigenvalues},
                 {"K", d.K},
                 {"purity", d.purity()},
                 {"truncated_mass", d.truncated_mass},
                 {"n_modes", d.size()}};
    return canonical_json(j.dump());
}

std::string modes_csv(const SchmidtDecomposition& d, int n_modes) {
    const int m = std::min(n_modes, d.size());
    std::string out = "nu";
    for (int n = 0; n < m; ++n) {
        const std::string k = std::to_string(n);
        out += ",re_psi" + k + ",im_psi" + k + ",re_phi" + k + ",im_phi" + k;
    }
    out += "\n";
    const int rows = std::max(d.grid_s.size(), d.grid_i.size());
    for (int j = 0; j < rows; ++j) {
        // Signal and idler grids may differ; the nu column follows the signal grid.
        out += format_double(j < d.grid_s.size() ? d.grid_s.detuning(j) : d.grid_i.detuning(j));
        for (int n = 0; n < m; ++n) {
            const auto s = j < d.grid_s.size() ? d.signal_modes(j, n) : std::complex<double>{};
            const auto i = j < d.grid_i.size() ? d.idler_modes(j, n) : std::complex<double>{};
            out += "," + format_double(s.real()) + "," + format_double(s.imag()) + "," + format_double(i.real()) +
                   "," + format_double(i.imag());
        }
        out += "\n";
    }
    return out;
}

std::string network_to_json(const LinearNetwork& network) {
    json arr = json::array();
    for (const auto& e : network.elements()) {
        if (e.kind == NetworkElement::Kind::beamsplitter)
            arr.push_back({{"type", "bs"}, {"channels", {e.first, e.second}}, {"r", e.r}});
        else
            arr.push_back({{"type", "phase"}, {"channel", e.first}, {"phi", e.phi}});
    }
    return canonical_json(arr.dump());
}

LinearNetwork network_from_json(std::string_view text, int min_channels) {
    const json j = parse_json(text, "network");
    if (!j.is_array()) throw ValidationError("network: expected a JSON list of elements");
    std::vector<NetworkElement> elems;
    int max_channel = -1;
    auto channel = [&](const json& v) {
        if (!v.is_number_integer()) throw ValidationError("network: channel indices must be integers");
        const int c = v.get<int>();
        if (c < 0) throw ValidationError("network: negative channel index");
        max_channel = std::max(max_channel, c);
        return c;
    };
    auto number = [](const json& obj, const char* key) {
        if (!obj.contains(key) || !obj[key].is_number()) throw ValidationError(std::string("network: missing ") + key);
        return obj[key].get<double>();
    };
    for (const auto& el : j) {
        if (!el.is_object() || !el.contains("type") || !el["type"].is_string())
            throw ValidationError("network: element without a type");
        const std::string type = el["type"].get<std::string>();
        if (type == "bs") {
            for (const auto& [k, v] : el.items())
                if (k != "type" && k != "channels" && k != "r") throw ValidationError("network: unknown key '" + k + "'");
            if (!el.contains("channels") || !el["channels"].is_array() || el["channels"].size() != 2)
                throw ValidationError("network: bs needs channels [i, j]");
            elems.push_back({NetworkElement::Kind::beamsplitter, channel(el["channels"][0]), channel(el["channels"][1]),
                             number(el, "r"), 0.0});
        } else if (type == "phase") {
            for (const auto& [k, v] : el.items())
                if (k != "type" && k != "channel" && k != "phi")
                    throw ValidationError("network: unknown key '" + k + "'");
            if (!el.contains("channel")) throw ValidationError("network: phase needs a channel");
            elems.push_back({NetworkElement::Kind::phase, channel(el["channel"]), -1, 0.0, number(el, "phi")});
        } else {
            throw ValidationError("network: unknown element type '" + type + "'");
        }
    }
    return LinearNetwork::replay(std::max(min_channels, max_channel + 1), elems);
}

}  // namespace biphoton
