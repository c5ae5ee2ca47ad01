#include "cli.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include <biphoton/error.hpp>
#include <biphoton/io.hpp>

#include "commands.hpp"
#include "sources.hpp"

namespace biphoton::cli {

namespace {

using Handler = void (*)(const Settings&, Artifacts&, std::ostream&);

struct Command {
    CLI::App* app;
    Handler handler;
};

void add_source_options(CLI::App* sub, Settings& s) {
    sub->add_option("--source", s.source, "model | type1 | type2 | gaussian-beam")
        ->check(CLI::IsMember({"model", "type1", "type2", "gaussian-beam"}))
        ->capture_default_str();
    sub->add_option("--sigma", s.sigma, "model: combined width (rad_s or nm_fwhm)")->capture_default_str();
    sub->add_option("--sigma-f", s.sigma_f, "model: filter width, or inf")->capture_default_str();
    sub->add_option("--material", s.material, "crystal name")->capture_default_str();
    sub->add_option("--L", s.length, "crystal length (mm|um|nm)")->capture_default_str();
    sub->add_option("--pump", s.pump, "pump wavelength (mm|um|nm)")->capture_default_str();
    sub->add_option("--pump-bw", s.pump_bw, "pump bandwidth (nm_fwhm|rad_s)")->capture_default_str();
    sub->add_option("--cut", s.cut, "cut angle (deg|rad); solved when omitted");
    sub->add_option("--theta", s.theta, "internal emission angle (deg|rad)");
    sub->add_option("--w0", s.w0, "gaussian-beam: waist; factorable waist when omitted");
    sub->add_option("--span", s.span, "grid half span (rad_s|nm_fwhm); automatic when omitted");
    sub->add_option("--points", s.points, "grid points per axis")->check(CLI::Range(8, 2048))->capture_default_str();
}

std::map<std::string, Command> build(CLI::App& app, Settings& s) {
    app.description("Biphoton spectral engineering and multiphoton interference toolkit");
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--out", s.out, "output directory")->capture_default_str();
    app.add_option("--materials", s.materials, "materials file replacing the builtin set");
    app.add_option("--config", s.config, "JSON config; explicit flags take precedence");
    app.add_option("--seed", s.seed, "seed for randomized checks")->capture_default_str();

    std::map<std::string, Command> cmds;
    auto source_cmd = [&](const char* name, const char* help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_source_options(sub, s);
        cmds[name] = {sub, h};
        return sub;
    };
    source_cmd("jsa", "sample a joint spectral amplitude (jsa.csv, jsa.json)", cmd_jsa);
    source_cmd("schmidt", "Schmidt decomposition (schmidt.json, modes.csv)", cmd_schmidt)
        ->add_option("--modes", s.modes, "write the first N mode pairs to modes.csv");
    source_cmd("homi", "two-crystal HOM dip (homi_dip.csv, homi.json)", cmd_homi);
    auto* bell = source_cmd("bell", "Bell-state analyzer rates (bell.csv, bell.json)", cmd_bell);
    bell->add_option("--pairing", s.pairing, "g = f^T (transpose) or g = f (same)")->capture_default_str();
    bell->add_option("--random-tau", s.random_tau, "random delays for the Rc+ + Rc- = 1 check")
        ->capture_default_str();
    source_cmd("polcorr", "polarization fringes (polcorr.csv, polcorr.json)", cmd_polcorr)
        ->add_option("--pairing", s.pairing, "g = f^T (transpose) or g = f (same)")
        ->capture_default_str();

    CLI::App* design = app.add_subcommand("design", "source design rules (design_<op>.json)");
    design->add_option("operation", s.operation, "factorable | threshold | correlated | regime")
        ->required()
        ->check(CLI::IsMember({"factorable", "threshold", "correlated", "regime"}));
    design->add_option("--material", s.material, "crystal name")->capture_default_str();
    design->add_option("--L", s.length, "crystal length")->capture_default_str();
    design->add_option("--pump", s.pump, "pump wavelength")->capture_default_str();
    design->add_option("--pump-bw", s.pump_bw, "pump bandwidth")->capture_default_str();
    design->add_option("--theta", s.theta, "internal emission angle (default 3deg)");
    design->add_option("--w0", s.w0, "beam waist");
    cmds["design"] = {design, cmd_design};

    CLI::App* ns = app.add_subcommand("nsgate", "NS gate map and HOM Mach-Zehnder (nsgate.json)");
    ns->add_option("--r", s.r, "outer beamsplitter reflectivity");
    ns->add_option("--s", s.s, "signal-ancilla beamsplitter reflectivity");
    ns->add_flag("--optimize", s.optimize, "search (r, s) for the sign flip");
    ns->add_option("--grid", s.grid, "optimizer scan size per axis")->capture_default_str();
    ns->add_option("--phase", s.phase, "HOM Mach-Zehnder phase, rad")->capture_default_str();
    cmds["nsgate"] = {ns, cmd_nsgate};

    CLI::App* eco = app.add_subcommand("economy", "economy figure of merit (economy.csv, economy.json)");
    eco->add_option("--csv", s.csv, "label,L_mm,P_W,Rs_Hz,ratio[,R_printed]; shipped table when omitted");
    cmds["economy"] = {eco, cmd_economy};

    CLI::App* rep = app.add_subcommand("reproduce", "emit the data behind a figure");
    rep->add_option("operation", s.operation, "fig1 | fig3 | fig5 | fig7 | fig9")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig3", "fig5", "fig7", "fig9"}));
    rep->add_option("--points", s.points, "grid points per axis")->check(CLI::Range(8, 2048))->capture_default_str();
    rep->add_option("--n-modes", s.n_modes, "fig9 Schmidt modes per source (0: automatic)")->capture_default_str();
    cmds["reproduce"] = {rep, cmd_reproduce};
    return cmds;
}

void parse(CLI::App& app, std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());
    app.parse(args);
}

std::string config_value(const std::string& key, const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number_float()) return format_double(v.get<double>());
    throw ValidationError("config key '" + key + "' must be a string or a number");
}

// Command-line arguments for config entries the user did not pass explicitly.
std::vector<std::string> config_args(CLI::App& app, CLI::App& sub, const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config " + path + ": " + e.what());
    }
    if (!j.is_object()) throw ValidationError("config " + path + " must hold a JSON object");
    std::vector<std::string> extra;
    for (const auto& [key, value] : j.items()) {
        const std::string flag = "--" + key;
        CLI::Option* opt = sub.get_option_no_throw(flag);
        if (opt == nullptr && key != "config") opt = app.get_option_no_throw(flag);
        if (opt == nullptr) throw ValidationError("unknown config key '" + key + "' for " + sub.get_name());
        if (opt->count() > 0) continue;
        if (value.is_boolean()) {
            if (opt->get_expected_min() != 0) throw ValidationError("config key '" + key + "' is not a flag");
            if (value.get<bool>()) extra.push_back(flag);
            continue;
        }
        extra.push_back(flag);
        extra.push_back(config_value(key, value));
    }
    return extra;
}

void write_error(std::ostream& err, const char* kind, const std::string& message) {
    err << nlohmann::json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app("biphoton", "biphoton");
    auto cmds = build(app, s);
    try {
        parse(app, args);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    }

    auto selected = [&]() -> std::pair<std::string, Command> {
        for (const auto& [name, c] : cmds)
            if (c.app->parsed()) return {name, c};
        throw ValidationError("no subcommand given");
    };
    auto [name, cmd] = selected();

    if (!s.config.empty()) {
        const std::vector<std::string> extra = config_args(app, *cmd.app, s.config);
        if (!extra.empty()) {
            std::vector<std::string> merged = args;
            merged.insert(merged.end(), extra.begin(), extra.end());
            return dispatch(merged, out, err);
        }
    }

    s.command = name;
    validate_quantities(s);
    Artifacts artifacts(s.out, s.to_json());
    cmd.handler(s, artifacts, out);
    for (const auto& p : artifacts.written()) out << "wrote " << p.string() << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const CLI::ParseError& e) {
        write_error(err, "validation", e.what());
        return kExitValidation;
    } catch (const ValidationError& e) {
        write_error(err, "validation", e.what());
        return kExitValidation;
    } catch (const RegimeError& e) {
        write_error(err, "regime", e.what());
        return kExitRegime;
    } catch (const std::exception& e) {
        write_error(err, "internal", e.what());
        return kExitFailure;
    }
}

}  // namespace biphoton::cli
