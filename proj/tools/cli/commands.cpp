#include "commands.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include <biphoton/design.hpp>
#include <biphoton/error.hpp>
#include <biphoton/interference.hpp>
#include <biphoton/io.hpp>
#include <biphoton/nsgate.hpp>
#include <biphoton/schmidt.hpp>

#include "quantity.hpp"
#include "sources.hpp"

namespace biphoton::cli {

using nlohmann::json;

namespace {

// Standard deviation of the signal marginal of |S|^2, rad/s.
double signal_spread(const JointSpectralAmplitude& jsa) {
    const Eigen::VectorXd w = jsa.values().cwiseAbs2().rowwise().sum();
    const Eigen::VectorXd nu = jsa.grid_s().detunings();
    const double total = w.sum();
    const double mean = w.dot(nu) / total;
    return std::sqrt(w.dot((nu.array() - mean).square().matrix()) / total);
}

std::vector<double> tau_grid_for(const BuiltSource& src) {
    if (src.model) return default_tau_grid(homi_dip_width(*src.model));
    return default_tau_grid(2.0 / signal_spread(src.jsa));
}

PolarizedPairState make_pair(const Settings& s, const JointSpectralAmplitude& f) {
    if (s.pairing == "transpose") return PolarizedPairState(f, f.transposed());
    if (s.pairing == "same") return PolarizedPairState(f, f);
    throw ValidationError("--pairing must be 'transpose' or 'same'");
}

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

void cmd_jsa(const Settings& s, Artifacts& a, std::ostream& out) {
    const BuiltSource src = build_source(s);
    a.config()["resolved"] = src.resolved;
    json meta = json::parse(jsa_metadata_json(src.jsa));
    meta["boundary_ratio"] = src.jsa.boundary_ratio();
    meta["boundary_leakage"] = src.jsa.boundary_leakage();
    meta["intensity_correlation"] = src.jsa.intensity_correlation();
    a.csv("jsa.csv", jsa_to_csv(src.jsa));
    a.json("jsa.json", meta);
    out << fmt::format("jsa: {}x{} grid, boundary ratio {:.3g}, correlation {:.4f}\n", src.jsa.grid_s().size(),
                       src.jsa.grid_i().size(), src.jsa.boundary_ratio(), src.jsa.intensity_correlation());
    if (src.jsa.boundary_leakage()) out << "warning: amplitude has not decayed at the grid edge; widen --span\n";
}

void cmd_schmidt(const Settings& s, Artifacts& a, std::ostream& out) {
    if (s.modes < 0) throw ValidationError("--modes must be non-negative");
    const BuiltSource src = build_source(s);
    a.config()["resolved"] = src.resolved;
    const SchmidtDecomposition d = schmidt_svd(src.jsa);
    json body = json::parse(decomposition_json(d));
    if (src.model) {
        const double mu = analytic_mu(*src.model);
        body["analytic"] = {{"mu", mu}, {"K", analytic_K(mu)}};
    }
    a.json("schmidt.json", body);
    if (s.modes > 0) a.csv("modes.csv", modes_csv(d, s.modes));
    out << fmt::format("schmidt: K = {:.10g}, purity = {:.10g}, {} modes kept\n", d.K, d.purity(), d.size());
}

void cmd_homi(const Settings& s, Artifacts& a, std::ostream& out) {
    const BuiltSource src = build_source(s);
    a.config()["resolved"] = src.resolved;
    const std::vector<double> tau = tau_grid_for(src);
    const DipCurve num = two_crystal_homi_numeric(src.jsa, tau);
    const double K = schmidt_svd(src.jsa).K;

    std::string text = src.model ? "tau_s,rate,rate_analytic\n" : "tau_s,rate\n";
    std::optional<DipCurve> ana;
    if (src.model) ana = homi_dip_analytic(*src.model, tau);
    for (std::size_t k = 0; k < tau.size(); ++k) {
        text += format_double(tau[k]) + "," + format_double(num.rate[k]);
        if (ana) text += "," + format_double(ana->rate[k] / ana->baseline);
        text += "\n";
    }
    json body{{"visibility", num.visibility}, {"K", K}, {"purity", 1.0 / K}};
    if (src.model) {
        body["analytic"] = {{"visibility", homi_visibility_analytic(*src.model)},
                            {"R0", homi_baseline_analytic(*src.model)},
                            {"dip_width_s", homi_dip_width(*src.model)}};
    }
    a.csv("homi_dip.csv", text);
    a.json("homi.json", body);
    out << fmt::format("homi: V = {:.10g}, 1/K = {:.10g}\n", num.visibility, 1.0 / K);
}

void cmd_bell(const Settings& s, Artifacts& a, std::ostream& out) {
    if (s.random_tau < 0) throw ValidationError("--random-tau must be non-negative");
    const BuiltSource src = build_source(s);
    a.config()["resolved"] = src.resolved;
    const PolarizedPairState pair = make_pair(s, src.jsa);
    const std::vector<double> tau = tau_grid_for(src);

    std::string text = "tau_s,rc_plus,rc_minus\n";
    for (double t : tau) {
        const BellRates r = bell_analyzer_rates(pair, t);
        text += format_double(t) + "," + format_double(r.plus) + "," + format_double(r.minus) + "\n";
    }
    std::mt19937_64 rng(s.seed);
    std::uniform_real_distribution<double> pick(tau.front(), tau.back());
    double worst = 0.0;
    for (int k = 0; k < s.random_tau; ++k) {
        const BellRates r = bell_analyzer_rates(pair, pick(rng));
        worst = std::max(worst, std::abs(r.plus + r.minus - 1.0));
    }
    const BellRates at0 = bell_analyzer_rates(pair, 0.0);
    a.csv("bell.csv", text);
    a.json("bell.json", json{{"rc_plus_0", at0.plus},
                             {"rc_minus_0", at0.minus},
                             {"bell_condition_residual", bell_condition_residual(pair)},
                             {"polcorr_condition_residual", polcorr_condition_residual(pair)},
                             {"max_sum_deviation_random_tau", worst}});
    out << fmt::format("bell: Rc+(0) = {:.6g}, Rc-(0) = {:.6g}\n", at0.plus, at0.minus);
}

void cmd_polcorr(const Settings& s, Artifacts& a, std::ostream& out) {
    const BuiltSource src = build_source(s);
    a.config()["resolved"] = src.resolved;
    const PolarizedPairState pair = make_pair(s, src.jsa);
    std::string text = "theta_a_deg,theta_b_deg,rate\n";
    for (int i = 0; i < 19; ++i) {
        for (int j = 0; j < 19; ++j) {
            const double ta = 10.0 * i, tb = 10.0 * j;
            const double rate = polarization_fringe(pair, ta * std::numbers::pi / 180.0, tb * std::numbers::pi / 180.0);
            text += fmt::format("{},{},{}\n", ta, tb, format_double(rate));
        }
    }
    const double v = fringe_visibility(pair, std::numbers::pi / 4.0);
    const double v_hwp = fringe_visibility(half_wave_plate_transform(pair), std::numbers::pi / 4.0);
    a.csv("polcorr.csv", text);
    a.json("polcorr.json", json{{"visibility_theta_b_45deg", v},
                                {"visibility_after_half_wave_plate", v_hwp},
                                {"bell_condition_residual", bell_condition_residual(pair)},
                                {"polcorr_condition_residual", polcorr_condition_residual(pair)}});
    out << fmt::format("polcorr: fringe visibility {:.6g} (after half-wave plate {:.6g})\n", v, v_hwp);
}

void cmd_design(const Settings& s, Artifacts& a, std::ostream& out) {
    DesignInputs in;
    in.material = &material_database(s).get(s.material);
    in.pump_wavelength = parse_length(s.pump);
    in.length = parse_length(s.length);
    in.theta = s.theta.empty() ? Angle::degrees(3.0) : parse_angle(s.theta);
    if (!s.w0.empty()) in.w0 = parse_length(s.w0);
    in.sigma_p = parse_bandwidth(s.pump_bw).sigma(in.pump_wavelength);

    DesignReport r;
    if (s.operation == "factorable") r = factorable_report(in);
    else if (s.operation == "threshold") r = threshold_report(in);
    else if (s.operation == "correlated") r = correlated_report(in);
    else if (s.operation == "regime") r = regime_report(in);
    else throw ValidationError("unknown design operation '" + s.operation + "'");

    auto values = [](const std::vector<DesignValue>& v) {
        json j = json::object();
        for (const auto& x : v) j[x.name] = {{"value", jnum(x.value)}, {"unit", x.unit}};
        return j;
    };
    json flags = json::object();
    for (const auto& f : r.flags) flags[f.name] = {{"margin", jnum(f.margin)}, {"flag", f.flag}};
    a.json("design_" + r.operation + ".json",
           json{{"operation", r.operation}, {"inputs", values(r.inputs)}, {"outputs", values(r.outputs)},
                {"flags", flags}});

    out << fmt::format("design {}\n", r.operation);
    for (const auto& x : r.inputs) out << fmt::format("  in   {:<22} {:>14.6g} {}\n", x.name, x.value, x.unit);
    for (const auto& x : r.outputs) out << fmt::format("  out  {:<22} {:>14.6g} {}\n", x.name, x.value, x.unit);
    for (const auto& f : r.flags)
        out << fmt::format("  flag {:<22} {:>14.6g} {}\n", f.name, f.margin, f.flag ? "yes" : "no");
}

void cmd_nsgate(const Settings& s, Artifacts& a, std::ostream& out) {
    NSGateConfig cfg = default_ns_config();
    if (s.r) cfg.r = *s.r;
    if (s.s) cfg.s = *s.s;
    if (!(cfg.r >= 0.0 && cfg.r <= 1.0 && cfg.s >= 0.0 && cfg.s <= 1.0))
        throw ValidationError("--r and --s must lie in [0, 1]");
    const NSConditionalMap m = ns_conditional_map(cfg);
    json body{{"topology", cfg.topology},
              {"convention", cfg.convention},
              {"r", cfg.r},
              {"s", cfg.s},
              {"c0", complex_json(m.c0)},
              {"c1", complex_json(m.c1)},
              {"c2", complex_json(m.c2)},
              {"success", m.success},
              {"sign_flip_residual", m.sign_flip_residual()},
              {"homi_mz",
               {{"phase_0", homi_mz_stage_states(0.0).coincidence},
                {"phase_pi", homi_mz_stage_states(std::numbers::pi).coincidence},
                {"phase", s.phase},
                {"coincidence", homi_mz_stage_states(s.phase).coincidence}}}};
    if (s.optimize) {
        if (s.grid < 4) throw ValidationError("--grid must be at least 4");
        const NSOptimum o = ns_optimize(s.grid);
        body["optimum"] = {{"r", o.r}, {"s", o.s}, {"success", o.success}, {"residual", o.residual}};
        out << fmt::format("nsgate optimum: r = {:.9f}, s = {:.9f}, success = {:.9f}\n", o.r, o.s, o.success);
    }
    a.json("nsgate.json", body);
    a.json("ns_network.json", json{{"channels", {"signal", "ancilla", "vacuum"}},
                                   {"elements", json::parse(network_to_json(ns_gate_network(cfg)))}});
    out << fmt::format("nsgate: c = ({:.6g}, {:.6g}, {:.6g}), success = {:.6g}\n", m.c0.real(), m.c1.real(),
                       m.c2.real(), m.success);
}

void cmd_economy(const Settings& s, Artifacts& a, std::ostream& out) {
    const std::vector<EconomyInputs> rows = s.csv.empty() ? parse_economy_csv(kTable1Csv) : load_economy_csv(s.csv);
    std::string text = "label,L_mm,P_W,Rs_Hz,ratio,R_Hz_per_mm_W,R_printed,deviation,discrepancy\n";
    json records = json::array();
    out << fmt::format("{:<10} {:>14} {:>14} {:>10} {}\n", "label", "R [Hz/(mm W)]", "printed", "deviation", "flag");
    for (const auto& in : rows) {
        const EconomyRecord r = economy_figure(in);
        text += fmt::format("{},{},{},{},{},{},{},{},{}\n", in.label, format_double(in.length_mm),
                            format_double(in.power_w), format_double(in.singles_hz),
                            format_double(in.coincidence_ratio), format_double(r.r),
                            in.printed_r ? format_double(*in.printed_r) : "",
                            r.deviation ? format_double(*r.deviation) : "", r.discrepancy ? 1 : 0);
        json rec{{"label", in.label},
                 {"L_mm", in.length_mm},
                 {"P_W", in.power_w},
                 {"Rs_Hz", in.singles_hz},
                 {"ratio", in.coincidence_ratio},
                 {"R", r.r},
                 {"discrepancy", r.discrepancy}};
        if (in.printed_r) rec["R_printed"] = *in.printed_r;
        if (r.deviation) rec["deviation"] = *r.deviation;
        records.push_back(rec);
        out << fmt::format("{:<10} {:>14.4g} {:>14} {:>10} {}\n", in.label, r.r,
                           in.printed_r ? fmt::format("{:.4g}", *in.printed_r) : "-",
                           r.deviation ? fmt::format("{:+.3f}", *r.deviation) : "-",
                           r.discrepancy ? "DISCREPANCY" : "ok");
    }
    a.csv("economy.csv", text);
    a.json("economy.json", json{{"unit", "Hz/(mm W)"}, {"tolerance", kEconomyTolerance}, {"records", records}});
}

}  // namespace biphoton::cli
