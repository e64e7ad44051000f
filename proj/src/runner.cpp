#include "ris_noma/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "ris_noma/analytic.hpp"
#include "ris_noma/errors.hpp"
#include "ris_noma/montecarlo.hpp"

#ifndef RIS_NOMA_VERSION
#define RIS_NOMA_VERSION "0.0.0-unknown"
#endif

namespace ris_noma {

namespace fs = std::filesystem;

std::string version_string() { return RIS_NOMA_VERSION; }

namespace {

struct Cell {
    std::optional<double> analytic;
    std::optional<McEstimate> mc;
};

bool is_energy(CurveKind k) { return k == CurveKind::EnergyDL || k == CurveKind::EnergyDT; }

Probe probe_for(const CurveSpec& c)
{
    Probe p;
    p.user = c.user;
    p.access = c.access;
    p.variant = c.variant;
    switch (c.kind) {
    case CurveKind::Outage: p.metric = Metric::Outage; break;
    case CurveKind::Ergodic: p.metric = Metric::Ergodic; break;
    case CurveKind::ThroughputDL:
    case CurveKind::EnergyDL: p.metric = Metric::ThroughputDL; break;
    case CurveKind::ThroughputDT:
    case CurveKind::EnergyDT: p.metric = Metric::ThroughputDT; break;
    case CurveKind::OutageAsymptotic: p.metric = Metric::Outage; break;
    }
    return p;
}

void add_warning(std::vector<std::string>& w, const std::string& msg)
{
    if (std::find(w.begin(), w.end(), msg) == w.end()) w.push_back(msg);
}

std::optional<double> analytic_value(const SystemConfig& c, const Scenario& s, const CurveSpec& cv,
                                     std::vector<std::string>& warnings)
{
    switch (cv.kind) {
    case CurveKind::Outage: {
        const auto r = outage(c, cv.user, cv.variant);
        if (r.guard_violated)
            add_warning(warnings, cv.name + ": feasibility guard violated, outage reported as 1");
        return r.value;
    }
    case CurveKind::OutageAsymptotic:
        try {
            return outage_asymptotic(c, cv.user, cv.variant);
        } catch (const DivergenceError& e) {
            add_warning(warnings, cv.name + ": asymptote unavailable (" + e.what() + ")");
            return std::nullopt;
        }
    case CurveKind::Ergodic: return ergodic_rate(c, cv.user, cv.variant);
    case CurveKind::ThroughputDL: return throughput_delay_limited(c, cv.variant, cv.access).value;
    case CurveKind::ThroughputDT: return throughput_delay_tolerant(c, cv.variant, cv.access).value;
    case CurveKind::EnergyDL:
        return energy_efficiency(c, s.power, cv.variant, ThroughputMode::DelayLimited, cv.access);
    case CurveKind::EnergyDT:
        return energy_efficiency(c, s.power, cv.variant, ThroughputMode::DelayTolerant, cv.access);
    }
    return std::nullopt;
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

RunManifest run_scenario(Scenario s, const std::string& out_dir, const RunFlags& flags)
{
    if (flags.analytic_only && flags.mc_only) throw ConfigError("--analytic-only and --mc-only are exclusive");
    if (flags.trials) s.run.trials = *flags.trials;
    if (flags.seed) s.run.seed = *flags.seed;
    validate(s);

    const auto grid = resolve_grid(s.run);
    const auto& curves = s.run.curves;
    RunManifest man;
    man.scenario = s.run.scenario;
    man.config_hash = config_hash(s);
    man.seed = s.run.seed;
    man.trials = flags.analytic_only ? 0 : s.run.trials;
    man.laguerre_order = s.system.U;
    man.chebyshev_order = s.system.N;
    man.version = version_string();
    man.timestamp = utc_timestamp();

    const auto guards = check_guards(s.system);
    if (guards.g_forms_disagree)
        add_warning(man.warnings, "near-user guard: linear and squared chi_g readings disagree on feasibility");

    std::vector<std::vector<Cell>> table(curves.size(), std::vector<Cell>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const SystemConfig c = with_axis(s.system, s.run.axis, grid[i]);

        if (!flags.mc_only)
            for (std::size_t k = 0; k < curves.size(); ++k)
                table[k][i].analytic = analytic_value(c, s, curves[k], man.warnings);

        if (flags.analytic_only) continue;
        std::vector<Probe> probes;
        std::vector<std::size_t> owner;
        for (std::size_t k = 0; k < curves.size(); ++k) {
            if (curves[k].kind == CurveKind::OutageAsymptotic) continue;
            probes.push_back(probe_for(curves[k]));
            owner.push_back(k);
        }
        if (probes.empty()) continue;
        const auto est = mc_probe(c, probes, s.run.trials, s.run.seed, i);
        for (std::size_t j = 0; j < est.size(); ++j) {
            McEstimate e = est[j];
            const auto& cv = curves[owner[j]];
            if (is_energy(cv.kind)) {
                const double power = total_power(apply_variant(c, cv.variant), s.power, cv.access);
                e.value /= power;
                e.std_error /= power;
            }
            table[owner[j]][i].mc = e;
        }
    }

    fs::create_directories(out_dir);
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const std::string file = s.run.scenario + "_" + curves[k].name + ".csv";
        std::ofstream out(fs::path(out_dir) / file, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + (fs::path(out_dir) / file).string());
        out << "axis_value,analytic_value,mc_value,mc_std_error,variant\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Cell& cell = table[k][i];
            out << format_number(grid[i]) << ',';
            if (cell.analytic) out << format_number(*cell.analytic);
            out << ',';
            if (cell.mc) out << format_number(cell.mc->value);
            out << ',';
            if (cell.mc) out << format_number(cell.mc->std_error);
            out << ',' << curves[k].variant_label << '\n';
        }
        man.files.push_back(file);
    }

    nlohmann::ordered_json j;
    j["scenario"] = man.scenario;
    j["config_hash"] = man.config_hash;
    j["seed"] = man.seed;
    j["trials"] = man.trials;
    j["quadrature"] = {{"laguerre_order", man.laguerre_order},
                       {"laguerre_rule", s.system.laguerre == LaguerreRule::Generalized ? "generalized" : "standard"},
                       {"chebyshev_order", man.chebyshev_order}};
    j["options"] = {{"sic_guard", s.system.guard == SicGuard::Linear ? "linear" : "printed"},
                    {"ris_noise_mode", s.system.ris_noise == RisNoiseMode::Constant ? "constant" : "drawn"},
                    {"asymptote_factorial_form", true}};
    j["power_model_w"] = {{"amp_efficiency_nu", s.power.nu}, {"p_bs_static_w", s.power.P_BS},
                          {"p_re_w", s.power.P_RE},          {"p_user_w", s.power.P_U},
                          {"p_sw_w", s.power.P_SW},          {"p_dc_w", s.power.P_DC}};
    j["axis"] = s.run.axis;
    j["grid"] = grid;
    j["version"] = man.version;
    j["timestamp"] = man.timestamp;
    j["files"] = man.files;
    j["warnings"] = man.warnings;
    j["canonical_config"] = canonical_text(s);
    const std::string manifest = s.run.scenario + "_manifest.json";
    std::ofstream(fs::path(out_dir) / manifest, std::ios::binary) << j.dump(2) << '\n';
    man.files.push_back(manifest);
    return man;
}

std::string validation_report(const Scenario& s)
{
    validate(s.system);
    validate(s.power);
    std::ostringstream o;
    const auto t = derive_targets(s.system);
    const auto gr = check_guards(s.system);
    const char* form = s.system.guard == SicGuard::Linear ? "chi_g" : "chi_g^2";
    auto status = [](bool ok) { return ok ? "feasible" : "INFEASIBLE"; };
    o << "targets: gamma_th_g=" << format_number(t.gamma_th_g) << " gamma_th_f=" << format_number(t.gamma_th_f)
      << " gamma_th_o=" << format_number(t.gamma_th_o) << '\n';
    o << "guard g (a_g > gamma_th_g " << form << "): " << status(gr.g_ok) << " margin " << format_number(gr.g_margin) << '\n';
    if (gr.g_forms_disagree) o << "  warning: linear and squared chi_g readings disagree on feasibility\n";
    o << "guard f (a_f > gamma_th_f chi_f): " << status(gr.f_ok) << " margin " << format_number(gr.f_margin) << '\n';
    o << "guard o (gamma_th_o chi_o < 1): " << status(gr.o_ok) << " margin " << format_number(gr.o_margin) << '\n';

    const auto ctx = make_context(s.system);
    for (const UserConstants* k : {&ctx.g, &ctx.f, &ctx.o}) {
        o << "user " << to_string(k->user) << ": mu=" << format_number(k->stats.mu)
          << " Omega=" << format_number(k->stats.omega) << " b=" << format_number(k->stats.b)
          << " c=" << format_number(k->stats.c) << " Psi=" << format_number(k->order.Psi)
          << " chi=" << format_number(k->chi) << " varsigma=" << format_number(k->varsigma)
          << " phi=" << format_number(k->phi) << " vartheta=" << format_number(k->vartheta)
          << " tau=" << format_number(k->tau) << " omega_ru=" << format_number(k->omega_ru) << '\n';
        try {
            const double cst = asymptotic_element_constant(s.system.m_r, user_shape(s.system, k->user));
            o << "  asymptote: available, element constant " << format_number(cst) << '\n';
        } catch (const DivergenceError& e) {
            o << "  warning: asymptote unavailable, " << e.what() << '\n';
        }
    }
    o << "quadrature: U=" << s.system.U << " N=" << s.system.N << '\n';
    return o.str();
}

}  // namespace ris_noma
