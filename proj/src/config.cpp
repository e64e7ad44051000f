#include "ris_noma/config.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ris_noma/errors.hpp"

#ifndef RIS_NOMA_PRESET_DIR
#define RIS_NOMA_PRESET_DIR "presets"
#endif

namespace ris_noma {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

double to_double(const std::string& v)
{
    double x = 0.0;
    const auto* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || p != end || !std::isfinite(x)) throw ConfigError("expected a number, got '" + v + "'");
    return x;
}

long long to_integer(const std::string& v)
{
    long long x = 0;
    const auto* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || p != end) throw ConfigError("expected an integer, got '" + v + "'");
    return x;
}

int to_int(const std::string& v) { return static_cast<int>(to_integer(v)); }

std::vector<double> to_list(const std::string& v)
{
    std::vector<double> out;
    if (trim(v).empty()) return out;
    for (const auto& item : split(v, ',')) out.push_back(to_double(item));
    return out;
}

using Setter = std::function<void(Scenario&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto sys = [&](const char* key, auto member) {
            t[key] = [member](Scenario& s, const std::string& v) { s.system.*member = to_double(v); };
        };
        auto sys_int = [&](const char* key, int SystemConfig::*member) {
            t[key] = [member](Scenario& s, const std::string& v) { s.system.*member = to_int(v); };
        };
        auto dbm = [&](const char* key, double SystemConfig::*member) {
            t[key] = [member](Scenario& s, const std::string& v) { s.system.*member = dbm_to_watts(to_double(v)); };
        };
        auto pw = [&](const char* key, double PowerModel::*member) {
            t[key] = [member](Scenario& s, const std::string& v) { s.power.*member = to_double(v); };
        };

        sys_int("users_k", &SystemConfig::K);
        sys_int("rank_near_g", &SystemConfig::g);
        sys_int("rank_far_f", &SystemConfig::f);
        sys_int("elements_l", &SystemConfig::L);
        sys("beta", &SystemConfig::beta);
        dbm("p_b_dbm", &SystemConfig::P_b);
        sys("a_g", &SystemConfig::a_g);
        sys("a_f", &SystemConfig::a_f);
        sys("kappa_b", &SystemConfig::kappa_b);
        sys("kappa_g", &SystemConfig::kappa_g);
        sys("kappa_f", &SystemConfig::kappa_f);
        sys("kappa_o", &SystemConfig::kappa_o);
        t["kappa"] = [](Scenario& s, const std::string& v) {
            s.system.kappa_b = s.system.kappa_g = s.system.kappa_f = s.system.kappa_o = to_double(v);
        };
        dbm("n_tn_dbm", &SystemConfig::N_tn);
        dbm("sigma2_dbm", &SystemConfig::sigma2);
        sys("d_br_m", &SystemConfig::d_br);
        sys("d_rg_m", &SystemConfig::d_rg);
        sys("d_rf_m", &SystemConfig::d_rf);
        sys("d_ro_m", &SystemConfig::d_ro);
        sys("alpha", &SystemConfig::alpha);
        sys("eta", &SystemConfig::eta);
        sys("m_r", &SystemConfig::m_r);
        sys("m_g", &SystemConfig::m_g);
        sys("m_f", &SystemConfig::m_f);
        sys("m_o", &SystemConfig::m_o);
        sys("m_i", &SystemConfig::m_I);
        t["m"] = [](Scenario& s, const std::string& v) {
            s.system.m_r = s.system.m_g = s.system.m_f = s.system.m_o = to_double(v);
        };
        t["omega_i_db"] = [](Scenario& s, const std::string& v) { s.system.Omega_I = db_to_linear(to_double(v)); };
        sys("rate_g_bpcu", &SystemConfig::R_g);
        sys("rate_f_bpcu", &SystemConfig::R_f);
        sys("rate_o_bpcu", &SystemConfig::R_o);
        sys_int("laguerre_order_u", &SystemConfig::U);
        sys_int("chebyshev_order_n", &SystemConfig::N);
        t["sic_guard"] = [](Scenario& s, const std::string& v) {
            if (v == "linear") s.system.guard = SicGuard::Linear;
            else if (v == "printed") s.system.guard = SicGuard::Printed;
            else throw ConfigError("expected linear or printed, got '" + v + "'");
        };
        t["laguerre_rule"] = [](Scenario& s, const std::string& v) {
            if (v == "generalized") s.system.laguerre = LaguerreRule::Generalized;
            else if (v == "standard") s.system.laguerre = LaguerreRule::Standard;
            else throw ConfigError("expected generalized or standard, got '" + v + "'");
        };
        t["ris_noise_mode"] = [](Scenario& s, const std::string& v) {
            if (v == "constant") s.system.ris_noise = RisNoiseMode::Constant;
            else if (v == "drawn") s.system.ris_noise = RisNoiseMode::Drawn;
            else throw ConfigError("expected constant or drawn, got '" + v + "'");
        };

        pw("amp_efficiency_nu", &PowerModel::nu);
        pw("p_bs_static_w", &PowerModel::P_BS);
        pw("p_re_w", &PowerModel::P_RE);
        pw("p_user_w", &PowerModel::P_U);
        pw("p_sw_w", &PowerModel::P_SW);
        pw("p_dc_w", &PowerModel::P_DC);

        t["scenario"] = [](Scenario& s, const std::string& v) {
            if (v.empty() || v.find_first_of("/\\ ") != std::string::npos)
                throw ConfigError("scenario name must be non-empty without spaces or slashes");
            s.run.scenario = v;
        };
        t["sweep_axis"] = [](Scenario& s, const std::string& v) {
            if (!is_known_axis(v)) throw ConfigError("unknown axis '" + v + "' (expected P_b, L, beta, m, kappa, d_br)");
            s.run.axis = v;
        };
        t["sweep_values"] = [](Scenario& s, const std::string& v) {
            s.run.grid = to_list(v);
            s.run.range_start.reset();
            s.run.range_stop.reset();
            s.run.range_step.reset();
        };
        t["sweep_start"] = [](Scenario& s, const std::string& v) { s.run.range_start = to_double(v); s.run.grid.clear(); };
        t["sweep_stop"] = [](Scenario& s, const std::string& v) { s.run.range_stop = to_double(v); s.run.grid.clear(); };
        t["sweep_step"] = [](Scenario& s, const std::string& v) { s.run.range_step = to_double(v); s.run.grid.clear(); };
        t["curves"] = [](Scenario& s, const std::string& v) {
            s.run.curves.clear();
            for (const auto& item : split(v, ';'))
                if (!item.empty()) s.run.curves.push_back(parse_curve(item));
        };
        t["trials"] = [](Scenario& s, const std::string& v) {
            const long long n = to_integer(v);
            if (n < 1) throw ConfigError("trials must be positive");
            s.run.trials = static_cast<std::size_t>(n);
        };
        t["seed"] = [](Scenario& s, const std::string& v) {
            std::uint64_t x = 0;
            const auto* end = v.data() + v.size();
            auto [p, ec] = std::from_chars(v.data(), end, x);
            if (ec != std::errc() || p != end) throw ConfigError("expected an unsigned integer seed, got '" + v + "'");
            s.run.seed = x;
        };
        return t;
    }();
    return table;
}

}  // namespace

Scenario default_scenario()
{
    Scenario s;
    s.system.P_b = dbm_to_watts(30.0);
    s.system.N_tn = dbm_to_watts(-30.0);
    s.system.sigma2 = dbm_to_watts(-20.0);
    return s;
}

void parse_config_text(const std::string& text, const std::string& origin, Scenario& base)
{
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = hash == std::string::npos ? line : line.substr(0, hash);
        if (trim(body).empty()) continue;
        const auto eq = body.find('=');
        const auto key_col = body.find_first_not_of(" \t") + 1;
        auto fail = [&](std::size_t col, const std::string& msg) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ":" + std::to_string(col) + ": " + msg);
        };
        if (eq == std::string::npos) fail(key_col, "expected 'key = value'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) fail(key_col, "unknown key '" + key + "'");
        const auto vpos = body.find_first_not_of(" \t", eq + 1);
        const std::size_t value_col = (vpos == std::string::npos ? eq + 1 : vpos) + 1;
        try {
            it->second(base, value);
        } catch (const ConfigError& e) {
            fail(value_col, key + ": " + e.what());
        }
    }
}

void parse_config_file(const std::string& path, Scenario& base)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::stringstream buf;
    buf << in.rdbuf();
    parse_config_text(buf.str(), path, base);
}

CurveSpec parse_curve(const std::string& spec)
{
    const auto parts = split(spec, ':');
    if (parts.size() < 3 || parts.size() > 4)
        throw ConfigError("curve '" + spec + "' must read metric:user:surface[:sic]");
    CurveSpec c;
    const std::string& metric = parts[0];
    if (metric == "outage") c.kind = CurveKind::Outage;
    else if (metric == "outage_asymptotic") c.kind = CurveKind::OutageAsymptotic;
    else if (metric == "ergodic") c.kind = CurveKind::Ergodic;
    else if (metric == "throughput_dl") c.kind = CurveKind::ThroughputDL;
    else if (metric == "throughput_dt") c.kind = CurveKind::ThroughputDT;
    else if (metric == "ee_dl") c.kind = CurveKind::EnergyDL;
    else if (metric == "ee_dt") c.kind = CurveKind::EnergyDT;
    else throw ConfigError("curve '" + spec + "': unknown metric '" + metric + "'");

    const bool system_level = c.kind == CurveKind::ThroughputDL || c.kind == CurveKind::ThroughputDT ||
                              c.kind == CurveKind::EnergyDL || c.kind == CurveKind::EnergyDT;
    const std::string& who = parts[1];
    bool wants_sic = false;
    if (system_level) {
        if (who == "noma") c.access = Access::Noma;
        else if (who == "oma") c.access = Access::Oma;
        else throw ConfigError("curve '" + spec + "': system-level metrics take noma or oma");
        wants_sic = c.access == Access::Noma;
    } else {
        if (who == "g") c.user = User::g;
        else if (who == "f") c.user = User::f;
        else if (who == "o") c.user = User::o;
        else throw ConfigError("curve '" + spec + "': user must be g, f or o");
        wants_sic = c.user == User::g;
    }

    if (parts[2] == "aris") c.variant.surface = Surface::Active;
    else if (parts[2] == "pris") c.variant.surface = Surface::Passive;
    else throw ConfigError("curve '" + spec + "': surface must be aris or pris");

    c.variant.sic = Sic::Perfect;
    if (parts.size() == 4) {
        if (!wants_sic) throw ConfigError("curve '" + spec + "': SIC mode applies only to user g and noma");
        if (parts[3] == "ipsic") c.variant.sic = Sic::Imperfect;
        else if (parts[3] != "psic") throw ConfigError("curve '" + spec + "': SIC mode must be ipsic or psic");
    }

    c.variant_label = to_string(c.variant.surface);
    if (wants_sic) c.variant_label += "_" + to_string(c.variant.sic);
    c.name = metric + "_" + who + "_" + c.variant_label;
    return c;
}

std::vector<double> resolve_grid(const RunSpec& run)
{
    if (!run.grid.empty()) return run.grid;
    std::vector<double> g;
    if (run.range_start && run.range_stop && run.range_step) {
        const double a = *run.range_start, b = *run.range_stop, h = *run.range_step;
        if (!(h > 0.0)) throw ConfigError("sweep_step must be positive");
        const auto n = static_cast<long long>(std::floor((b - a) / h + 1e-9));
        for (long long i = 0; i <= n; ++i) g.push_back(a + i * h);
    }
    return g;
}

void validate(const Scenario& s)
{
    validate(s.system);
    validate(s.power);
    const auto grid = resolve_grid(s.run);
    if (grid.empty()) throw ConfigError("sweep_values: sweep grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ConfigError("sweep_values: grid must be strictly increasing");
    for (double x : grid) validate(with_axis(s.system, s.run.axis, x));
    if (s.run.curves.empty()) throw ConfigError("curves: no curve requested");
    if (s.run.trials < kMinTrials) throw ConfigError("trials: need at least " + std::to_string(kMinTrials));
}

std::string format_number(double v)
{
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, p) : std::string("nan");
}

std::string canonical_text(const Scenario& s)
{
    const auto& c = s.system;
    const auto& p = s.power;
    std::ostringstream o;
    auto kv = [&](const char* k, double v) { o << k << '=' << format_number(v) << '\n'; };
    kv("K", c.K); kv("g", c.g); kv("f", c.f); kv("L", c.L); kv("beta", c.beta);
    kv("P_b", c.P_b); kv("a_g", c.a_g); kv("a_f", c.a_f);
    kv("kappa_b", c.kappa_b); kv("kappa_g", c.kappa_g); kv("kappa_f", c.kappa_f); kv("kappa_o", c.kappa_o);
    kv("N_tn", c.N_tn); kv("sigma2", c.sigma2);
    kv("d_br", c.d_br); kv("d_rg", c.d_rg); kv("d_rf", c.d_rf); kv("d_ro", c.d_ro);
    kv("alpha", c.alpha); kv("eta", c.eta);
    kv("m_r", c.m_r); kv("m_g", c.m_g); kv("m_f", c.m_f); kv("m_o", c.m_o); kv("m_I", c.m_I);
    kv("Omega_I", c.Omega_I); kv("R_g", c.R_g); kv("R_f", c.R_f); kv("R_o", c.R_o);
    kv("U", c.U); kv("N", c.N);
    o << "guard=" << (c.guard == SicGuard::Linear ? "linear" : "printed") << '\n';
    o << "laguerre=" << (c.laguerre == LaguerreRule::Generalized ? "generalized" : "standard") << '\n';
    o << "ris_noise=" << (c.ris_noise == RisNoiseMode::Constant ? "constant" : "drawn") << '\n';
    kv("nu", p.nu); kv("P_BS", p.P_BS); kv("P_RE", p.P_RE); kv("P_U", p.P_U); kv("P_SW", p.P_SW); kv("P_DC", p.P_DC);
    o << "scenario=" << s.run.scenario << '\n' << "axis=" << s.run.axis << '\n' << "grid=";
    for (double x : resolve_grid(s.run)) o << format_number(x) << ',';
    o << "\ncurves=";
    for (const auto& cv : s.run.curves) o << cv.name << ';';
    o << "\ntrials=" << s.run.trials << "\nseed=" << s.run.seed << '\n';
    return o.str();
}

std::string config_hash(const Scenario& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_text(s)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string preset_directory()
{
    if (const char* env = std::getenv("RIS_NOMA_PRESETS")) return env;
    return RIS_NOMA_PRESET_DIR;
}

std::string preset_path(const std::string& name) { return preset_directory() + "/" + name + ".cfg"; }

}  // namespace ris_noma
