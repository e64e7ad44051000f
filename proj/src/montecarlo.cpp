#include "ris_noma/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "ris_noma/analytic.hpp"
#include "ris_noma/channel.hpp"
#include "ris_noma/errors.hpp"

namespace ris_noma {

unsigned worker_count()
{
    if (const char* env = std::getenv("RIS_NOMA_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

struct Trial {
    CascadeSample g, f, o;
    double residual = 0.0;
};

class TrialSource {
public:
    explicit TrialSource(const SystemConfig& cfg)
        : cfg_(cfg),
          fp_g_(fading_params(cfg, User::g)),
          fp_f_(fading_params(cfg, User::f)),
          fp_o_(fading_params(cfg, User::o)),
          shared_pool_(cfg.m_g == cfg.m_f),
          m_I_(residual_shape(cfg))
    {
    }

    void draw(CascadeSampler& s, Trial& t)
    {
        // K i.i.d. cascades sorted ascending; rank r is entry r - 1.
        fill_sorted(s, fp_g_);
        t.g = pool_[cfg_.g - 1];
        if (shared_pool_) {
            t.f = pool_[cfg_.f - 1];
        } else {
            fill_sorted(s, fp_f_);
            t.f = pool_[cfg_.f - 1];
        }
        t.o = s.cascade(fp_o_);
        t.residual = s.gamma_unit_mean(m_I_);
    }

private:
    void fill_sorted(CascadeSampler& s, const FadingParams& fp)
    {
        pool_.resize(cfg_.K);
        for (auto& c : pool_) c = s.cascade(fp);
        std::sort(pool_.begin(), pool_.end(),
                  [](const CascadeSample& a, const CascadeSample& b) { return a.amplitude < b.amplitude; });
    }

    SystemConfig cfg_;
    FadingParams fp_g_, fp_f_, fp_o_;
    bool shared_pool_;
    double m_I_;
    std::vector<CascadeSample> pool_;
};

struct ProbeEval {
    Probe probe;
    SystemConfig cfg;
    Targets targets;
    double omega_g, omega_f, omega_o;
};

double norm(const SystemConfig& c, double omega, const CascadeSample& s)
{
    return c.ris_noise == RisNoiseMode::Drawn ? omega * s.ris_gain : c.L * omega;
}

bool g_outage(const ProbeEval& e, const Trial& t)
{
    const double n = norm(e.cfg, e.omega_g, t.g);
    if (sinr_g_to_f(e.cfg, t.g.amplitude, n).sinr < e.targets.gamma_th_f) return true;
    return sinr_g(e.cfg, t.g.amplitude, t.residual, n).sinr < e.targets.gamma_th_g;
}

bool f_outage(const ProbeEval& e, const Trial& t)
{
    return sinr_f(e.cfg, t.f.amplitude, norm(e.cfg, e.omega_f, t.f)).sinr < e.targets.gamma_th_f;
}

bool o_outage(const ProbeEval& e, const Trial& t)
{
    return sinr_o(e.cfg, t.o.amplitude, norm(e.cfg, e.omega_o, t.o)).sinr < e.targets.gamma_th_o;
}

double rate(const ProbeEval& e, const Trial& t, User u)
{
    switch (u) {
    case User::g: return std::log2(1.0 + sinr_g(e.cfg, t.g.amplitude, t.residual, norm(e.cfg, e.omega_g, t.g)).sinr);
    case User::f: return std::log2(1.0 + sinr_f(e.cfg, t.f.amplitude, norm(e.cfg, e.omega_f, t.f)).sinr);
    case User::o: return std::log2(1.0 + sinr_o(e.cfg, t.o.amplitude, norm(e.cfg, e.omega_o, t.o)).sinr);
    }
    return 0.0;
}

double evaluate(const ProbeEval& e, const Trial& t)
{
    const Probe& p = e.probe;
    switch (p.metric) {
    case Metric::Outage:
        if (p.user == User::g) return g_outage(e, t) ? 1.0 : 0.0;
        if (p.user == User::f) return f_outage(e, t) ? 1.0 : 0.0;
        return o_outage(e, t) ? 1.0 : 0.0;
    case Metric::Ergodic:
        return rate(e, t, p.user);
    case Metric::ThroughputDL:
        if (p.access == Access::Oma) return o_outage(e, t) ? 0.0 : e.cfg.R_o;
        return (g_outage(e, t) ? 0.0 : e.cfg.R_g) + (f_outage(e, t) ? 0.0 : e.cfg.R_f);
    case Metric::ThroughputDT:
        if (p.access == Access::Oma) return rate(e, t, User::o);
        return rate(e, t, User::g) + rate(e, t, User::f);
    }
    return 0.0;
}

}  // namespace

std::vector<McEstimate> mc_probe(const SystemConfig& cfg, const std::vector<Probe>& probes, std::size_t trials,
                                 std::uint64_t seed, std::uint64_t point)
{
    validate(cfg);
    if (trials < kMinTrials)
        throw ConfigError("trials: need at least " + std::to_string(kMinTrials) + ", got " + std::to_string(trials));

    std::vector<ProbeEval> evals;
    for (const auto& p : probes) {
        ProbeEval e{p, apply_variant(cfg, p.variant), {}, 0.0, 0.0, 0.0};
        e.targets = derive_targets(e.cfg);
        e.omega_g = omega_ru(e.cfg, User::g);
        e.omega_f = omega_ru(e.cfg, User::f);
        e.omega_o = omega_ru(e.cfg, User::o);
        evals.push_back(e);
    }

    const std::size_t n_blocks = (trials + kBlockTrials - 1) / kBlockTrials;
    const std::size_t width = evals.size();
    std::vector<Moments> block_moments(n_blocks * width);
    std::atomic<std::size_t> next{0};

    auto work = [&]() {
        TrialSource source(cfg);
        Trial t;
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= n_blocks) return;
            CascadeSampler sampler(seed, (point << 32) | b);
            const std::size_t begin = b * kBlockTrials;
            const std::size_t end = std::min(trials, begin + kBlockTrials);
            Moments* m = &block_moments[b * width];
            for (std::size_t i = begin; i < end; ++i) {
                source.draw(sampler, t);
                for (std::size_t k = 0; k < width; ++k) {
                    const double v = evaluate(evals[k], t);
                    m[k].sum += v;
                    m[k].sum_sq += v * v;
                }
            }
        }
    };

    const unsigned workers = std::min<std::size_t>(worker_count(), n_blocks);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::vector<McEstimate> out(width);
    const double T = static_cast<double>(trials);
    for (std::size_t k = 0; k < width; ++k) {
        Moments total;
        for (std::size_t b = 0; b < n_blocks; ++b) {
            total.sum += block_moments[b * width + k].sum;
            total.sum_sq += block_moments[b * width + k].sum_sq;
        }
        const double mean = total.sum / T;
        double se = 0.0;
        if (probes[k].metric == Metric::Outage) {
            se = std::sqrt(mean * (1.0 - mean) / T);
        } else {
            const double var = std::max(0.0, (total.sum_sq - T * mean * mean) / (T - 1.0));
            se = std::sqrt(var / T);
        }
        out[k] = {mean, se, trials, seed};
    }
    return out;
}

McEstimate mc_outage(const SystemConfig& cfg, User u, Variant v, std::size_t trials, std::uint64_t seed)
{
    return mc_probe(cfg, {Probe{Metric::Outage, u, v, Access::Noma}}, trials, seed).front();
}

McEstimate mc_ergodic_rate(const SystemConfig& cfg, User u, Variant v, std::size_t trials, std::uint64_t seed)
{
    return mc_probe(cfg, {Probe{Metric::Ergodic, u, v, Access::Noma}}, trials, seed).front();
}

double closed_form(const SystemConfig& cfg, const Probe& p)
{
    switch (p.metric) {
    case Metric::Outage: return outage(cfg, p.user, p.variant).value;
    case Metric::Ergodic: return ergodic_rate(cfg, p.user, p.variant);
    case Metric::ThroughputDL: return throughput_delay_limited(cfg, p.variant, p.access).value;
    case Metric::ThroughputDT: return throughput_delay_tolerant(cfg, p.variant, p.access).value;
    }
    return 0.0;
}

bool is_known_axis(const std::string& a)
{
    return a == "P_b" || a == "L" || a == "beta" || a == "m" || a == "kappa" || a == "d_br";
}

SystemConfig with_axis(SystemConfig cfg, const std::string& axis, double x)
{
    if (axis == "P_b") {
        cfg.P_b = dbm_to_watts(x);
    } else if (axis == "L") {
        if (x < 1.0 || x != std::floor(x)) throw ConfigError("L sweep values must be positive integers");
        cfg.L = static_cast<int>(x);
    } else if (axis == "beta") {
        cfg.beta = x;
    } else if (axis == "m") {
        cfg.m_r = cfg.m_g = cfg.m_f = cfg.m_o = x;
    } else if (axis == "kappa") {
        cfg.kappa_b = cfg.kappa_g = cfg.kappa_f = cfg.kappa_o = x;
    } else if (axis == "d_br") {
        cfg.d_br = x;
    } else {
        throw ConfigError("sweep_axis: unknown axis '" + axis + "' (expected P_b, L, beta, m, kappa, d_br)");
    }
    return cfg;
}

SweepResult mc_sweep(const SystemConfig& cfg, const std::string& axis, const std::vector<double>& grid,
                     const Probe& probe, std::size_t trials, std::uint64_t seed)
{
    if (!is_known_axis(axis)) with_axis(cfg, axis, 0.0);
    if (grid.empty()) throw ConfigError("sweep grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ConfigError("sweep grid must be strictly increasing");
    SweepResult r{axis, probe, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const SystemConfig c = with_axis(cfg, axis, grid[i]);
        SweepPoint pt;
        pt.x = grid[i];
        pt.analytic = closed_form(c, probe);
        pt.mc = mc_probe(c, {probe}, trials, seed, i).front();
        r.points.push_back(pt);
    }
    return r;
}

}  // namespace ris_noma
