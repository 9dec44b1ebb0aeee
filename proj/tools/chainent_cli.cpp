// Command-line driver: one subcommand per pipeline stage, each writing CSV
// tables, a JSON summary and a run manifest under the output directory.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chainent/config.hpp"
#include "chainent/correlation.hpp"
#include "chainent/dispersion.hpp"
#include "chainent/duality.hpp"
#include "chainent/error.hpp"
#include "chainent/gradient.hpp"
#include "chainent/io.hpp"
#include "chainent/lipschitz.hpp"
#include "chainent/probe.hpp"
#include "chainent/random.hpp"
#include "chainent/sampling.hpp"
#include "chainent/scaling.hpp"
#include "chainent/sobolev.hpp"
#include "chainent/spectrum.hpp"
#include "chainent/tails.hpp"
#include "chainent/trace_identity.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace chainent;

namespace {

constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    int workers = 0;
    std::vector<std::string> probes{"S"};
    // Chain overrides applied after the config file.
    std::optional<int> L, L_A;
    std::optional<double> omega0_sq, K0, omega_sq, K;
};

struct Context {
    ChainConfig cfg;
    std::vector<Probe> probes;
    fs::path out;
    RunManifest manifest;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

Context resolve(const Common& c, const std::string& command)
{
    Context ctx;
    ChainConfig cfg = reference_quench();
    if (!c.config_path.empty()) cfg = chain_config_from(KeyValueFile::load(c.config_path), cfg);
    if (c.L) cfg.L = *c.L;
    if (c.L_A) cfg.L_A = *c.L_A;
    if (c.omega0_sq) cfg.omega0_sq = *c.omega0_sq;
    if (c.K0) cfg.K0 = *c.K0;
    if (c.omega_sq) cfg.omega_sq = *c.omega_sq;
    if (c.K) cfg.K = *c.K;
    if (c.seed) cfg.seed = *c.seed;
    cfg.validate();
    ctx.cfg = cfg;
    for (const auto& p : c.probes) ctx.probes.push_back(Probe::parse(p));
    if (!c.out.empty())
        ctx.out = c.out;
    else if (const char* env = std::getenv("CHAINENT_OUT"); env && *env)
        ctx.out = env;
    else
        ctx.out = "out";
    ctx.manifest.command = command;
    ctx.manifest.cfg = cfg;
    ctx.manifest.version = library_version();
    ctx.manifest.resolved["workers"] = c.workers;
    ctx.manifest.resolved["out"] = ctx.out.string();
    json names = json::array();
    for (const auto& p : ctx.probes) names.push_back(p.name());
    ctx.manifest.resolved["probes"] = names;
    return ctx;
}

std::string probe_tag(const std::vector<Probe>& probes)
{
    std::string tag;
    for (const auto& p : probes) tag += (tag.empty() ? "" : "-") + p.name();
    return tag;
}

void finish(Context& ctx, const std::string& stem)
{
    ctx.manifest.timings["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
    write_text(ctx.out / (stem + "_manifest.json"), ctx.manifest.to_json().dump(2) + "\n");
    for (const auto& w : ctx.manifest.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "wrote " << ctx.manifest.files.size() << " files to " << ctx.out.string() << "\n";
}

json sample_summary(const SampleSet& s)
{
    return {{"probe", s.probe.name()}, {"origin", to_string(s.origin)}, {"count", s.count()},
            {"mean", s.mean()}, {"variance", s.variance()}, {"cfg_hash", s.cfg_hash}, {"seed", s.seed}};
}

// --- evolve ---------------------------------------------------------------

struct EvolveArgs {
    std::string window = "both";
    int count = 2000;
    double dt = 0.0;
    double early_span = 3.0;  // early window length in revival times
    double long_start = 10.0;  // long window start in revival times
};

int cmd_evolve(const Common& c, const EvolveArgs& a)
{
    Context ctx = resolve(c, "evolve");
    const DispersionTable table = build_dispersion(ctx.cfg);
    const RevivalTime rev = revival_time(ctx.cfg);
    const double dt = a.dt > 0.0 ? a.dt : default_time_step(table);
    ctx.manifest.resolved["dt"] = dt;
    ctx.manifest.resolved["revival_time"] = rev.value;
    ctx.manifest.resolved["count"] = a.count;
    const std::string stem = output_stem("evolve", probe_tag(ctx.probes), ctx.cfg, ctx.cfg.seed);
    json summary = json::object();

    auto run = [&](const std::string& name, double t0, double step, bool early) {
        CsvTable csv;
        std::vector<double> times;
        for (const Probe& p : ctx.probes) {
            const SampleSet s = sample_time_series(ctx.cfg, p, t0, a.count, step, early, c.workers);
            if (times.empty()) {
                times = s.times;
                csv.add_column("t", times);
            }
            csv.add_column(p.name(), s.values);
            summary[name][p.name()] = sample_summary(s);
        }
        ctx.manifest.emit(ctx.out, stem + "_" + name + ".csv", csv.render());
    };
    if (a.window == "early" || a.window == "both") {
        const double span = rev.flat_band ? a.count * dt : a.early_span * rev.value;
        run("early", 0.0, span / std::max(1, a.count - 1), true);
    }
    if (a.window == "long" || a.window == "both") run("long", a.long_start * rev.value, dt, false);
    ctx.manifest.emit(ctx.out, stem + "_summary.json", summary.dump(2) + "\n");
    finish(ctx, stem);
    return 0;
}

// --- torus ----------------------------------------------------------------

int cmd_torus(const Common& c, int samples)
{
    Context ctx = resolve(c, "torus");
    ctx.manifest.resolved["samples"] = samples;
    const auto sets = sample_torus(ctx.cfg, ctx.probes, samples, ctx.cfg.seed, c.workers);
    const std::string stem = output_stem("torus", probe_tag(ctx.probes), ctx.cfg, ctx.cfg.seed);
    CsvTable csv;
    std::vector<double> index(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) index[static_cast<std::size_t>(i)] = i;
    csv.add_column("sample", index);
    json summary = json::object();
    for (const auto& s : sets) {
        csv.add_column(s.probe.name(), s.values);
        summary[s.probe.name()] = sample_summary(s);
    }
    ctx.manifest.emit(ctx.out, stem + "_samples.csv", csv.render());
    ctx.manifest.emit(ctx.out, stem + "_summary.json", summary.dump(2) + "\n");
    finish(ctx, stem);
    return 0;
}

// --- stats / sobolev --------------------------------------------------------

json sobolev_json(const SobolevDiagnostics& d)
{
    return {{"b_plus", d.b_plus}, {"b_minus", d.b_minus}, {"c_plus", d.c_plus},
            {"c_minus", d.c_minus}, {"c_minus_sup", d.c_minus_sup}, {"variance", d.variance},
            {"grid_points", d.u.size()}, {"dropped", d.dropped}};
}

CsvTable sobolev_csv(const SobolevDiagnostics& d)
{
    CsvTable csv;
    csv.add_column("u", d.u);
    csv.add_column("G", d.G);
    csv.add_column("dG", d.dG);
    csv.add_column("lhs", d.lhs);
    csv.add_column("H", d.H);
    csv.add_column("delta_F", d.delta_F);
    csv.add_column("ratio", d.ratio);
    csv.add_column("ess_fraction", d.ess_fraction);
    return csv;
}

struct StatsArgs {
    int samples = 10000;
    int sobolev_samples = 500;
    int eps_points = 200;
};

int cmd_stats(const Common& c, const StatsArgs& a)
{
    Context ctx = resolve(c, "stats");
    ctx.manifest.resolved["samples"] = a.samples;
    ctx.manifest.resolved["sobolev_samples"] = a.sobolev_samples;
    ctx.manifest.resolved["eps_points"] = a.eps_points;
    int status = 0;
    json summary = json::object();
    const auto lips = lipschitz_variance_check(ctx.cfg, ctx.probes, a.samples, ctx.cfg.seed, c.workers);
    const auto sets = sample_torus(ctx.cfg, ctx.probes, a.samples, ctx.cfg.seed, c.workers);
    for (std::size_t i = 0; i < ctx.probes.size(); ++i) {
        const Probe p = ctx.probes[i];
        const std::string stem = output_stem("stats", p.name(), ctx.cfg, ctx.cfg.seed);
        json& out = summary[p.name()];
        out["samples"] = sample_summary(sets[i]);

        const auto eps = default_eps_grid(sets[i].values, a.eps_points);
        const TailCurve tails = tail_probabilities(sets[i].values, eps);
        CsvTable tcsv;
        tcsv.add_column("epsilon", tails.epsilon);
        tcsv.add_column("p_plus", tails.p_plus);
        tcsv.add_column("p_minus", tails.p_minus);
        ctx.manifest.emit(ctx.out, stem + "_tails.csv", tcsv.render());
        try {
            const ConcentrationFit fit = fit_concentration(tails);
            out["fit"] = {{"b_plus_hat", fit.b_plus_hat}, {"b_minus_hat", fit.b_minus_hat},
                          {"c_hat", fit.c_hat}, {"b_minus_gauss_hat", fit.b_minus_gauss_hat},
                          {"residual_plus", fit.residual_plus},
                          {"residual_minus_gamma", fit.residual_minus_gamma},
                          {"residual_minus_gauss", fit.residual_minus_gauss},
                          {"gamma_beats_gauss", fit.gamma_beats_gauss()}};
            if (!fit.gamma_beats_gauss())
                ctx.manifest.warnings.push_back(p.name() + ": sub-Gamma lower-tail fit does not beat sub-Gaussian");
        } catch (const DegenerateFit& e) {
            ctx.manifest.warnings.push_back(p.name() + ": " + e.what());
        }
        const TailComparison deep = deepest_resolvable(tails);
        out["deepest_resolvable"] = {{"epsilon", deep.epsilon}, {"p_plus", deep.p_plus}, {"p_minus", deep.p_minus}};

        const LipschitzResult& lr = lips[i];
        out["lipschitz"] = {{"variance", lr.variance}, {"mean_grad_sq", lr.mean_grad_sq},
                            {"ratio", lr.defined ? json(lr.ratio) : json(nullptr)}, {"defined", lr.defined}};

        if (ctx.cfg.has_quench()) {
            const auto table = extremal_table(ctx.cfg, p, a.sobolev_samples, ctx.cfg.seed, c.workers);
            const auto grid = default_u_grid(table.O);
            const SobolevDiagnostics d = sobolev_from_table(table, grid);
            out["sobolev"] = sobolev_json(d);
            ctx.manifest.emit(ctx.out, stem + "_sobolev.csv", sobolev_csv(d).render());
            if (!(d.b_plus > 0.0 && d.b_minus > 0.0)) {
                ctx.manifest.warnings.push_back(p.name() + ": non-positive variance factor");
                status = kExitInvariant;
            }
        }
    }
    const std::string stem = output_stem("stats", probe_tag(ctx.probes), ctx.cfg, ctx.cfg.seed);
    ctx.manifest.emit(ctx.out, stem + "_summary.json", summary.dump(2) + "\n");
    finish(ctx, stem);
    return status;
}

int cmd_sobolev(const Common& c, int samples, int per_side)
{
    Context ctx = resolve(c, "sobolev");
    ctx.manifest.resolved["samples"] = samples;
    ctx.manifest.resolved["per_side"] = per_side;
    json summary = json::object();
    int status = 0;
    for (const Probe& p : ctx.probes) {
        const auto table = extremal_table(ctx.cfg, p, samples, ctx.cfg.seed, c.workers);
        const SobolevDiagnostics d = sobolev_from_table(table, default_u_grid(table.O, per_side));
        const std::string stem = output_stem("sobolev", p.name(), ctx.cfg, ctx.cfg.seed);
        ctx.manifest.emit(ctx.out, stem + "_diagnostics.csv", sobolev_csv(d).render());
        summary[p.name()] = sobolev_json(d);
        if (!(d.b_plus > 0.0 && d.b_minus > 0.0)) status = kExitInvariant;
    }
    const std::string stem = output_stem("sobolev", probe_tag(ctx.probes), ctx.cfg, ctx.cfg.seed);
    ctx.manifest.emit(ctx.out, stem + "_summary.json", summary.dump(2) + "\n");
    finish(ctx, stem);
    return status;
}

// --- sweep ----------------------------------------------------------------

struct SweepArgs {
    std::vector<int> L_list{10000, 30000, 100000, 300000, 1000000};
    std::vector<int> L_A_list{10, 100, 200, 400, 800};
    ScalingOptions options;
};

int cmd_sweep(const Common& c, SweepArgs a)
{
    Context ctx = resolve(c, "sweep");
    a.options.workers = c.workers;
    ctx.manifest.resolved["L_list"] = a.L_list;
    ctx.manifest.resolved["L_A_list"] = a.L_A_list;
    ctx.manifest.resolved["samples"] = a.options.samples;
    ctx.manifest.resolved["gradient_samples"] = a.options.gradient_samples;
    ctx.manifest.resolved["gradient_route_above"] = a.options.gradient_route_above;
    ctx.manifest.resolved["lipschitz_C"] = a.options.lipschitz_C;
    const ScalingResult r = variance_scaling_sweep(ctx.cfg, a.L_list, a.L_A_list, ctx.probes, a.options, ctx.cfg.seed);
    for (const auto& w : r.warnings) ctx.manifest.warnings.push_back(w);

    const std::string stem = output_stem("sweep", probe_tag(ctx.probes), ctx.cfg, ctx.cfg.seed);
    CsvTable csv;
    std::vector<double> L, LA, order, var, err, route, n;
    for (const auto& p : r.points) {
        L.push_back(p.L);
        LA.push_back(p.L_A);
        order.push_back(p.probe.order);
        var.push_back(p.variance);
        err.push_back(p.std_error);
        route.push_back(p.gradient_route ? 1.0 : 0.0);
        n.push_back(p.samples);
    }
    csv.add_column("L", L);
    csv.add_column("L_A", LA);
    csv.add_column("probe_order", order);
    csv.add_column("variance", var);
    csv.add_column("std_error", err);
    csv.add_column("gradient_route", route);
    csv.add_column("samples", n);
    ctx.manifest.emit(ctx.out, stem + "_grid.csv", csv.render());

    json summary = json::object();
    for (const auto& f : r.fits)
        summary["fits"][f.probe.name()] = {{"slope_L", f.slope_L}, {"slope_LA", f.slope_LA},
                                           {"a_hat", f.a_hat}, {"b_hat", f.b_hat},
                                           {"collapse_residual", f.collapse_residual}};
    if (r.quadrature)
        summary["quadrature"] = {{"a", r.quadrature->a}, {"b", r.quadrature->b}, {"L_e", r.quadrature->L_e}};
    summary["warnings"] = r.warnings;
    ctx.manifest.emit(ctx.out, stem + "_summary.json", summary.dump(2) + "\n");
    finish(ctx, stem);
    return 0;
}

// --- dualcheck / selftest ---------------------------------------------------

json report_json(const DualityReport& rep)
{
    json checks = json::array();
    for (const auto& ch : rep.checks)
        checks.push_back({{"name", ch.name}, {"error", ch.error}, {"tolerance", ch.tolerance}, {"pass", ch.pass()}});
    return {{"all_pass", rep.all_pass()}, {"checks", checks}};
}

int cmd_dualcheck(const Common& c, int fock_L)
{
    Context ctx = resolve(c, "dualcheck");
    ctx.manifest.resolved["fock_L"] = fock_L;
    const DualityReport rep = duality_report(ctx.cfg, fock_L);
    for (const auto& ch : rep.checks)
        std::cout << (ch.pass() ? "[PASS] " : "[FAIL] ") << ch.name << "  error=" << ch.error
                  << " tol=" << ch.tolerance << "\n";
    const std::string stem = output_stem("dualcheck", "S", ctx.cfg, ctx.cfg.seed);
    ctx.manifest.emit(ctx.out, stem + "_report.json", report_json(rep).dump(2) + "\n");
    finish(ctx, stem);
    return rep.all_pass() ? 0 : kExitInvariant;
}

int cmd_selftest(const Common& c)
{
    Context ctx = resolve(c, "selftest");
    std::vector<DualityCheck> checks;
    ChainConfig cfg = ctx.cfg;
    cfg.L = 32;
    cfg.L_A = 8;
    const TorusModel full(cfg, cfg.L);
    const TorusModel part(cfg);
    double purity = 0.0, path = 0.0, grad = 0.0;
    for (std::uint64_t i = 0; i < 4; ++i) {
        const auto phi = uniform_phases(ctx.cfg.seed, i, part.N());
        for (double lam : symplectic_spectrum(full.correlation(phi)).lambda)
            purity = std::max(purity, std::abs(lam - 0.5));
        for (int order : {1, 2, 3}) {
            const Probe p = order == 1 ? Probe::entropy() : Probe::renyi(order);
            const double a = probe_value(symplectic_spectrum(part.correlation(phi)), p);
            const double b = entropy_via_matrix_function(part.correlation(phi), p);
            path = std::max(path, std::abs(a - b) / std::max(1.0, std::abs(a)));
        }
        const auto g = entropy_gradient(part, phi, Probe::entropy());
        const int m = static_cast<int>(i * 3 + 1) % part.N();
        const double fd = finite_difference_derivative(part, phi, m, Probe::entropy());
        grad = std::max(grad, std::abs(g.gradient[static_cast<std::size_t>(m)] - fd) /
                                  std::max(1e-3, std::abs(fd)));
    }
    checks.push_back({"full-system purity", purity, 1e-8});
    checks.push_back({"spectrum path = matrix-function path", path, 1e-10});
    checks.push_back({"gradient vs finite differences", grad, 1e-6});
    checks.push_back({"trace-derivative identity", trace_derivative_identity_check(16, ctx.cfg.seed).max_error(), 1e-8});
    ChainConfig small = ctx.cfg;
    small.L = 8;
    small.L_A = 4;
    for (const auto& ch : duality_report(small, 6).checks) checks.push_back(ch);

    bool ok = true;
    json arr = json::array();
    for (const auto& ch : checks) {
        ok = ok && ch.pass();
        std::cout << (ch.pass() ? "[PASS] " : "[FAIL] ") << ch.name << "  error=" << ch.error
                  << " tol=" << ch.tolerance << "\n";
        arr.push_back({{"name", ch.name}, {"error", ch.error}, {"tolerance", ch.tolerance}, {"pass", ch.pass()}});
    }
    const std::string stem = output_stem("selftest", "S", ctx.cfg, ctx.cfg.seed);
    ctx.manifest.emit(ctx.out, stem + "_report.json", json{{"all_pass", ok}, {"checks", arr}}.dump(2) + "\n");
    finish(ctx, stem);
    return ok ? 0 : kExitInvariant;
}

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--config", c.config_path, "key = value chain configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", c.seed, "PRNG seed (overrides the config)");
    sub->add_option("--out", c.out, "output directory (default: $CHAINENT_OUT, else ./out)");
    sub->add_option("--workers", c.workers, "worker threads, 0 = all available")->check(CLI::NonNegativeNumber);
    sub->add_option("--probe", c.probes, "probes: S, S2, S3, ...")->delimiter(',');
    sub->add_option("--L", c.L, "total chain length");
    sub->add_option("--LA", c.L_A, "subsystem length");
    sub->add_option("--omega0-sq", c.omega0_sq, "pre-quench omega^2");
    sub->add_option("--K0", c.K0, "pre-quench coupling");
    sub->add_option("--omega-sq", c.omega_sq, "post-quench omega^2");
    sub->add_option("--K", c.K, "post-quench coupling");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Post-quench entanglement fluctuations of a harmonic chain"};
    app.set_version_flag("--version", library_version());
    app.require_subcommand(1);
    Common common;

    auto* evolve = app.add_subcommand("evolve", "probe time series over the early and long windows");
    add_common(evolve, common);
    EvolveArgs ev;
    evolve->add_option("--window", ev.window, "early, long or both")->check(CLI::IsMember({"early", "long", "both"}));
    evolve->add_option("--count", ev.count, "points per window")->check(CLI::PositiveNumber);
    evolve->add_option("--dt", ev.dt, "long-window stride (default: golden-ratio step)");
    evolve->add_option("--early-span", ev.early_span, "early window length in revival times");
    evolve->add_option("--long-start", ev.long_start, "long window start in revival times");

    auto* torus = app.add_subcommand("torus", "probe values on uniform torus samples");
    add_common(torus, common);
    int torus_samples = 2000;
    torus->add_option("--samples", torus_samples, "number of torus points")->check(CLI::PositiveNumber);

    auto* stats = app.add_subcommand("stats", "tails, concentration fits, Lipschitz ratio and b/c estimates");
    add_common(stats, common);
    StatsArgs st;
    stats->add_option("--samples", st.samples, "torus points for tails and variance")->check(CLI::PositiveNumber);
    stats->add_option("--sobolev-samples", st.sobolev_samples, "torus points for the extremal table")->check(CLI::PositiveNumber);
    stats->add_option("--eps-points", st.eps_points, "deviation grid size")->check(CLI::PositiveNumber);

    auto* sobolev = app.add_subcommand("sobolev", "log-Sobolev diagnostics per u");
    add_common(sobolev, common);
    int sob_samples = 500, per_side = 60;
    sobolev->add_option("--samples", sob_samples, "torus points")->check(CLI::PositiveNumber);
    sobolev->add_option("--per-side", per_side, "u-grid points per sign")->check(CLI::PositiveNumber);

    auto* sweep = app.add_subcommand("sweep", "variance scaling over (L, L_A)");
    add_common(sweep, common);
    SweepArgs sw;
    sweep->add_option("--L-list", sw.L_list, "chain lengths")->delimiter(',');
    sweep->add_option("--LA-list", sw.L_A_list, "subsystem lengths")->delimiter(',');
    sweep->add_option("--samples", sw.options.samples, "torus points per sampled grid point");
    sweep->add_option("--gradient-samples", sw.options.gradient_samples, "torus points per gradient-route point");
    sweep->add_option("--gradient-above", sw.options.gradient_route_above, "L beyond which the gradient route is used");
    sweep->add_flag("--quadrature", sw.options.with_quadrature, "attach analytic a, b");

    auto* dual = app.add_subcommand("dualcheck", "boson-fermion duality invariants");
    add_common(dual, common);
    int fock_L = 8;
    dual->add_option("--fock-L", fock_L, "chain length of the Fock-space oracle")->check(CLI::Range(2, 12));

    auto* self = app.add_subcommand("selftest", "fast internal consistency checks");
    add_common(self, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*evolve) return cmd_evolve(common, ev);
        if (*torus) return cmd_torus(common, torus_samples);
        if (*stats) return cmd_stats(common, st);
        if (*sobolev) return cmd_sobolev(common, sob_samples, per_side);
        if (*sweep) return cmd_sweep(common, sw);
        if (*dual) return cmd_dualcheck(common, fock_L);
        if (*self) return cmd_selftest(common);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return 0;
}
