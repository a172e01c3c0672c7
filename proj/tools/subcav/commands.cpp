#include "subcav/commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <limits>
#include <fstream>
#include <sstream>
#include <thread>

namespace subcav::cli {

namespace {

[[noreturn]] void config_error(const std::string& message)
{
    fail(ErrorKind::Config, message);
}

double to_meV(double omega) { return units::meV_from_omega(omega); }
double to_e_nm(double d) { return d / units::dipole_e_nm(1.0); }
double to_watt(double erg_per_s) { return erg_per_s * 1e-7; }
double to_um(double cm) { return units::to_um(cm); }

struct Field
{
    std::string name;
    Cell value;
};

// ---------------------------------------------------------------- rates

Cell guarded(std::string& status, const std::function<double()>& f)
{
    try {
        status = "ok";
        return f();
    } catch (const Error& e) {
        // not applicable to this geometry; numerical trouble still aborts the run
        if (category(e.kind()) != ErrorCategory::Physics) {
            throw;
        }
        status = std::string(to_string(e.kind()));
        return std::numeric_limits<double>::quiet_NaN();
    }
}

// -------------------------------------------------------- steady state

struct SteadyPoint
{
    double omega_mode = 0.0;
    double omega_nu = 0.0;
    double rabi2 = 0.0;
    SpectralResult ss;
};

SteadyPoint compute_steady(const RunConfig& cfg)
{
    const auto stack = build_stack(cfg);
    const auto geometry = build_geometry(cfg, stack);
    const auto mode = build_mode(cfg);
    const auto* cavity = std::get_if<Cavity>(&mode);
    if (!cavity) {
        config_error("steady-state needs 'mode.type' = cavity");
    }
    const auto& lc = require_langevin(cfg);
    const auto sheet = build_sheet(cfg);

    SteadyPoint p;
    p.omega_mode = solve_dispersion(stack, geometry, *cavity, cfg.mode->bracket).omega;
    p.omega_nu = lc.omega_nu.value_or(p.omega_mode);
    p.rabi2 = rabi_squared(effective_dipole(sheet, stack, p.omega_nu), stack, geometry, p.omega_nu);
    const auto ensemble = spectral_ensemble(sheet, geometry);
    p.ss = steady_state(ensemble, p.rabi2, p.omega_nu, lc.params, lc.absorb_shift);
    return p;
}

std::vector<Field> steady_fields(const SteadyPoint& p)
{
    const auto& s = p.ss;
    return {
        {"hbar_omega_mode_meV", to_meV(p.omega_mode)},
        {"hbar_omega_nu_meV", to_meV(s.omega_nu)},
        {"hbar_rabi_meV", to_meV(std::sqrt(p.rabi2))},
        {"hbar_shift_meV", to_meV(s.delta_omega_shift)},
        {"hbar_gamma_medium_meV", to_meV(s.gamma_medium)},
        {"inverted", s.inverted ? 1.0 : 0.0},
        {"hbar_gamma_total_meV", to_meV(s.gamma_total)},
        {"photon_number", s.photon_number},
        {"thermal_photons", s.thermal_photons},
        {"power_W", to_watt(s.power)},
        {"hbar_delta_omega_eff_meV", s.delta_omega_eff > 0.0 ? to_meV(s.delta_omega_eff) : 0.0},
        {"q_eff", s.q_eff},
        {"limit_narrow_W", to_watt(s.limit_narrow)},
        {"limit_wide_W", to_watt(s.limit_wide)},
        {"regime", to_string(s.regime)},
        {"n2_total", s.n2_total},
        {"hbar_omega21_mean_meV", to_meV(s.omega21_mean)},
    };
}

nlohmann::json::json_pointer sweep_pointer(const std::string& path)
{
    std::string p = "/";
    for (char c : path) {
        p += c == '.' ? '/' : c;
    }
    try {
        return nlohmann::json::json_pointer(p);
    } catch (const nlohmann::json::exception&) {
        config_error("'sweep.parameter' is not a valid key path: '" + path + "'");
    }
}

// ------------------------------------------------------------- fig2

double fig2_q_norm(double gamma21, double g, double ratio, double detuning)
{
    // omega21 drops out of Q_norm; any positive value will do
    const double omega21 = units::omega_from_meV(100.0);
    LangevinParams p;
    p.gamma_r = ratio * gamma21;
    p.gamma_sigma = g;
    return q_norm(gamma21, omega21, omega21 - detuning * gamma21, p);
}

std::string fmt(double v) { return format_number(v); }

// -------------------------------------------------------- validation

CheckReport mc_check(const std::string& name, const std::vector<EnsemblePoint>& bins, double rabi2,
                     double omega_nu, const LangevinParams& params, const SdeConfig& sde, unsigned threads)
{
    const double analytic = photon_number(bins, rabi2, omega_nu, params).total;
    const auto est = simulate_steady_state(bins, rabi2, omega_nu, params, sde, threads);
    CheckReport r;
    r.name = name;
    r.value = est.photon_number_mean;
    r.expected = analytic;
    r.tolerance = 3.0 * est.std_error;
    r.passed = std::abs(r.value - r.expected) <= r.tolerance;
    std::ostringstream d;
    d << "std_error=" << fmt(est.std_error) << " trajectories=" << est.n_effective_samples
      << " steps=" << est.steps_per_trajectory;
    r.detail = d.str();
    return r;
}

std::string json_line(const CheckReport& r, double seconds)
{
    nlohmann::ordered_json j;
    j["check"] = r.name;
    j["passed"] = r.passed;
    auto num = [](double v) -> nlohmann::ordered_json {
        if (!std::isfinite(v)) {
            return nullptr;
        }
        return std::stod(format_number(v));
    };
    j["value"] = num(r.value);
    j["expected"] = num(r.expected);
    j["tolerance"] = num(r.tolerance);
    j["detail"] = r.detail;
    j["seconds"] = std::round(seconds * 1000.0) / 1000.0;
    return j.dump();
}

std::string escape(std::string s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += (c == '\n') ? ' ' : c;
    }
    return out;
}

void emit_error(std::ostream& err, const std::string& kind, int code, const std::string& message)
{
    err << "error kind=" << kind << " code=" << code << " message=\"" << escape(message) << "\"\n";
}

std::string strip_kind(const Error& e)
{
    std::string m = e.what();
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    return m.rfind(prefix, 0) == 0 ? m.substr(prefix.size()) : m;
}

int exit_code(ErrorKind kind)
{
    switch (category(kind)) {
    case ErrorCategory::Config: return kConfigError;
    case ErrorCategory::Physics: return kPhysicsError;
    case ErrorCategory::Numerical: return kNumericalError;
    }
    return kNumericalError;
}

bool needs_config(const std::string& command)
{
    return command == "rates" || command == "steady-state" || command == "sweep" || command == "verify-parseval";
}

}  // namespace

Report rates_report(const RunConfig& cfg)
{
    const auto stack = build_stack(cfg);
    const auto geometry = build_geometry(cfg, stack);
    const auto sheet = build_sheet(cfg);
    if (!cfg.rates_delta_omega) {
        config_error("missing required key 'rates.delta_omega_meV'");
    }
    const double delta_omega = *cfg.rates_delta_omega;
    Cavity cavity{1};
    std::optional<FrequencyBracket> bracket;
    if (cfg.mode) {
        if (cfg.mode->type != "cavity") {
            config_error("rates evaluates the cavity rate; 'mode.type' must be cavity when given");
        }
        cavity.N = cfg.mode->N;
        bracket = cfg.mode->bracket;
    }
    const double omega21 = sheet.transition_freq(0.0);
    const auto eps = stack.uniform_constant_eps();

    Report rep;
    rep.command = "rates";
    rep.table.columns = {"quantity", "value", "status"};
    auto add = [&](const std::string& name, const std::function<double()>& f) {
        std::string status;
        const Cell v = guarded(status, f);
        rep.table.rows.push_back({name, v, status});
    };
    add("hbar_omega21_meV", [&] { return to_meV(omega21); });
    add("d_bare_e_nm", [&] { return to_e_nm(std::abs(bare_dipole(sheet))); });
    add("d_eff_e_nm", [&] { return to_e_nm(std::abs(effective_dipole(sheet, stack, omega21))); });
    add("G_um", [&] { return to_um(stack.g_factor(omega21)); });
    add("rate_planewave_per_s", [&] { return rate_planewave(sheet, stack, omega21).rate; });
    add("rate_waveguide_per_s", [&] { return rate_waveguide(sheet, stack, geometry, omega21).rate; });
    std::optional<RateResult> cav;
    add("hbar_omega_cavity_meV", [&] {
        cav = rate_cavity(sheet, stack, geometry, cavity, delta_omega, bracket);
        return to_meV(cav->omega_used);
    });
    add("rate_cavity_per_s", [&] {
        if (!cav) {
            fail(ErrorKind::NoPropagatingMode, "cavity mode unavailable");
        }
        return cav->rate;
    });
    add("rate_free_space_per_s", [&] {
        if (!eps) {
            fail(ErrorKind::NonUniformStack, "free-space rate needs a uniform nondispersive filling");
        }
        return rate_free_space(bare_dipole(sheet), omega21, *eps);
    });
    std::optional<PurcellResult> purcell;
    add("purcell_formula", [&] {
        purcell = purcell_ratio(sheet, geometry, stack, omega21, delta_omega);
        return purcell->formula;
    });
    add("purcell_direct_quotient", [&] {
        if (!purcell) {
            fail(ErrorKind::NonUniformStack, "Purcell ratio needs a uniform nondispersive filling");
        }
        return purcell->direct_quotient;
    });
    rep.extra.push_back({"hbar_delta_omega_meV", fmt(to_meV(delta_omega))});
    return rep;
}

Report steady_state_report(const RunConfig& cfg)
{
    const auto p = compute_steady(cfg);
    Report rep;
    rep.command = "steady-state";
    rep.table.columns = {"quantity", "value"};
    for (auto& f : steady_fields(p)) {
        rep.table.rows.push_back({f.name, f.value});
    }
    return rep;
}

Report sweep_report(const RunConfig& cfg, unsigned threads)
{
    if (!cfg.sweep) {
        config_error("missing required key 'sweep'");
    }
    const auto& sw = *cfg.sweep;
    const auto ptr = sweep_pointer(sw.parameter);
    if (!cfg.source.contains(ptr) || !cfg.source.at(ptr).is_number()) {
        config_error("'sweep.parameter' must name an existing numeric key, got '" + sw.parameter + "'");
    }
    if (sw.parameter.rfind("sweep.", 0) == 0) {
        config_error("'sweep.parameter' cannot point into the sweep block");
    }

    const std::size_t n = sw.points;
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        values[i] = sw.scale == "log" ? sw.from * std::pow(sw.to / sw.from, t) : sw.from + (sw.to - sw.from) * t;
    }
    std::vector<std::vector<Field>> results(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                auto doc = cfg.source;
                doc[ptr] = values[i];
                results[i] = steady_fields(compute_steady(parse_config(doc)));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const unsigned extra = std::min<std::size_t>(std::max(threads, 1u), n) - 1;
        for (unsigned t = 0; t < extra; ++t) {
            pool.emplace_back(worker);
        }
        worker();
    }
    // first failure in input order, independent of scheduling
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    Report rep;
    rep.command = "sweep";
    rep.table.columns.push_back(sw.parameter);
    for (const auto& f : results.front()) {
        rep.table.columns.push_back(f.name);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Cell> row{values[i]};
        for (auto& f : results[i]) {
            row.push_back(f.value);
        }
        rep.table.rows.push_back(std::move(row));
    }
    rep.extra.push_back({"sweep", sw.parameter + " " + sw.scale + " " + fmt(sw.from) + ".." + fmt(sw.to)});
    return rep;
}

std::pair<Report, Report> fig2_reports(const RunConfig& cfg)
{
    const auto& c = cfg.fig2;
    const double gamma21 = c.gamma21;
    const double g_ratio = c.g_over_gamma21.value_or(0.0);
    const double g = g_ratio * gamma21;

    Report main;
    main.command = "fig2";
    main.table.columns = {"gamma_r_over_gamma21", "q_norm", "q_norm_closed_form"};
    double best = -1.0;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < c.points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(c.points - 1);
        const double ratio = c.ratio_min * std::pow(c.ratio_max / c.ratio_min, t);
        const double q = fig2_q_norm(gamma21, g, ratio, 0.0);
        const double gt = ratio + g_ratio;
        const double closed = ratio / (gt * (gt + 1.0));
        main.table.rows.push_back({ratio, q, closed});
        if (q > best) {
            best = q;
            best_ratio = ratio;
        }
    }
    main.extra.push_back({"hbar_gamma21_meV", fmt(to_meV(gamma21))});
    main.extra.push_back({"g_over_gamma21", fmt(g_ratio)});
    if (g_ratio > 0.0) {
        main.extra.push_back({"peak_scan_gamma_r_over_gamma21", fmt(best_ratio)});
        main.extra.push_back({"peak_analytic_gamma_r_over_gamma21", fmt(std::sqrt(g_ratio * (g_ratio + 1.0)))});
    } else {
        main.extra.push_back({"peak_scan_gamma_r_over_gamma21", "none, monotone decreasing"});
    }

    Report inset;
    inset.command = "fig2-inset";
    inset.table.columns = {"detuning_over_gamma21", "q_norm"};
    for (std::size_t i = 0; i < c.inset_points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(c.inset_points - 1);
        const double x = -c.inset_max_detuning + 2.0 * c.inset_max_detuning * t;
        inset.table.rows.push_back({x, fig2_q_norm(gamma21, g, 1.0, x)});
    }
    inset.extra = {main.extra[0], main.extra[1], {"gamma_r_over_gamma21", "1"}};
    return {main, inset};
}

Report midir_report(const RunConfig& cfg)
{
    const auto& m = cfg.midir;
    Geometry geometry{units::um(3.0), units::um(3.0), units::um(0.2)};
    std::optional<double> eps;
    if (cfg.geometry_lateral && !cfg.layers.empty()) {
        const auto stack = build_stack(cfg);
        geometry = build_geometry(cfg, stack);
        eps = stack.uniform_constant_eps();
        if (!eps && !m.lambda_over_sqrt_eps) {
            fail(ErrorKind::NonUniformStack,
                 "midir needs 'midir.lambda_over_sqrt_eps_um' for a layered or dispersive stack");
        }
    }
    const double gamma21 = units::omega_from_meV(0.5 * m.linewidth_meV);

    Report rep;
    rep.command = "midir";
    rep.table.columns = {"hbar_omega21_meV",     "hbar_2gamma21_meV",
                         "gamma_r_over_gamma21", "q_eff",
                         "q_eff_closed_form",    "q_eff_limit",
                         "lambda_over_sqrt_eps_um", "geometric_factor",
                         "q_eff_times_geometric_factor"};
    for (double energy : m.energies_meV) {
        const double omega21 = units::omega_from_meV(energy);
        double lambda_eff = units::um(6.0);
        if (m.lambda_over_sqrt_eps) {
            lambda_eff = *m.lambda_over_sqrt_eps;
        } else if (eps) {
            lambda_eff = 2.0 * units::pi * units::c_light / (omega21 * std::sqrt(*eps));
        }
        const double geo = geometric_factor(lambda_eff, 1.0, geometry);
        for (double ratio : m.gamma_r_over_gamma21) {
            if (!(ratio > 0.0)) {
                config_error("'midir.gamma_r_over_gamma21' entries must be positive; the limit is a separate column");
            }
            LangevinParams p;
            p.gamma_r = ratio * gamma21;
            const double q = q_eff(gamma21, omega21, omega21, p);
            rep.table.rows.push_back({energy, m.linewidth_meV, ratio, q, omega21 / (2.0 * (gamma21 + p.gamma_r)),
                                      omega21 / (2.0 * gamma21), to_um(lambda_eff), geo, q * geo});
        }
    }
    rep.extra.push_back({"geometry_um", fmt(to_um(geometry.Lx)) + "x" + fmt(to_um(geometry.Ly)) + "x"
                                            + fmt(to_um(geometry.Lz))});
    rep.extra.push_back({"reference_values", "Q_eff ~ 50-100; enhancement of order 100 or higher (not asserted)"});
    return rep;
}

Report parseval_report(const RunConfig& cfg)
{
    if (!cfg.geometry_lateral) {
        config_error("missing required key 'geometry'");
    }
    const auto& g = *cfg.geometry_lateral;
    const auto& p = cfg.parseval;
    Report rep;
    rep.command = "verify-parseval";
    rep.table.columns = {"lobes", "sum_y", "sum_x", "product", "residual_y", "residual_x", "residual_product"};
    for (int lobes = 40; lobes <= 640; lobes *= 2) {
        const double y = parseval_y(p.ky, g.Ly, lobes);
        const double x = parseval_x(p.kx, g.Lx, p.N, lobes);
        rep.table.rows.push_back({static_cast<double>(lobes), y, x, x * y, std::abs(y - 0.5), std::abs(x - 0.5),
                                  std::abs(x * y - 0.25)});
    }
    rep.extra.push_back({"cavity_N", std::to_string(p.N)});
    return rep;
}

ValidationOutcome run_validation(const ValidateConfig& cfg, unsigned threads)
{
    ValidationOutcome out;
    auto timed = [&](const std::function<std::vector<CheckReport>()>& f) {
        const auto t0 = std::chrono::steady_clock::now();
        auto reports = f();
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (auto& r : reports) {
            out.checks.push_back(std::move(r));
            out.runtimes.push_back(dt / static_cast<double>(reports.size()));
        }
    };

    // Reference problems in units where gamma21 = 1.
    SdeConfig sde;
    sde.dt = cfg.dt;
    sde.t_end = cfg.t_end;
    sde.burn_in = cfg.burn_in;
    sde.n_trajectories = cfg.n_trajectories;
    sde.seed = cfg.seed;
    sde.k_modes = cfg.k_modes;
    LangevinParams loss;
    loss.gamma_r = 1.0;

    timed([&] {
        const std::vector<EnsemblePoint> bins{{100.0, 1.0, 1.0, 1.0, 1.0}};
        return std::vector{mc_check("mc_reference_case", bins, 0.01, 1.0, loss, sde, threads)};
    });
    timed([&] {
        std::vector<EnsemblePoint> bins;
        for (int i = 0; i < 16; ++i) {
            bins.push_back({10.0, 0.5, 0.5, 1.0 + 0.05 * i, 10.0 + 0.2 * (i - 7.5)});
        }
        auto s = sde;
        s.seed = cfg.seed + 1;
        return std::vector{mc_check("mc_detuned_ensemble", bins, 0.02, 10.0, loss, s, threads)};
    });
    timed([&] {
        auto p = loss;
        p.T_r = units::hbar / std::log(2.0);
        const std::vector<EnsemblePoint> bins{{1.0, 0.0, 0.0, 1.0, 1.0}};
        auto s = sde;
        s.seed = cfg.seed + 2;
        return std::vector{mc_check("mc_pure_thermal", bins, 0.01, 1.0, p, s, threads)};
    });
    timed([&] { return check_noise_correlators(1.0, 2.0, cfg.noise_steps, 1e-3, cfg.seed + 3); });
    timed([&] { return check_decay_without_noise({}); });
    timed([&] {
        DecayCheckOptions o;
        o.gamma = 0.5;
        o.detuning = 3.0;
        auto r = check_decay_without_noise(o);
        r[0].name = "amplitude_decay_detuned";
        return r;
    });
    timed([&] {
        const std::vector<EnsemblePoint> bins{{100.0, 1.0, 1.0, 1.0, 1.0}};
        const double analytic = photon_number(bins, 0.01, 1.0, loss).total;
        std::vector<double> lx;
        std::vector<double> ly;
        for (double dt : {1e-3, 5e-4, 2.5e-4}) {
            lx.push_back(std::log(dt));
            ly.push_back(std::log(std::abs(em_stationary_moment(bins, 0.01, 1.0, loss, dt) - analytic)));
        }
        const double mx = (lx[0] + lx[1] + lx[2]) / 3.0;
        const double my = (ly[0] + ly[1] + ly[2]) / 3.0;
        double sxy = 0.0;
        double sxx = 0.0;
        for (int i = 0; i < 3; ++i) {
            sxy += (lx[i] - mx) * (ly[i] - my);
            sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        CheckReport r;
        r.name = "em_weak_order";
        r.value = sxy / sxx;
        r.expected = 1.0;
        r.tolerance = 0.3;
        r.passed = std::abs(r.value - r.expected) <= r.tolerance;
        r.detail = "dt in {1e-3, 5e-4, 2.5e-4}/gamma21";
        return std::vector{r};
    });
    return out;
}

int run(const Options& opt, std::ostream& out, std::ostream& err)
{
    try {
        if (!opt.config_path && needs_config(opt.command)) {
            config_error("--config is required for '" + opt.command + "'");
        }
        RunConfig cfg = opt.config_path ? load_config(*opt.config_path) : parse_config(json::object());
        if (opt.seed) {
            cfg.validate.seed = *opt.seed;
        }
        if (opt.audit_units) {
            for (const auto& a : cfg.audit) {
                err << "audit " << a.key << " = " << fmt(a.input) << " " << a.input_unit << " -> " << fmt(a.cgs)
                    << " " << a.cgs_unit << "\n";
            }
        }
        if (opt.command == "fig2") {
            for (const auto& w : cfg.warnings) {
                err << "warning: " << w << "\n";
            }
        }

        Meta base;
        base.version = SUBCAV_VERSION;
        base.config_hash = config_hash(cfg.source);
        base.units = kUnits;

        std::ofstream file;
        std::ostream* target = &out;
        auto open = [&](const std::string& path) {
            file = std::ofstream(path, std::ios::binary | std::ios::trunc);
            if (!file) {
                config_error("cannot open output file '" + path + "'");
            }
            target = &file;
        };
        auto write = [&](const Report& r, std::ostream& os) {
            Meta meta = base;
            meta.command = r.command;
            meta.extra = r.extra;
            if (cfg.format == "json") {
                write_json(os, meta, r.table);
            } else {
                write_csv(os, meta, r.table);
            }
        };
        if (opt.out) {
            open(*opt.out);
        }

        if (opt.command == "rates") {
            write(rates_report(cfg), *target);
        } else if (opt.command == "steady-state") {
            write(steady_state_report(cfg), *target);
        } else if (opt.command == "sweep") {
            write(sweep_report(cfg, opt.threads), *target);
        } else if (opt.command == "fig2") {
            const auto [main, inset] = fig2_reports(cfg);
            write(main, *target);
            if (opt.out) {
                std::filesystem::path p(*opt.out);
                const auto inset_path = p.parent_path() / (p.stem().string() + "_inset" + p.extension().string());
                std::ofstream f(inset_path, std::ios::binary | std::ios::trunc);
                if (!f) {
                    config_error("cannot open output file '" + inset_path.string() + "'");
                }
                write(inset, f);
            } else {
                write(inset, *target);
            }
        } else if (opt.command == "midir") {
            write(midir_report(cfg), *target);
        } else if (opt.command == "verify-parseval") {
            write(parseval_report(cfg), *target);
        } else if (opt.command == "validate") {
            const auto outcome = run_validation(cfg.validate, opt.threads);
            std::size_t failed = 0;
            for (std::size_t i = 0; i < outcome.checks.size(); ++i) {
                const auto& c = outcome.checks[i];
                *target << json_line(c, outcome.runtimes[i]) << "\n";
                err << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << fmt(c.value)
                    << " expected=" << fmt(c.expected) << " tol=" << fmt(c.tolerance) << "\n";
                failed += c.passed ? 0 : 1;
            }
            err << outcome.checks.size() - failed << "/" << outcome.checks.size() << " checks passed\n";
            if (failed > 0) {
                target->flush();
                emit_error(err, "ValidationFailed", kNumericalError,
                           std::to_string(failed) + " of " + std::to_string(outcome.checks.size()) + " checks failed");
                return kNumericalError;
            }
        } else {
            config_error("unknown subcommand '" + opt.command + "'");
        }
        target->flush();
        return kOk;
    } catch (const Error& e) {
        const int code = exit_code(e.kind());
        emit_error(err, std::string(to_string(e.kind())), code, strip_kind(e));
        return code;
    } catch (const std::exception& e) {
        emit_error(err, "Internal", kNumericalError, e.what());
        return kNumericalError;
    }
}

}  // namespace subcav::cli
