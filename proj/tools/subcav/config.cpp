#include "subcav/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace subcav::cli {

namespace {

[[noreturn]] void config_error(const std::string& message)
{
    fail(ErrorKind::Config, message);
}

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

/// A JSON object whose keys are checked against a fixed list on construction.
class Block
{
public:
    Block(const json& j, std::string path, std::initializer_list<const char*> allowed,
          std::vector<AuditEntry>& audit)
        : j_(j), path_(std::move(path)), audit_(audit)
    {
        if (!j_.is_object()) {
            config_error("'" + path_ + "' must be an object");
        }
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto& item : j_.items()) {
            if (!ok.count(item.key())) {
                config_error("unknown key '" + join(path_, item.key()) + "'");
            }
        }
    }

    bool has(const std::string& key) const { return j_.contains(key); }
    std::string key(const std::string& k) const { return join(path_, k); }
    const json& raw(const std::string& k) const { return j_.at(k); }

    const json& require(const std::string& k) const
    {
        if (!has(k)) {
            config_error("missing required key '" + key(k) + "'");
        }
        return j_.at(k);
    }

    double number(const std::string& k) const { return as_number(require(k), k); }

    std::optional<double> opt_number(const std::string& k) const
    {
        if (!has(k)) {
            return std::nullopt;
        }
        return as_number(j_.at(k), k);
    }

    double number_or(const std::string& k, double fallback) const { return opt_number(k).value_or(fallback); }

    double positive(const std::string& k) const
    {
        const double v = number(k);
        if (!(v > 0.0)) {
            config_error("'" + key(k) + "' must be positive");
        }
        return v;
    }

    std::uint64_t count(const std::string& k, std::uint64_t fallback, std::uint64_t min_value = 1) const
    {
        if (!has(k)) {
            return fallback;
        }
        const auto& v = j_.at(k);
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
            config_error("'" + key(k) + "' must be a non-negative integer");
        }
        const auto n = v.get<std::uint64_t>();
        if (n < min_value) {
            config_error("'" + key(k) + "' must be at least " + std::to_string(min_value));
        }
        return n;
    }

    std::string string(const std::string& k) const
    {
        const auto& v = require(k);
        if (!v.is_string()) {
            config_error("'" + key(k) + "' must be a string");
        }
        return v.get<std::string>();
    }

    std::string choice(const std::string& k, std::initializer_list<const char*> options,
                       std::optional<std::string> fallback = std::nullopt) const
    {
        if (!has(k) && fallback) {
            return *fallback;
        }
        const auto s = string(k);
        for (const char* o : options) {
            if (s == o) {
                return s;
            }
        }
        std::string list;
        for (const char* o : options) {
            list += list.empty() ? o : std::string("|") + o;
        }
        config_error("'" + key(k) + "' must be one of " + list + ", got '" + s + "'");
    }

    bool boolean(const std::string& k, bool fallback) const
    {
        if (!has(k)) {
            return fallback;
        }
        if (!j_.at(k).is_boolean()) {
            config_error("'" + key(k) + "' must be true or false");
        }
        return j_.at(k).get<bool>();
    }

    std::vector<double> numbers(const std::string& k) const
    {
        const auto& v = require(k);
        if (!v.is_array()) {
            config_error("'" + key(k) + "' must be an array of numbers");
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(as_number(v[i], k + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    Block child(const std::string& k, std::initializer_list<const char*> allowed) const
    {
        return Block(require(k), key(k), allowed, audit_);
    }

    double converted(const std::string& k, double input, const char* in_unit, double factor,
                     const char* cgs_unit) const
    {
        const double v = input * factor;
        audit_.push_back({key(k), input, in_unit, v, cgs_unit});
        return v;
    }

    double length_um(const std::string& k) const
    {
        const double v = number(k);
        if (!(v > 0.0)) {
            config_error("'" + key(k) + "' must be positive");
        }
        return converted(k, v, "um", units::cm_per_um, "cm");
    }

    double energy_meV(const std::string& k, bool allow_zero = false) const
    {
        const double v = number(k);
        if (allow_zero ? !(v >= 0.0) : !(v > 0.0)) {
            config_error("'" + key(k) + "' must be " + (allow_zero ? "non-negative" : "positive"));
        }
        return converted(k, v, "meV", units::erg_per_meV, "erg");
    }

    double frequency_meV(const std::string& k) const
    {
        const double v = number(k);
        if (!(v > 0.0)) {
            config_error("'" + key(k) + "' must be positive");
        }
        return converted(k, v, "meV", units::erg_per_meV / units::hbar, "rad/s");
    }

    /// A rate given as `<name>_meV` (hbar * rate) or `<name>_per_ps`.
    std::optional<double> rate(const std::string& name, bool allow_zero) const
    {
        const auto k_mev = name + "_meV";
        const auto k_ps = name + "_per_ps";
        if (has(k_mev) && has(k_ps)) {
            config_error("give only one of '" + key(k_mev) + "' and '" + key(k_ps) + "'");
        }
        std::optional<double> out;
        std::string used;
        if (has(k_mev)) {
            used = k_mev;
            out = converted(k_mev, number(k_mev), "meV", units::erg_per_meV / units::hbar, "rad/s");
        } else if (has(k_ps)) {
            used = k_ps;
            out = converted(k_ps, number(k_ps), "1/ps", 1e12, "rad/s");
        }
        if (out && (allow_zero ? !(*out >= 0.0) : !(*out > 0.0))) {
            config_error("'" + key(used) + "' must be " + (allow_zero ? "non-negative" : "positive"));
        }
        return out;
    }

    double required_rate(const std::string& name, bool allow_zero) const
    {
        const auto r = rate(name, allow_zero);
        if (!r) {
            config_error("missing required key '" + key(name + "_meV") + "' (or '" + key(name + "_per_ps") + "')");
        }
        return *r;
    }

private:
    double as_number(const json& v, const std::string& k) const
    {
        if (!v.is_number()) {
            config_error("'" + key(k) + "' must be a number");
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            config_error("'" + key(k) + "' must be finite");
        }
        return d;
    }

    const json& j_;
    std::string path_;
    std::vector<AuditEntry>& audit_;
};

void parse_stack(const Block& root, RunConfig& cfg)
{
    const auto s = root.child("stack", {"layers"});
    const auto& layers = s.require("layers");
    if (!layers.is_array() || layers.empty()) {
        config_error("'stack.layers' must be a non-empty array");
    }
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const Block l(layers[i], "stack.layers[" + std::to_string(i) + "]", {"thickness_um", "model"}, cfg.audit);
        LayerConfig layer;
        layer.thickness = l.length_um("thickness_um");
        const auto& mj = l.require("model");
        const std::string mpath = l.key("model");
        const Block probe(mj, mpath, {"type", "eps", "eps_inf", "plasma_meV", "resonance_meV"}, cfg.audit);
        layer.model.type = probe.choice("type", {"constant", "lorentz"});
        if (layer.model.type == "constant") {
            const Block m(mj, mpath, {"type", "eps"}, cfg.audit);
            layer.model.eps = m.positive("eps");
        } else {
            const Block m(mj, mpath, {"type", "eps_inf", "plasma_meV", "resonance_meV"}, cfg.audit);
            layer.model.eps_inf = m.positive("eps_inf");
            layer.model.plasma = m.frequency_meV("plasma_meV");
            layer.model.resonance = m.frequency_meV("resonance_meV");
        }
        cfg.layers.push_back(layer);
    }
}

void parse_mode(const Block& root, RunConfig& cfg)
{
    const auto& mj = root.require("mode");
    const Block probe(mj, "mode", {"type", "N", "qx_per_um", "qy_per_um", "bracket_meV"}, cfg.audit);
    ModeConfig m;
    m.type = probe.choice("type", {"plane_wave", "waveguide", "cavity"});
    auto wavenumber = [&](const Block& b, const std::string& k) {
        return b.converted(k, b.number(k), "1/um", 1.0 / units::cm_per_um, "1/cm");
    };
    if (m.type == "plane_wave") {
        const Block b(mj, "mode", {"type", "qx_per_um", "qy_per_um", "bracket_meV"}, cfg.audit);
        m.qx = wavenumber(b, "qx_per_um");
        m.qy = wavenumber(b, "qy_per_um");
    } else if (m.type == "waveguide") {
        const Block b(mj, "mode", {"type", "qx_per_um", "bracket_meV"}, cfg.audit);
        m.qx = wavenumber(b, "qx_per_um");
    } else {
        const Block b(mj, "mode", {"type", "N", "bracket_meV"}, cfg.audit);
        m.N = static_cast<int>(b.count("N", 1, 1));
    }
    if (probe.has("bracket_meV")) {
        const auto br = probe.numbers("bracket_meV");
        if (br.size() != 2 || !(br[0] > 0.0) || !(br[1] > br[0])) {
            config_error("'mode.bracket_meV' must be [lo, hi] with 0 < lo < hi");
        }
        m.bracket = FrequencyBracket{probe.converted("bracket_meV[0]", br[0], "meV", units::erg_per_meV / units::hbar, "rad/s"),
                                     probe.converted("bracket_meV[1]", br[1], "meV", units::erg_per_meV / units::hbar, "rad/s")};
    }
    cfg.mode = m;
}

void parse_emitter(const Block& root, RunConfig& cfg)
{
    const auto e = root.child("emitter", {"well", "k_grid", "populations", "gamma21_meV", "gamma21_per_ps", "degeneracy"});
    EmitterConfig em;

    const auto& wj = e.require("well");
    const Block wprobe(wj, "emitter.well", {"type", "width_nm", "z_nm", "psi1", "psi2", "delta_e_meV", "masses_m0"},
                       cfg.audit);
    em.well.type = wprobe.choice("type", {"infinite", "sampled"});
    const bool infinite = em.well.type == "infinite";
    const Block w = infinite
                        ? Block(wj, "emitter.well", {"type", "width_nm", "delta_e_meV", "masses_m0"}, cfg.audit)
                        : Block(wj, "emitter.well", {"type", "z_nm", "psi1", "psi2", "delta_e_meV", "masses_m0"}, cfg.audit);
    if (infinite) {
        const double v = w.positive("width_nm");
        em.well.width = w.converted("width_nm", v, "nm", units::cm_per_nm, "cm");
    } else {
        for (double z : w.numbers("z_nm")) {
            em.well.z.push_back(z * units::cm_per_nm);
        }
        em.well.psi1 = w.numbers("psi1");
        em.well.psi2 = w.numbers("psi2");
        if (em.well.psi1.size() != em.well.z.size() || em.well.psi2.size() != em.well.z.size()) {
            config_error("'emitter.well.psi1' and 'emitter.well.psi2' must match 'emitter.well.z_nm' in length");
        }
    }
    em.well.delta_e = w.energy_meV("delta_e_meV");
    const auto masses = w.numbers("masses_m0");
    if (masses.size() != 2 || !(masses[0] > 0.0) || !(masses[1] > 0.0)) {
        config_error("'emitter.well.masses_m0' must be two positive numbers");
    }
    em.well.m1 = w.converted("masses_m0[0]", masses[0], "m0", units::electron_mass, "g");
    em.well.m2 = w.converted("masses_m0[1]", masses[1], "m0", units::electron_mass, "g");

    const auto kg = e.child("k_grid", {"k_max_per_nm", "points"});
    const double kmax = kg.positive("k_max_per_nm");
    em.k_max = kg.converted("k_max_per_nm", kmax, "1/nm", 1.0 / units::cm_per_nm, "1/cm");
    em.points = kg.count("points", 64, 16);

    const auto& pj = e.require("populations");
    const Block pprobe(pj, "emitter.populations",
                       {"type", "mu1_meV", "mu2_meV", "T_meV", "n1", "n2", "k_cut_per_nm"}, cfg.audit);
    auto& pop = em.populations;
    pop.type = pprobe.choice("type", {"fermi", "uniform", "table"});
    if (pop.type == "fermi") {
        const Block p(pj, "emitter.populations", {"type", "mu1_meV", "mu2_meV", "T_meV"}, cfg.audit);
        pop.mu1 = p.converted("mu1_meV", p.number("mu1_meV"), "meV", units::erg_per_meV, "erg");
        pop.mu2 = p.converted("mu2_meV", p.number("mu2_meV"), "meV", units::erg_per_meV, "erg");
        pop.temperature = p.energy_meV("T_meV", true);
    } else if (pop.type == "uniform") {
        const Block p(pj, "emitter.populations", {"type", "n1", "n2", "k_cut_per_nm"}, cfg.audit);
        pop.n1 = p.number("n1");
        pop.n2 = p.number("n2");
        if (!(pop.n1 >= 0.0 && pop.n1 <= 1.0) || !(pop.n2 >= 0.0 && pop.n2 <= 1.0)) {
            config_error("'emitter.populations.n1' and 'n2' must lie in [0, 1]");
        }
        if (p.has("k_cut_per_nm")) {
            const double kc = p.positive("k_cut_per_nm");
            pop.k_cut = p.converted("k_cut_per_nm", kc, "1/nm", 1.0 / units::cm_per_nm, "1/cm");
        }
    } else {
        const Block p(pj, "emitter.populations", {"type", "n1", "n2"}, cfg.audit);
        pop.n1_table = p.numbers("n1");
        pop.n2_table = p.numbers("n2");
        if (pop.n1_table.size() != em.points || pop.n2_table.size() != em.points) {
            config_error("'emitter.populations.n1' and 'n2' must have 'emitter.k_grid.points' entries");
        }
    }
    em.gamma21 = e.required_rate("gamma21", false);
    em.degeneracy = e.has("degeneracy") ? e.positive("degeneracy") : 2.0;
    cfg.emitter = em;
}

void parse_langevin(const Block& root, RunConfig& cfg)
{
    const auto l = root.child("langevin", {"gamma_r_meV", "gamma_r_per_ps", "gamma_sigma_meV", "gamma_sigma_per_ps",
                                           "T_r_meV", "T_sigma_meV", "absorb_shift", "omega_nu_meV"});
    LangevinConfig lc;
    lc.params.gamma_r = l.required_rate("gamma_r", true);
    lc.params.gamma_sigma = l.rate("gamma_sigma", true).value_or(0.0);
    lc.params.T_r = l.has("T_r_meV") ? l.energy_meV("T_r_meV", true) : 0.0;
    lc.params.T_sigma = l.has("T_sigma_meV") ? l.energy_meV("T_sigma_meV", true) : 0.0;
    lc.absorb_shift = l.boolean("absorb_shift", false);
    if (l.has("omega_nu_meV")) {
        lc.omega_nu = l.frequency_meV("omega_nu_meV");
    }
    cfg.langevin = lc;
}

void parse_sweep(const Block& root, RunConfig& cfg)
{
    const auto s = root.child("sweep", {"parameter", "from", "to", "points", "scale"});
    SweepConfig sw;
    sw.parameter = s.string("parameter");
    sw.from = s.number("from");
    sw.to = s.number("to");
    sw.points = s.count("points", 11, 1);
    sw.scale = s.choice("scale", {"linear", "log"}, std::string("linear"));
    if (sw.scale == "log" && !(sw.from > 0.0 && sw.to > 0.0)) {
        config_error("'sweep.from' and 'sweep.to' must be positive for a log sweep");
    }
    cfg.sweep = sw;
}

void parse_fig2(const Block& root, RunConfig& cfg)
{
    const auto f = root.child("fig2", {"gamma21_meV", "gamma21_per_ps", "g_over_gamma21", "points", "ratio_min",
                                       "ratio_max", "inset_points", "inset_max_detuning"});
    auto& c = cfg.fig2;
    if (const auto g = f.rate("gamma21", false)) {
        c.gamma21 = *g;
    }
    if (f.has("g_over_gamma21")) {
        c.g_over_gamma21 = f.number("g_over_gamma21");
        if (!(*c.g_over_gamma21 >= 0.0)) {
            config_error("'fig2.g_over_gamma21' must be non-negative");
        }
    }
    c.points = f.count("points", c.points, 2);
    c.ratio_min = f.number_or("ratio_min", c.ratio_min);
    c.ratio_max = f.number_or("ratio_max", c.ratio_max);
    if (!(c.ratio_min > 0.0) || !(c.ratio_max > c.ratio_min)) {
        config_error("'fig2.ratio_min' and 'fig2.ratio_max' must satisfy 0 < min < max");
    }
    c.inset_points = f.count("inset_points", c.inset_points, 2);
    c.inset_max_detuning = f.number_or("inset_max_detuning", c.inset_max_detuning);
    if (!(c.inset_max_detuning > 0.0)) {
        config_error("'fig2.inset_max_detuning' must be positive");
    }
}

void parse_midir(const Block& root, RunConfig& cfg)
{
    const auto m = root.child("midir", {"energies_meV", "linewidth_meV", "gamma_r_over_gamma21", "lambda_over_sqrt_eps_um"});
    auto& c = cfg.midir;
    if (m.has("energies_meV")) {
        c.energies_meV = m.numbers("energies_meV");
        for (double e : c.energies_meV) {
            if (!(e > 0.0)) {
                config_error("'midir.energies_meV' entries must be positive");
            }
        }
    }
    if (m.has("linewidth_meV")) {
        c.linewidth_meV = m.positive("linewidth_meV");
    }
    if (m.has("gamma_r_over_gamma21")) {
        c.gamma_r_over_gamma21 = m.numbers("gamma_r_over_gamma21");
        for (double r : c.gamma_r_over_gamma21) {
            if (!(r > 0.0)) {
                config_error("'midir.gamma_r_over_gamma21' entries must be positive");
            }
        }
    }
    if (m.has("lambda_over_sqrt_eps_um")) {
        c.lambda_over_sqrt_eps = m.length_um("lambda_over_sqrt_eps_um");
    }
}

void parse_validate(const Block& root, RunConfig& cfg)
{
    const auto v = root.child("validate", {"n_trajectories", "dt", "t_end", "burn_in", "k_modes", "seed", "noise_steps"});
    auto& c = cfg.validate;
    c.n_trajectories = v.count("n_trajectories", c.n_trajectories, 100);
    c.dt = v.number_or("dt", c.dt);
    c.t_end = v.number_or("t_end", c.t_end);
    c.burn_in = v.number_or("burn_in", c.burn_in);
    if (!(c.dt > 0.0) || !(c.t_end > c.burn_in) || !(c.burn_in >= 0.0)) {
        config_error("'validate' times must satisfy dt > 0 and 0 <= burn_in < t_end");
    }
    c.k_modes = v.count("k_modes", c.k_modes, 1);
    c.seed = v.count("seed", c.seed, 0);
    c.noise_steps = v.count("noise_steps", c.noise_steps, 1000);
}

void parse_parseval(const Block& root, RunConfig& cfg)
{
    const auto p = root.child("parseval", {"kx_per_um", "ky_per_um", "N"});
    auto& c = cfg.parseval;
    c.kx = p.converted("kx_per_um", p.number_or("kx_per_um", 0.0), "1/um", 1.0 / units::cm_per_um, "1/cm");
    c.ky = p.converted("ky_per_um", p.number_or("ky_per_um", 0.0), "1/um", 1.0 / units::cm_per_um, "1/cm");
    c.N = static_cast<int>(p.count("N", 1, 1));
}

}  // namespace

RunConfig parse_config(const json& doc)
{
    RunConfig cfg;
    cfg.source = doc;
    const Block root(doc, "",
                     {"geometry", "stack", "mode", "emitter", "langevin", "rates", "sweep", "fig2", "midir", "validate",
                      "parseval", "output", "units"},
                     cfg.audit);

    if (root.has("units")) {
        // the unit system is fixed; the block only documents it
        const auto u = root.child("units", {"length", "energy", "rate", "dipole"});
        const std::pair<const char*, std::initializer_list<const char*>> expected[] = {
            {"length", {"um/nm"}}, {"energy", {"meV"}}, {"rate", {"meV|1/ps"}}, {"dipole", {"e*nm"}}};
        for (const auto& [k, opts] : expected) {
            if (u.has(k)) {
                u.choice(k, opts);
            }
        }
    }
    if (root.has("geometry")) {
        const auto g = root.child("geometry", {"Lx_um", "Ly_um"});
        cfg.geometry_lateral = Geometry{g.length_um("Lx_um"), g.length_um("Ly_um"), 0.0};
    }
    if (root.has("stack")) {
        parse_stack(root, cfg);
    }
    if (root.has("mode")) {
        parse_mode(root, cfg);
    }
    if (root.has("emitter")) {
        parse_emitter(root, cfg);
    }
    if (root.has("langevin")) {
        parse_langevin(root, cfg);
    }
    if (root.has("rates")) {
        const auto r = root.child("rates", {"delta_omega_meV", "delta_omega_per_ps"});
        cfg.rates_delta_omega = r.required_rate("delta_omega", false);
    }
    if (root.has("sweep")) {
        parse_sweep(root, cfg);
    }
    if (root.has("fig2")) {
        parse_fig2(root, cfg);
    }
    if (!root.has("fig2") || !cfg.fig2.g_over_gamma21) {
        cfg.warnings.push_back("fig2.g_over_gamma21 not set; using g = 0");
    }
    if (root.has("midir")) {
        parse_midir(root, cfg);
    }
    if (root.has("validate")) {
        parse_validate(root, cfg);
    }
    if (root.has("parseval")) {
        parse_parseval(root, cfg);
    }
    if (root.has("output")) {
        const auto o = root.child("output", {"format"});
        cfg.format = o.choice("format", {"csv", "json"}, std::string("csv"));
    }
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        config_error("cannot read config file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        config_error("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

std::string config_hash(const json& doc)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : doc.dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

DielectricStack build_stack(const RunConfig& cfg)
{
    if (cfg.layers.empty()) {
        config_error("missing required key 'stack'");
    }
    std::vector<std::pair<double, DispersionModel>> slabs;
    for (const auto& l : cfg.layers) {
        if (l.model.type == "constant") {
            slabs.emplace_back(l.thickness, DispersionModel(ConstantPermittivity{l.model.eps}));
        } else {
            slabs.emplace_back(l.thickness, DispersionModel(LorentzPermittivity{l.model.eps_inf, l.model.plasma,
                                                                                l.model.resonance}));
        }
    }
    return DielectricStack::from_thicknesses(slabs);
}

Geometry build_geometry(const RunConfig& cfg, const DielectricStack& stack)
{
    if (!cfg.geometry_lateral) {
        config_error("missing required key 'geometry'");
    }
    return make_geometry(cfg.geometry_lateral->Lx, cfg.geometry_lateral->Ly, stack);
}

ModeIndex build_mode(const RunConfig& cfg)
{
    if (!cfg.mode) {
        config_error("missing required key 'mode'");
    }
    const auto& m = *cfg.mode;
    if (m.type == "plane_wave") {
        return PlaneWave{m.qx, m.qy};
    }
    if (m.type == "waveguide") {
        return Waveguide{m.qx};
    }
    return Cavity{m.N};
}

EmitterSheet build_sheet(const RunConfig& cfg)
{
    if (!cfg.emitter) {
        config_error("missing required key 'emitter'");
    }
    const auto& e = *cfg.emitter;
    const Envelope lower = e.well.type == "infinite" ? Envelope::infinite_well(1, e.well.width)
                                                     : Envelope::sampled(e.well.z, e.well.psi1);
    const Envelope upper = e.well.type == "infinite" ? Envelope::infinite_well(2, e.well.width)
                                                     : Envelope::sampled(e.well.z, e.well.psi2);
    const Subband band1{0.0, e.well.m1, lower};
    const Subband band2{e.well.delta_e, e.well.m2, upper};

    std::vector<double> k(e.points);
    for (std::size_t i = 0; i < e.points; ++i) {
        k[i] = e.k_max * static_cast<double>(i) / static_cast<double>(e.points - 1);
    }
    std::vector<double> n1(e.points);
    std::vector<double> n2(e.points);
    const auto& p = e.populations;
    if (p.type == "fermi") {
        n1 = fermi_occupation(band1, k, p.mu1, p.temperature);
        n2 = fermi_occupation(band2, k, p.mu2, p.temperature);
    } else if (p.type == "uniform") {
        for (std::size_t i = 0; i < e.points; ++i) {
            const bool inside = !p.k_cut || k[i] <= *p.k_cut;
            n1[i] = inside ? p.n1 : 0.0;
            n2[i] = inside ? p.n2 : 0.0;
        }
    } else {
        n1 = p.n1_table;
        n2 = p.n2_table;
    }
    std::vector<double> gamma(e.points, e.gamma21);
    return EmitterSheet(band1, band2, std::move(k), std::move(n1), std::move(n2), std::move(gamma), e.degeneracy);
}

const LangevinConfig& require_langevin(const RunConfig& cfg)
{
    if (!cfg.langevin) {
        config_error("missing required key 'langevin'");
    }
    return *cfg.langevin;
}

}  // namespace subcav::cli
