#pragma once

// Run configuration for subcav-cli: JSON in, checked against a fixed key set,
// converted once to CGS at the boundary.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "subcav/subcav.hpp"

namespace subcav::cli {

using nlohmann::json;

/// One converted input, kept for --audit-units.
struct AuditEntry
{
    std::string key;
    double input = 0.0;
    std::string input_unit;
    double cgs = 0.0;
    std::string cgs_unit;
};

struct ModelConfig
{
    std::string type;  // constant | lorentz
    double eps = 1.0;
    double eps_inf = 1.0;
    double plasma = 0.0;     // rad/s
    double resonance = 0.0;  // rad/s
};

struct LayerConfig
{
    double thickness = 0.0;  // cm
    ModelConfig model;
};

struct ModeConfig
{
    std::string type;  // plane_wave | waveguide | cavity
    int N = 1;
    double qx = 0.0;  // 1/cm
    double qy = 0.0;
    std::optional<FrequencyBracket> bracket;
};

struct WellConfig
{
    std::string type;  // infinite | sampled
    double width = 0.0;  // cm
    std::vector<double> z;  // cm
    std::vector<double> psi1;
    std::vector<double> psi2;
    double delta_e = 0.0;  // erg
    double m1 = 0.0;       // g
    double m2 = 0.0;
};

struct PopulationConfig
{
    std::string type;  // fermi | uniform | table
    double mu1 = 0.0;  // erg, from the lower subband edge
    double mu2 = 0.0;
    double temperature = 0.0;  // erg
    double n1 = 0.0;
    double n2 = 0.0;
    std::optional<double> k_cut;  // 1/cm
    std::vector<double> n1_table;
    std::vector<double> n2_table;
};

struct EmitterConfig
{
    WellConfig well;
    double k_max = 0.0;  // 1/cm
    std::size_t points = 64;
    PopulationConfig populations;
    double gamma21 = 0.0;  // rad/s
    double degeneracy = 2.0;
};

struct LangevinConfig
{
    LangevinParams params;
    bool absorb_shift = false;
    std::optional<double> omega_nu;  // rad/s
};

struct SweepConfig
{
    std::string parameter;
    double from = 0.0;
    double to = 0.0;
    std::size_t points = 11;
    std::string scale = "linear";
};

struct Fig2Config
{
    double gamma21 = units::omega_from_meV(5.0);
    std::optional<double> g_over_gamma21;
    std::size_t points = 201;
    double ratio_min = 1e-2;
    double ratio_max = 1e2;
    std::size_t inset_points = 101;
    double inset_max_detuning = 5.0;  // in units of gamma21
};

struct MidirConfig
{
    std::vector<double> energies_meV{100.0, 200.0};
    double linewidth_meV = 10.0;  // full width 2 hbar gamma21
    std::vector<double> gamma_r_over_gamma21{1e-3, 0.01, 0.1, 0.5, 1.0, 2.0};
    std::optional<double> lambda_over_sqrt_eps;  // cm
};

struct ValidateConfig
{
    std::size_t n_trajectories = 2000;
    double dt = 2e-3;  // in units of 1/gamma21
    double t_end = 50.0;
    double burn_in = 5.0;
    std::size_t k_modes = 16;
    std::uint64_t seed = 1;
    std::size_t noise_steps = 1000000;
};

struct ParsevalConfig
{
    double kx = 0.0;  // 1/cm
    double ky = 0.0;
    int N = 1;
};

struct RunConfig
{
    json source;
    std::optional<Geometry> geometry_lateral;  // Lz filled in from the stack
    std::vector<LayerConfig> layers;
    std::optional<ModeConfig> mode;
    std::optional<EmitterConfig> emitter;
    std::optional<LangevinConfig> langevin;
    std::optional<double> rates_delta_omega;  // rad/s
    std::optional<SweepConfig> sweep;
    Fig2Config fig2;
    MidirConfig midir;
    ValidateConfig validate;
    ParsevalConfig parseval;
    std::string format = "csv";
    std::vector<AuditEntry> audit;
    std::vector<std::string> warnings;
};

/// Parses and checks a configuration document. Throws Error(Config) naming the
/// offending key on missing, unknown or out-of-range entries.
RunConfig parse_config(const json& doc);

RunConfig load_config(const std::string& path);

/// FNV-1a 64-bit hash of the canonical dump, as 16 hex digits.
std::string config_hash(const json& doc);

// Builders for library objects. Each throws Error(Config) if the block is absent.
DielectricStack build_stack(const RunConfig& cfg);
Geometry build_geometry(const RunConfig& cfg, const DielectricStack& stack);
ModeIndex build_mode(const RunConfig& cfg);
EmitterSheet build_sheet(const RunConfig& cfg);
const LangevinConfig& require_langevin(const RunConfig& cfg);

}  // namespace subcav::cli
