#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "subcav/config.hpp"
#include "subcav/output.hpp"

namespace subcav::cli {

inline constexpr const char* kUnits =
    "lengths um/nm; energies and hbar*rates meV; rates 1/s; power W; dipoles e*nm; wavenumbers 1/um";

struct Options
{
    std::string command;
    std::optional<std::string> config_path;
    std::optional<std::string> out;
    unsigned threads = 1;
    std::optional<std::uint64_t> seed;
    bool audit_units = false;
};

/// Exit codes.
enum ExitCode : int { kOk = 0, kConfigError = 2, kPhysicsError = 3, kNumericalError = 4 };

/// A computed table plus the metadata lines that go with it.
struct Report
{
    std::string command;
    Table table;
    std::vector<std::pair<std::string, std::string>> extra;
};

// Individual pipelines; each returns its tables without writing anything.
Report rates_report(const RunConfig& cfg);
Report steady_state_report(const RunConfig& cfg);
Report sweep_report(const RunConfig& cfg, unsigned threads);
/// Main curve and detuning inset.
std::pair<Report, Report> fig2_reports(const RunConfig& cfg);
Report midir_report(const RunConfig& cfg);
Report parseval_report(const RunConfig& cfg);

struct ValidationOutcome
{
    std::vector<CheckReport> checks;
    std::vector<double> runtimes;
};
ValidationOutcome run_validation(const ValidateConfig& cfg, unsigned threads);

/// Runs one subcommand end to end. Diagnostics go to `err` as a single
/// `error kind=... code=... message="..."` line; the return value is the exit code.
int run(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace subcav::cli
