#include <iostream>

#include "CLI11.hpp"

#include "subcav/commands.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Spontaneous emission and steady-state emission of intersubband sheets in subwavelength cavities"};
    app.set_version_flag("--version", std::string(SUBCAV_VERSION));
    app.require_subcommand(1);

    subcav::cli::Options opt;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "output file (default: stdout)");
        sub->add_option("--threads", opt.threads, "worker threads for sweeps and trajectories")
            ->check(CLI::Range(1u, 256u));
        sub->add_option("--seed", seed, "random seed, overrides validate.seed");
        sub->add_flag("--audit-units", opt.audit_units, "print every converted input in CGS to stderr");
    };

    const std::pair<const char*, const char*> commands[] = {
        {"rates", "golden-rule rates for all mode geometries and the Purcell ratio"},
        {"steady-state", "Langevin steady state of one cavity mode"},
        {"sweep", "steady state over a range of one configuration value"},
        {"fig2", "normalized effective Q against cavity linewidth, with detuning inset"},
        {"midir", "mid-infrared Q_eff and geometric-factor table"},
        {"validate", "Monte Carlo and noise oracle suite"},
        {"verify-parseval", "convergence of the lateral overlap sums"},
    };
    for (const auto& [name, help] : commands) {
        add_common(app.add_subcommand(name, help));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        std::cerr << "error kind=Config code=2 message=\"" << e.what() << "\"\n";
        return subcav::cli::kConfigError;
    }
    const auto* sub = app.get_subcommands().front();
    opt.command = sub->get_name();
    if (sub->count("--seed") > 0) {
        opt.seed = seed;
    }
    return subcav::cli::run(opt, std::cout, std::cerr);
}
