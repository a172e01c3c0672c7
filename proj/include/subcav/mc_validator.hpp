#pragma once

// Monte Carlo oracle for the steady state. The polarization/field Langevin
// equations are linear, so a c-number SDE whose noise covariances equal the
// normal-ordered quantum correlators has E|c|^2 = <c+c>. Trajectories are
// integrated with Euler-Maruyama in the frame rotating at the cavity frequency.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "subcav/error.hpp"
#include "subcav/langevin.hpp"

namespace subcav {

struct SdeConfig
{
    /// s
    double dt = 1e-3;
    double t_end = 50.0;
    double burn_in = 5.0;
    std::size_t n_trajectories = 2000;
    std::uint64_t seed = 1;
    /// maximum number of k-bins the ensemble is merged into
    std::size_t k_modes = 16;
};

struct McEstimate
{
    double photon_number_mean = 0.0;
    /// standard error of the mean over trajectories
    double std_error = 0.0;
    std::size_t n_effective_samples = 0;
    std::size_t steps_per_trajectory = 0;
};

/// Merges consecutive ensemble points into at most `max_bins` bins. Each bin
/// keeps the summed weight and weight-averaged populations, dephasing and
/// transition frequency.
inline std::vector<EnsemblePoint> bin_ensemble(std::span<const EnsemblePoint> ensemble, std::size_t max_bins)
{
    if (max_bins == 0 || max_bins > 64) {
        fail(ErrorKind::InvalidArgument, "number of k-bins must be in [1, 64]");
    }
    if (ensemble.empty()) {
        fail(ErrorKind::InvalidArgument, "ensemble is empty");
    }
    const std::size_t bins = std::min(max_bins, ensemble.size());
    std::vector<EnsemblePoint> out;
    out.reserve(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const std::size_t lo = b * ensemble.size() / bins;
        const std::size_t hi = (b + 1) * ensemble.size() / bins;
        EnsemblePoint acc{0.0, 0.0, 0.0, 0.0, 0.0};
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& p = ensemble[i];
            acc.weight += p.weight;
            acc.n1 += p.weight * p.n1;
            acc.n2 += p.weight * p.n2;
            acc.gamma21 += p.weight * p.gamma21;
            acc.omega21 += p.weight * p.omega21;
        }
        if (acc.weight > 0.0) {
            acc.n1 /= acc.weight;
            acc.n2 /= acc.weight;
            acc.gamma21 /= acc.weight;
            acc.omega21 /= acc.weight;
        } else {
            // zero-weight bin (k = 0 edge alone): plain averages, no coupling
            acc = ensemble[lo];
            acc.weight = 0.0;
        }
        out.push_back(acc);
    }
    return out;
}

namespace detail {

struct SdeModel
{
    std::vector<std::complex<double>> p_decay;
    std::vector<std::complex<double>> p_drive;
    std::vector<double> p_noise_sd;
    std::complex<double> c_decay;
    std::complex<double> c_drive;
    double c_noise_sd = 0.0;
};

/// Per-part standard deviation of a complex normal increment with E|dW|^2 = variance.
inline double part_sd(double variance) { return std::sqrt(0.5 * variance); }

inline SdeModel make_sde_model(std::span<const EnsemblePoint> bins, double rabi2, double omega_nu,
                               const LangevinParams& params, double dt)
{
    using namespace std::complex_literals;
    const double kappa = std::sqrt(rabi2);
    SdeModel m;
    for (const auto& b : bins) {
        m.p_decay.push_back(1.0 - (1i * (b.omega21 - omega_nu) + b.gamma21) * dt);
        m.p_drive.push_back(1i * kappa * (b.n1 - b.n2) * b.weight * dt);
        m.p_noise_sd.push_back(part_sd(2.0 * b.gamma21 * b.n2 * b.weight * dt));
    }
    m.c_decay = 1.0 - (params.gamma_r + params.gamma_sigma) * dt;
    m.c_drive = 1i * kappa * dt;
    const double thermal = params.gamma_r * thermal_occupation(omega_nu, params.T_r)
                           + params.gamma_sigma * thermal_occupation(omega_nu, params.T_sigma);
    m.c_noise_sd = part_sd(2.0 * thermal * dt);
    return m;
}

inline std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

/// Time average of |c|^2 after burn-in for one trajectory.
inline double run_trajectory(const SdeModel& m, std::size_t steps, std::size_t burn, std::uint64_t seed,
                             std::uint64_t index)
{
    auto rng = trajectory_rng(seed, index);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t nb = m.p_decay.size();
    std::vector<std::complex<double>> p(nb, 0.0);
    std::complex<double> c = 0.0;
    double acc = 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        std::complex<double> sum_p = 0.0;
        for (std::size_t j = 0; j < nb; ++j) {
            sum_p += p[j];
        }
        for (std::size_t j = 0; j < nb; ++j) {
            std::complex<double> next = m.p_decay[j] * p[j] + m.p_drive[j] * c;
            if (m.p_noise_sd[j] > 0.0) {
                const double re = normal(rng);
                const double im = normal(rng);
                next += m.p_noise_sd[j] * std::complex<double>(re, im);
            }
            p[j] = next;
        }
        std::complex<double> next_c = m.c_decay * c + m.c_drive * sum_p;
        if (m.c_noise_sd > 0.0) {
            const double re = normal(rng);
            const double im = normal(rng);
            next_c += m.c_noise_sd * std::complex<double>(re, im);
        }
        c = next_c;
        if (s >= burn) {
            acc += std::norm(c);
        }
    }
    return acc / static_cast<double>(steps - burn);
}

}  // namespace detail

/// Rejects configurations that break the step-size, burn-in or sample-count rules.
inline void validate_sde_config(const SdeConfig& cfg, std::span<const EnsemblePoint> bins, double gamma_total)
{
    double gmin = gamma_total;
    for (const auto& b : bins) {
        gmin = std::min(gmin, b.gamma21);
    }
    if (!(cfg.dt > 0.0) || !(cfg.t_end > cfg.burn_in)) {
        fail(ErrorKind::InvalidArgument, "SDE needs dt > 0 and t_end > burn_in");
    }
    if (cfg.n_trajectories < 100) {
        fail(ErrorKind::InvalidArgument, "at least 100 trajectories are required");
    }
    if (!(cfg.burn_in >= 5.0 / gmin * (1.0 - 1e-12))) {
        fail(ErrorKind::InvalidArgument, "burn-in must be at least 5 / min(gamma21, Gamma_t)");
    }
}

inline void check_step(const SdeConfig& cfg, std::span<const EnsemblePoint> bins, double omega_nu,
                       double gamma_total)
{
    double rate = gamma_total;
    for (const auto& b : bins) {
        rate = std::max({rate, b.gamma21, std::abs(b.omega21 - omega_nu)});
    }
    if (!(cfg.dt < 0.1 / rate)) {
        std::ostringstream msg;
        msg << "dt=" << cfg.dt << " s violates dt < 0.1/" << rate;
        fail(ErrorKind::StepTooLarge, msg.str());
    }
}

/// Steady-state photon number from independent trajectories. Trajectory i
/// draws from a generator seeded by (seed, i) and results are reduced in index
/// order, so the estimate does not depend on the thread count.
inline McEstimate simulate_steady_state(std::span<const EnsemblePoint> bins, double rabi2, double omega_nu,
                                        const LangevinParams& params, const SdeConfig& cfg,
                                        unsigned threads = 1)
{
    params.validate();
    if (bins.size() > 64) {
        fail(ErrorKind::InvalidArgument, "at most 64 k-bins can be simulated");
    }
    const auto medium = medium_response(bins, rabi2, omega_nu);
    const double gt = total_field_decay(params, medium.gamma);
    check_step(cfg, bins, omega_nu, gt);
    validate_sde_config(cfg, bins, gt);

    const auto model = detail::make_sde_model(bins, rabi2, omega_nu, params, cfg.dt);
    const auto steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
    const auto burn = static_cast<std::size_t>(std::llround(cfg.burn_in / cfg.dt));

    std::vector<double> means(cfg.n_trajectories, 0.0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < means.size(); i = next++) {
            means[i] = detail::run_trajectory(model, steps, burn, cfg.seed, i);
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    double sum = 0.0;
    for (double m : means) {
        sum += m;
    }
    const double n = static_cast<double>(means.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (double m : means) {
        ss += (m - mean) * (m - mean);
    }
    McEstimate est;
    est.photon_number_mean = mean;
    est.std_error = std::sqrt(ss / (n - 1.0) / n);
    est.n_effective_samples = means.size();
    est.steps_per_trajectory = steps;
    return est;
}

/// Exact stationary E|c|^2 of the Euler-Maruyama recursion x' = M x + noise,
/// from Sigma = M Sigma M^+ + Q dt solved by doubling.
inline double em_stationary_moment(std::span<const EnsemblePoint> bins, double rabi2, double omega_nu,
                                   const LangevinParams& params, double dt)
{
    using Mat = Eigen::MatrixXcd;
    const auto model = detail::make_sde_model(bins, rabi2, omega_nu, params, dt);
    const auto n = static_cast<Eigen::Index>(bins.size() + 1);
    Mat a = Mat::Zero(n, n);
    Mat s = Mat::Zero(n, n);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        const auto u = static_cast<std::size_t>(j);
        a(j, j) = model.p_decay[u];
        a(j, n - 1) = model.p_drive[u];
        a(n - 1, j) = model.c_drive;
        s(j, j) = 2.0 * model.p_noise_sd[u] * model.p_noise_sd[u];
    }
    a(n - 1, n - 1) = model.c_decay;
    s(n - 1, n - 1) = 2.0 * model.c_noise_sd * model.c_noise_sd;
    for (int iter = 0; iter < 200; ++iter) {
        const Mat next = s + a * s * a.adjoint();
        const double change = (next - s).norm();
        s = next;
        a = (a * a).eval();
        if (a.norm() < 1e-300 || change <= 1e-16 * s.norm()) {
            break;
        }
        if (!std::isfinite(s.norm())) {
            fail(ErrorKind::Unstable, "Euler-Maruyama recursion is unstable at this step size");
        }
    }
    return s(n - 1, n - 1).real();
}

struct CheckReport
{
    std::string name;
    bool passed = false;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Empirical second moments of the discrete noise streams for one reservoir
/// with rate gamma and occupation n.
inline std::vector<CheckReport> check_noise_correlators(double gamma, double occupation, std::size_t steps,
                                                        double dt, std::uint64_t seed)
{
    auto rng = detail::trajectory_rng(seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto draw = [&](double variance) {
        const double sd = detail::part_sd(variance);
        const double re = normal(rng);
        const double im = normal(rng);
        return sd * std::complex<double>(re, im);
    };
    const double normal_var = 2.0 * gamma * occupation * dt;
    const double anti_var = 2.0 * gamma * (occupation + 1.0) * dt;
    // an independent reservoir with the same parameters
    const double other_var = 2.0 * gamma * (occupation + 1.0) * dt;

    double sum_normal = 0.0;
    double sum_anti = 0.0;
    std::complex<double> sum_cross = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        const auto w = draw(normal_var);
        const auto v = draw(anti_var);
        const auto o = draw(other_var);
        sum_normal += std::norm(w);
        sum_anti += std::norm(v);
        sum_cross += std::conj(v) * o;
    }
    const double n = static_cast<double>(steps);
    std::vector<CheckReport> out;

    CheckReport a;
    a.name = "normal_ordered_covariance";
    a.value = sum_normal / n / dt;
    a.expected = 2.0 * gamma * occupation;
    a.tolerance = 5.0 * a.expected / std::sqrt(n);
    a.passed = std::abs(a.value - a.expected) <= a.tolerance;
    out.push_back(a);

    CheckReport b;
    b.name = "commutator_shadow";
    b.value = (anti_var - normal_var) / dt;
    b.expected = 2.0 * gamma;
    b.tolerance = 1e-12 * b.expected;
    const double empirical = (sum_anti - sum_normal) / n / dt;
    const double se = std::sqrt(anti_var * anti_var + normal_var * normal_var) / std::sqrt(n) / dt;
    b.passed = std::abs(b.value - b.expected) <= b.tolerance && std::abs(empirical - b.expected) <= 5.0 * se;
    std::ostringstream d;
    d << "empirical=" << empirical << " se=" << se;
    b.detail = d.str();
    out.push_back(b);

    CheckReport c;
    c.name = "reservoir_cross_covariance";
    c.value = std::abs(sum_cross / n) / dt;
    c.expected = 0.0;
    c.tolerance = 5.0 * std::sqrt(anti_var * other_var / n) / dt;
    c.passed = c.value <= c.tolerance;
    out.push_back(c);
    return out;
}

struct DecayCheckOptions
{
    double gamma = 1.0;
    /// rotating-frame detuning, rad/s
    double detuning = 0.0;
    double t = 1.0;
    double dt = 1e-4;
};

/// Noise-free field decay integrated with the same Euler step as the SDE,
/// compared with |c(t)| = exp(-Gamma t) and a linear phase at the detuning.
inline std::vector<CheckReport> check_decay_without_noise(const DecayCheckOptions& opt)
{
    const auto steps = static_cast<std::size_t>(std::llround(opt.t / opt.dt));
    const std::complex<double> factor(1.0 - opt.gamma * opt.dt, -opt.detuning * opt.dt);
    std::complex<double> c = 1.0;
    // phase unwrapped step by step for the slope fit
    double phase = 0.0;
    double st = 0.0, sp = 0.0, stt = 0.0, stp = 0.0;
    for (std::size_t s = 1; s <= steps; ++s) {
        const auto next = factor * c;
        phase += std::arg(next / c);
        c = next;
        const double time = static_cast<double>(s) * opt.dt;
        st += time;
        sp += phase;
        stt += time * time;
        stp += time * phase;
    }
    const double t_end = static_cast<double>(steps) * opt.dt;
    std::vector<CheckReport> out;

    CheckReport amp;
    amp.name = "amplitude_decay";
    amp.value = std::abs(c);
    amp.expected = std::exp(-opt.gamma * t_end);
    // first-order Euler bound C dt rate^2 t with C = 1
    const double rate2 = opt.gamma * opt.gamma + opt.detuning * opt.detuning;
    amp.tolerance = std::max(opt.dt * rate2 * t_end, 1e-12) * amp.expected;
    amp.passed = std::abs(amp.value - amp.expected) <= amp.tolerance;
    out.push_back(amp);

    if (opt.detuning != 0.0) {
        const double n = static_cast<double>(steps);
        const double slope = (n * stp - st * sp) / (n * stt - st * st);
        CheckReport ph;
        ph.name = "phase_slope";
        ph.value = -slope;
        ph.expected = opt.detuning;
        // arg(1 - Gamma dt - i Delta dt) per step carries a first-order Gamma Delta dt term
        ph.tolerance = 1e-6 * std::abs(opt.detuning) + opt.dt * opt.gamma * std::abs(opt.detuning);
        ph.passed = std::abs(ph.value - ph.expected) <= ph.tolerance;
        out.push_back(ph);
    }
    return out;
}

}  // namespace subcav
