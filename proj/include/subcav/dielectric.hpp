#pragma once

// Real-valued, layered, frequency-dispersive permittivity profiles eps(omega, z)
// filling the gap -Lz/2 <= z <= Lz/2 between the two metal planes, and the
// z-integrals over them that enter the dispersion relation and the field
// normalization.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "subcav/error.hpp"

namespace subcav {

struct ConstantPermittivity
{
    double eps;
};

/// eps(omega) = eps_inf + plasma_freq^2 / (resonance_freq^2 - omega^2)
struct LorentzPermittivity
{
    double eps_inf;
    double plasma_freq;
    double resonance_freq;
};

class DispersionModel
{
public:
    using Variant = std::variant<ConstantPermittivity, LorentzPermittivity>;

    DispersionModel(ConstantPermittivity model) : model_(model)
    {
        if (!(model.eps > 0.0) || !std::isfinite(model.eps)) {
            fail(ErrorKind::InvalidArgument, "constant permittivity must be finite and positive");
        }
    }

    DispersionModel(LorentzPermittivity model) : model_(model)
    {
        if (!std::isfinite(model.eps_inf) || !std::isfinite(model.plasma_freq)
            || !(model.resonance_freq > 0.0) || !std::isfinite(model.resonance_freq)) {
            fail(ErrorKind::InvalidArgument, "Lorentz model needs finite parameters and a positive resonance");
        }
    }

    const Variant& variant() const noexcept { return model_; }

    bool is_dispersive() const noexcept
    {
        return std::holds_alternative<LorentzPermittivity>(model_);
    }

    /// Permittivity without the transparency check. May be non-finite at a pole.
    double raw_eps(double omega) const noexcept
    {
        if (const auto* c = std::get_if<ConstantPermittivity>(&model_)) {
            return c->eps;
        }
        const auto& l = std::get<LorentzPermittivity>(model_);
        const double den = l.resonance_freq * l.resonance_freq - omega * omega;
        return l.eps_inf + l.plasma_freq * l.plasma_freq / den;
    }

    /// d eps / d omega
    double raw_deps(double omega) const noexcept
    {
        if (std::holds_alternative<ConstantPermittivity>(model_)) {
            return 0.0;
        }
        const auto& l = std::get<LorentzPermittivity>(model_);
        const double den = l.resonance_freq * l.resonance_freq - omega * omega;
        return 2.0 * omega * l.plasma_freq * l.plasma_freq / (den * den);
    }

    /// d(omega^2 eps)/d omega, evaluated in closed form.
    double raw_energy_derivative(double omega) const noexcept
    {
        if (const auto* c = std::get_if<ConstantPermittivity>(&model_)) {
            return 2.0 * omega * c->eps;
        }
        const auto& l = std::get<LorentzPermittivity>(model_);
        const double w0sq = l.resonance_freq * l.resonance_freq;
        const double den = w0sq - omega * omega;
        return 2.0 * omega * l.eps_inf
               + 2.0 * omega * l.plasma_freq * l.plasma_freq * w0sq / (den * den);
    }

    bool transparent_at(double omega) const noexcept
    {
        if (!(omega > 0.0) || !std::isfinite(omega)) {
            return false;
        }
        const double e = raw_eps(omega);
        const double d = raw_energy_derivative(omega);
        return std::isfinite(e) && std::isfinite(d) && e > 0.0 && d > 0.0;
    }

    double eps(double omega) const
    {
        require_transparent(omega);
        return raw_eps(omega);
    }

    double energy_derivative(double omega) const
    {
        require_transparent(omega);
        return raw_energy_derivative(omega);
    }

private:
    void require_transparent(double omega) const
    {
        if (!transparent_at(omega)) {
            std::ostringstream msg;
            msg << "permittivity is not transparent at omega=" << omega << " rad/s";
            fail(ErrorKind::NonTransparent, msg.str());
        }
    }

    Variant model_;
};

struct Layer
{
    double z_lo;
    double z_hi;
    DispersionModel model;

    double thickness() const noexcept { return z_hi - z_lo; }
};

/// Ordered layers tiling [-Lz/2, +Lz/2] with no gaps or overlaps.
class DielectricStack
{
public:
    explicit DielectricStack(std::vector<Layer> layers) : layers_(std::move(layers))
    {
        if (layers_.empty()) {
            fail(ErrorKind::InvalidArgument, "dielectric stack needs at least one layer");
        }
        const double lz = layers_.back().z_hi - layers_.front().z_lo;
        if (!(lz > 0.0) || !std::isfinite(lz)) {
            fail(ErrorKind::InvalidArgument, "dielectric stack thickness must be positive");
        }
        const double tol = 1e-12 * lz;
        if (std::abs(layers_.front().z_lo + 0.5 * lz) > tol
            || std::abs(layers_.back().z_hi - 0.5 * lz) > tol) {
            fail(ErrorKind::InvalidArgument, "layers must tile [-Lz/2, Lz/2]");
        }
        for (std::size_t i = 0; i < layers_.size(); ++i) {
            if (!(layers_[i].thickness() > 0.0)) {
                fail(ErrorKind::InvalidArgument, "layer thickness must be positive");
            }
            if (i > 0 && std::abs(layers_[i].z_lo - layers_[i - 1].z_hi) > tol) {
                fail(ErrorKind::InvalidArgument, "layers leave a gap or overlap");
            }
        }
        thickness_ = lz;
    }

    /// Builds a stack from thicknesses listed bottom (z = -Lz/2) to top.
    static DielectricStack from_thicknesses(const std::vector<std::pair<double, DispersionModel>>& slabs)
    {
        double total = 0.0;
        for (const auto& s : slabs) {
            total += s.first;
        }
        std::vector<Layer> layers;
        layers.reserve(slabs.size());
        double z = -0.5 * total;
        for (std::size_t i = 0; i < slabs.size(); ++i) {
            const double hi = (i + 1 == slabs.size()) ? 0.5 * total : z + slabs[i].first;
            layers.push_back(Layer{z, hi, slabs[i].second});
            z = hi;
        }
        return DielectricStack(std::move(layers));
    }

    static DielectricStack uniform(double lz, DispersionModel model)
    {
        return DielectricStack({Layer{-0.5 * lz, 0.5 * lz, model}});
    }

    double thickness() const noexcept { return thickness_; }
    std::span<const Layer> layers() const noexcept { return layers_; }

    bool is_dispersive() const noexcept
    {
        for (const auto& l : layers_) {
            if (l.model.is_dispersive()) {
                return true;
            }
        }
        return false;
    }

    /// The permittivity if every layer is the same constant model.
    std::optional<double> uniform_constant_eps() const noexcept
    {
        const auto* first = std::get_if<ConstantPermittivity>(&layers_.front().model.variant());
        if (first == nullptr) {
            return std::nullopt;
        }
        for (const auto& l : layers_) {
            const auto* c = std::get_if<ConstantPermittivity>(&l.model.variant());
            if (c == nullptr || c->eps != first->eps) {
                return std::nullopt;
            }
        }
        return first->eps;
    }

    bool transparent_at(double omega) const noexcept
    {
        for (const auto& l : layers_) {
            if (!l.model.transparent_at(omega)) {
                return false;
            }
        }
        return true;
    }

    /// Index of the layer containing z. Ties at interfaces go to the upper layer.
    std::size_t layer_index(double z) const
    {
        const double half = 0.5 * thickness_;
        if (!(z >= -half && z <= half)) {
            std::ostringstream msg;
            msg << "z=" << z << " cm lies outside the slab [" << -half << ", " << half << "]";
            fail(ErrorKind::OutOfDomain, msg.str());
        }
        for (std::size_t i = layers_.size(); i-- > 1;) {
            if (z >= layers_[i].z_lo) {
                return i;
            }
        }
        return 0;
    }

    double eps(double omega, double z) const { return layers_[layer_index(z)].model.eps(omega); }

    /// Integral of dz / eps over the whole slab.
    double inv_eps_integral(double omega) const
    {
        double sum = 0.0;
        for (const auto& l : layers_) {
            sum += l.thickness() / l.model.eps(omega);
        }
        return sum;
    }

    /// Integral of dz / eps from z_from to z_to (both inside the slab).
    double inv_eps_integral(double omega, double z_from, double z_to) const
    {
        if (z_to < z_from) {
            return -inv_eps_integral(omega, z_to, z_from);
        }
        layer_index(z_from);
        layer_index(z_to);
        double sum = 0.0;
        for (const auto& l : layers_) {
            const double lo = std::max(l.z_lo, z_from);
            const double hi = std::min(l.z_hi, z_to);
            if (hi > lo) {
                sum += (hi - lo) / l.model.eps(omega);
            }
        }
        return sum;
    }

    /// d/d omega of the slab integral of dz / eps.
    double inv_eps_integral_derivative(double omega) const
    {
        double sum = 0.0;
        for (const auto& l : layers_) {
            const double e = l.model.eps(omega);
            sum -= l.thickness() * l.model.raw_deps(omega) / (e * e);
        }
        return sum;
    }

    /// G(Lz, omega): integral of d(omega^2 eps)/d omega / (2 eps^2 omega) dz.
    double g_factor(double omega) const
    {
        double sum = 0.0;
        for (const auto& l : layers_) {
            const double e = l.model.eps(omega);
            sum += l.thickness() * l.model.energy_derivative(omega) / (2.0 * e * e * omega);
        }
        return sum;
    }

    /// Effective permittivity Lz / integral(dz / eps).
    double mean_eps(double omega) const { return thickness_ / inv_eps_integral(omega); }

private:
    std::vector<Layer> layers_;
    double thickness_ = 0.0;
};

inline double eval_eps(const DielectricStack& stack, double omega, double z)
{
    return stack.eps(omega, z);
}

inline double inv_eps_integral(const DielectricStack& stack, double omega)
{
    return stack.inv_eps_integral(omega);
}

inline double g_factor(const DielectricStack& stack, double omega)
{
    return stack.g_factor(omega);
}

}  // namespace subcav
