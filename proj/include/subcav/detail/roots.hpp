#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "subcav/error.hpp"

namespace subcav::detail {

struct RootResult
{
    double root;
    int iterations;
};

/// Safeguarded secant iteration (Dekker style) on a sign-changing bracket.
/// Falls back to bisection whenever the secant step leaves the half of the
/// bracket next to the best iterate, or the bracket fails to halve over three
/// consecutive steps.
template <class F>
RootResult find_root(F&& f, double lo, double hi, double rel_tol = 1e-12, int max_iter = 200)
{
    double b = hi;
    double fb = f(b);
    double c = lo;
    double fc = f(c);
    if (fb == 0.0) {
        return {b, 0};
    }
    if (fc == 0.0) {
        return {c, 0};
    }
    if (std::signbit(fb) == std::signbit(fc)) {
        fail(ErrorKind::NoRootInBracket, "residual has the same sign at both bracket ends");
    }
    double a = c;
    double fa = fc;
    double width = std::abs(c - b);
    int stalled = 0;

    for (int iter = 1; iter <= max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            fa = fb;
            std::swap(b, c);
            std::swap(fb, fc);
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b)
                           + 0.5 * rel_tol * std::abs(b);
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) {
            return {b, iter};
        }

        double s = b + m;
        if (stalled < 3 && fb != fa) {
            const double secant = b - fb * (b - a) / (fb - fa);
            const bool inside = (m > 0.0) ? (secant > b && secant < b + m)
                                          : (secant < b && secant > b + m);
            if (inside) {
                s = secant;
            }
        }
        if (std::abs(s - b) < tol) {
            s = b + std::copysign(tol, m);
        }

        a = b;
        fa = fb;
        b = s;
        fb = f(b);
        if (std::signbit(fb) == std::signbit(fc)) {
            c = a;
            fc = fa;
        }

        const double new_width = std::abs(c - b);
        if (new_width > 0.5 * width) {
            ++stalled;
        } else {
            stalled = 0;
            width = new_width;
        }
    }
    fail(ErrorKind::NoRootInBracket, "root finder did not converge within the iteration limit");
}

/// Scans `points` equally spaced samples of f over [lo, hi] and returns the
/// sub-interval holding the only sign change.
template <class F>
std::pair<double, double> isolate_single_root(F&& f, double lo, double hi, int points)
{
    int sign_changes = 0;
    std::pair<double, double> sub{lo, hi};
    double prev_x = lo;
    double prev = f(lo);
    for (int i = 1; i < points; ++i) {
        const double x = (i == points - 1) ? hi : lo + (hi - lo) * i / (points - 1);
        const double value = f(x);
        if (std::signbit(value) != std::signbit(prev)) {
            ++sign_changes;
            sub = {prev_x, x};
        }
        prev = value;
        prev_x = x;
    }
    if (sign_changes == 0) {
        fail(ErrorKind::NoRootInBracket, "residual does not change sign in the bracket");
    }
    if (sign_changes > 1) {
        std::ostringstream msg;
        msg << sign_changes << " sign changes found in the bracket; narrow it to one root";
        fail(ErrorKind::MultipleRoots, msg.str());
    }
    return sub;
}

}  // namespace subcav::detail
