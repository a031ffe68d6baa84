#pragma once

#include <hcont/baire.hpp>
#include <hcont/funcs.hpp>
#include <hcont/space.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

namespace hcont {

// Order isomorphism R -> (-1, 1).
inline double h_transform(double z) noexcept
{
    return z / (1.0 + std::abs(z));
}

// Inverse of h_transform on (-1, 1).
inline double h_inverse(double z) noexcept
{
    return z / (1.0 - std::abs(z));
}

/// Continuous bump on a metric space: 1 at the center, 0 outside the support
/// ball, values in [0, 1] everywhere.
struct BumpFunction {
    std::size_t center;
    Ball support;
    IntervalFunction profile;
};

// profile(y) = max(0, 1 - ρ(x, y) / r)
inline BumpFunction make_bump(const SpacePtr &space, std::size_t x, double r)
{
    const auto &s = space->metric_space();
    if (!(r > 0.0)) {
        throw PreconditionError("bump radius must be positive");
    }
    if (x >= s.size()) {
        throw PreconditionError("unknown point index " + std::to_string(x));
    }
    std::vector<ExtReal> p(s.size());
    for (std::size_t y = 0; y < s.size(); ++y) {
        p[y] = std::max(0.0, 1.0 - s.distance(x, y) / r);
    }
    return {x, Ball{x, r}, IntervalFunction::point_valued(space, p)};
}

struct RadiusPolicy {
    // Also try a ball smaller than the nearest-neighbor distance, which holds
    // the center alone. Without it a point next to a downward jump has no
    // admissible scheduled ball and falls back to the finest radius.
    bool allow_isolating_radius = true;
};

struct RadiusSelection {
    std::vector<double> radius;
    // f_lo(x) - m_x, where m_x is the minimum of f_lo over the chosen ball.
    std::vector<double> achieved_eps;
    std::vector<bool> fallback;
};

namespace detail {

inline void require_finite_lower(const IntervalFunction &f)
{
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (!f[x].is_finite()) {
            throw PreconditionError("function has an infinite endpoint at point " + std::to_string(x));
        }
    }
}

inline double ball_min(const SampledMetricSpace &s, const std::vector<ExtReal> &lo, std::size_t x, double r)
{
    double m = std::numeric_limits<double>::infinity();
    for (auto y : s.ball(x, r)) {
        m = std::min(m, lo[y].value());
    }
    return m;
}

} // namespace detail

/// Per point, the largest candidate radius whose ball keeps f_lo above
/// f_lo(x) - eps. Candidates are the scheduled radii, then (per policy) an
/// isolating radius; with no admissible candidate the finest scheduled radius
/// is used and flagged.
inline RadiusSelection select_radii(const IntervalFunction &f, double eps, const RadiusPolicy &policy = {})
{
    const auto &s = f.space().metric_space();
    if (!(eps > 0.0)) {
        throw PreconditionError("eps must be positive");
    }
    detail::require_finite_lower(f);
    const auto lo = f.lower_values();
    RadiusSelection sel;
    sel.radius.resize(s.size());
    sel.achieved_eps.resize(s.size());
    sel.fallback.resize(s.size(), false);
    for (std::size_t x = 0; x < s.size(); ++x) {
        std::vector<double> candidates = s.radii();
        if (policy.allow_isolating_radius) {
            const double nd = s.nearest_distance(x);
            candidates.push_back(std::isfinite(nd) ? 0.5 * nd : 1.0);
        }
        const double target = lo[x].value() - eps;
        bool found = false;
        for (double r : candidates) {
            const double m = detail::ball_min(s, lo, x, r);
            if (m > target) {
                sel.radius[x] = r;
                sel.achieved_eps[x] = lo[x].value() - m;
                found = true;
                break;
            }
        }
        if (!found) {
            const double r = s.finest_radius();
            sel.radius[x] = r;
            sel.achieved_eps[x] = lo[x].value() - detail::ball_min(s, lo, x, r);
            sel.fallback[x] = true;
        }
    }
    return sel;
}

/// Family {g_x} of continuous functions below f whose pointwise max recovers
/// f_lo up to the achieved eps. The member for center x is g_x.
struct ApproximatingFamily {
    FunctionFamily family;
    RadiusSelection radii;
    std::vector<double> m;
    // Largest |φ(x) - φ(y)| / ρ(x, y) over stencil neighbors of the minorant
    // used by the H_cm construction; reported, never thresholded.
    std::optional<double> minorant_lipschitz;
};

/// Largest difference quotient of a point-valued function over neighbor pairs
/// of the finest stencil.
inline double lipschitz_estimate(const IntervalFunction &phi)
{
    const auto &s = phi.space().metric_space();
    const auto st = make_stencil(phi.space());
    double L = 0.0;
    for (std::size_t x = 0; x < s.size(); ++x) {
        for (auto y : st.neighbors[x]) {
            if (y == x) {
                continue;
            }
            const double d = s.distance(x, y);
            const double diff = std::abs(phi[x].lo().value() - phi[y].lo().value());
            L = std::max(L, diff / d);
        }
    }
    return L;
}

/// Bounded case: g_x(y) = (m_x + M) φ_x(y) - M with φ_x the bump of the
/// selected radius around x and m_x the minimum of f_lo over that ball.
inline ApproximatingFamily approximating_family_bounded(const IntervalFunction &f, double M,
                                                        const RadiusSelection &radii)
{
    const auto &s = f.space().metric_space();
    detail::require_finite_lower(f);
    const auto b = bounds_of(f);
    if (!(M >= 0.0) || b.lo < ExtReal(-M) || ExtReal(M) < b.hi) {
        throw PreconditionError("function is not bounded by M");
    }
    const auto lo = f.lower_values();
    std::vector<IntervalFunction> members;
    std::vector<double> ms(s.size());
    members.reserve(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) {
        const double r = radii.radius.at(x);
        const double m = detail::ball_min(s, lo, x, r);
        ms[x] = m;
        std::vector<ExtReal> g(s.size());
        for (std::size_t y = 0; y < s.size(); ++y) {
            const double phi = std::max(0.0, 1.0 - s.distance(x, y) / r);
            g[y] = (m + M) * phi - M;
        }
        members.push_back(IntervalFunction::point_valued(f.space_ptr(), g));
    }
    return {FunctionFamily(std::move(members)), radii, std::move(ms), std::nullopt};
}

inline ApproximatingFamily approximating_family_bounded(const IntervalFunction &f, double M, double eps,
                                                        const RadiusPolicy &policy = {})
{
    return approximating_family_bounded(f, M, select_radii(f, eps, policy));
}

/// Case with a continuous minorant φ <= f:
/// g_x(y) = (m_x - φ(y)) φ_x(y) + φ(y).
inline ApproximatingFamily approximating_family_cm(const IntervalFunction &f, const IntervalFunction &minorant,
                                                   const RadiusSelection &radii)
{
    const auto &s = f.space().metric_space();
    require_same_space(f, minorant);
    detail::require_finite_lower(f);
    if (!minorant.is_point_valued()) {
        throw PreconditionError("minorant must be point valued");
    }
    const auto lo = f.lower_values();
    const auto phi = minorant.lower_values();
    for (std::size_t y = 0; y < s.size(); ++y) {
        if (!phi[y].is_finite() || lo[y] < phi[y]) {
            std::ostringstream os;
            os << "minorant exceeds f at point " << y << ": " << phi[y] << " > " << lo[y];
            throw PreconditionError(os.str());
        }
    }
    std::vector<IntervalFunction> members;
    std::vector<double> ms(s.size());
    members.reserve(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) {
        const double r = radii.radius.at(x);
        const double m = detail::ball_min(s, lo, x, r);
        ms[x] = m;
        std::vector<ExtReal> g(s.size());
        for (std::size_t y = 0; y < s.size(); ++y) {
            const double bump = std::max(0.0, 1.0 - s.distance(x, y) / r);
            const double p = phi[y].value();
            g[y] = (m - p) * bump + p;
        }
        members.push_back(IntervalFunction::point_valued(f.space_ptr(), g));
    }
    return {FunctionFamily(std::move(members)), radii, std::move(ms), lipschitz_estimate(minorant)};
}

inline ApproximatingFamily approximating_family_cm(const IntervalFunction &f, const IntervalFunction &minorant,
                                                   double eps, const RadiusPolicy &policy = {})
{
    return approximating_family_cm(f, minorant, select_radii(f, eps, policy));
}

struct EnvelopeResult {
    // The continuous minorant (or majorant), point valued.
    IntervalFunction envelope;
    // The 1-Lipschitz function in h-coordinates; envelope = h^-1(psi).
    std::vector<double> psi;
    // Certified Lipschitz constant of psi.
    double lipschitz_bound = 1.0;
};

namespace detail {

inline std::vector<double> h_coordinates(const std::vector<ExtReal> &v)
{
    std::vector<double> out(v.size());
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (!v[t].is_finite()) {
            throw PreconditionError("envelope requires finite endpoints");
        }
        out[t] = h_transform(v[t].value());
        if (!(std::abs(out[t]) < 1.0)) {
            throw PreconditionError("value at point " + std::to_string(t)
                                    + " saturates the h-transform in double precision");
        }
    }
    return out;
}

} // namespace detail

/// Continuous minorant of a finite f on a metric space:
/// psi(x) = min_t [h(f_lo(t)) + ρ(t, x)], minorant = h^-1(psi).
///
/// psi is 1-Lipschitz and psi(x) <= h(f_lo(x)), so h^-1(psi) <= f_lo in exact
/// arithmetic; the final min with f_lo absorbs the rounding of the h round trip.
inline EnvelopeResult continuous_minorant(const IntervalFunction &f)
{
    const auto &s = f.space().metric_space();
    detail::require_finite_lower(f);
    const auto lo = f.lower_values();
    const auto a = detail::h_coordinates(lo);
    std::vector<double> psi(s.size());
    std::vector<ExtReal> env(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < s.size(); ++t) {
            best = std::min(best, a[t] + s.distance(t, x));
        }
        psi[x] = best;
        env[x] = std::min(h_inverse(best), lo[x].value());
    }
    return {IntervalFunction::point_valued(f.space_ptr(), env), std::move(psi), 1.0};
}

/// Mirror of continuous_minorant:
/// psi(x) = max_t [h(f_hi(t)) - ρ(t, x)], majorant = h^-1(psi) >= f_hi.
inline EnvelopeResult continuous_majorant(const IntervalFunction &f)
{
    const auto &s = f.space().metric_space();
    detail::require_finite_lower(f);
    const auto hi = f.upper_values();
    const auto a = detail::h_coordinates(hi);
    std::vector<double> psi(s.size());
    std::vector<ExtReal> env(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < s.size(); ++t) {
            best = std::max(best, a[t] - s.distance(t, x));
        }
        psi[x] = best;
        env[x] = std::max(h_inverse(best), hi[x].value());
    }
    return {IntervalFunction::point_valued(f.space_ptr(), env), std::move(psi), 1.0};
}

} // namespace hcont
