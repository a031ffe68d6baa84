#pragma once

#include <hcont/funcs.hpp>
#include <hcont/hcontinuity.hpp>
#include <hcont/io.hpp>
#include <hcont/space.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace hcont {

// ---------------------------------------------------------------------------
// Geometry of the catalog examples in the continuum.

// The grid each convergence study samples.
inline SpacePtr example_grid(const ExampleSpec &ex, std::size_t n)
{
    switch (ex.kind) {
        case ExampleKind::step:
        case ExampleKind::constant:
            return make_space(SampledMetricSpace::grid1d(-1.0, 1.0, n));
        case ExampleKind::sin_reciprocal:
            return make_space(SampledMetricSpace::grid2d(-1.0, 1.0, n, -1.0, 1.0, n));
        case ExampleKind::shock:
            return make_space(SampledMetricSpace::grid2d(-2.0, 2.0, n, 0.0, 4.0, n));
    }
    throw InvalidArgument("unknown example");
}

namespace detail {

inline double segment_distance(const Coord &p, const Coord &a, const Coord &b)
{
    const double vx = b[0] - a[0];
    const double vy = b[1] - a[1];
    const double len2 = vx * vx + vy * vy;
    double s = len2 > 0.0 ? ((p[0] - a[0]) * vx + (p[1] - a[1]) * vy) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return std::hypot(p[0] - (a[0] + s * vx), p[1] - (a[1] + s * vy));
}

// Shock fan: t in [0, 1), x in [t - 1, 0].
inline bool in_fan(const Coord &p)
{
    return p[1] >= 0.0 && p[1] < 1.0 && p[0] >= p[1] - 1.0 && p[0] <= 0.0;
}

} // namespace detail

/// Distance from p to the set where the example is discontinuous.
inline double distance_to_discontinuity(const ExampleSpec &ex, const Coord &p)
{
    switch (ex.kind) {
        case ExampleKind::step:
            return std::abs(p[0]);
        case ExampleKind::constant:
            return std::numeric_limits<double>::infinity();
        case ExampleKind::sin_reciprocal: {
            // circles |x| = 1/(kπ) accumulate at the origin
            const double rho = std::hypot(p[0], p[1]);
            double d = rho;
            if (rho > 0.0) {
                const double k0 = std::floor(1.0 / (std::numbers::pi * rho));
                for (double k = std::max(1.0, k0 - 1.0); k <= k0 + 2.0; k += 1.0) {
                    d = std::min(d, std::abs(rho - 1.0 / (k * std::numbers::pi)));
                }
            }
            return d;
        }
        case ExampleKind::shock: {
            // front x = (t - 1)/2 for t >= 1, as a ray from (0, 1)
            const Coord a{0.0, 1.0};
            const double vx = 1.0 / std::sqrt(5.0);
            const double vy = 2.0 / std::sqrt(5.0);
            const double s = std::max(0.0, (p[0] - a[0]) * vx + (p[1] - a[1]) * vy);
            return std::hypot(p[0] - (a[0] + s * vx), p[1] - (a[1] + s * vy));
        }
    }
    return 0.0;
}

/// Distance from p to the region where the example is not locally constant
/// (discontinuities and non-constant branches).
inline double distance_to_nonconstant(const ExampleSpec &ex, const Coord &p)
{
    double d = distance_to_discontinuity(ex, p);
    if (ex.kind == ExampleKind::shock) {
        if (detail::in_fan(p)) {
            return 0.0;
        }
        const Coord a{-1.0, 0.0};
        const Coord b{0.0, 0.0};
        const Coord c{0.0, 1.0};
        d = std::min({d, detail::segment_distance(p, a, b), detail::segment_distance(p, b, c),
                      detail::segment_distance(p, a, c)});
    }
    return d;
}

inline bool in_varying_branch(const ExampleSpec &ex, const Coord &p)
{
    return ex.kind == ExampleKind::shock && detail::in_fan(p);
}

// ---------------------------------------------------------------------------
// Convergence study

struct ConvergenceRow {
    std::size_t n = 0;
    std::size_t points = 0;
    double radius = 0.0;
    // Over every point where the target is point valued.
    std::size_t continuity_points = 0;
    double max_deviation = 0.0;
    // Continuity points farther than 3r from any non-constant part of the
    // target; the stencil pipeline reaches 3r, so these must be exact.
    std::size_t constant_branch_points = 0;
    double constant_branch_deviation = 0.0;
    // Coarsest-grid points inside a varying branch and farther than 3r (of
    // the coarsest grid) from the discontinuity set.
    std::size_t reference_points = 0;
    double reference_deviation = 0.0;
    // Points where the target is interval valued and whose 3r neighborhood
    // stays inside the sampled domain.
    std::size_t locus_points = 0;
    std::size_t locus_mismatches = 0;
    std::optional<Interval> locus_hull;
    // Locus points within 3r of the domain edge, where the stencil is
    // truncated on one side. Reported, not asserted.
    std::size_t edge_locus_points = 0;
    std::size_t edge_locus_mismatches = 0;
};

struct ConvergenceStudy {
    std::string example;
    std::vector<ConvergenceRow> rows;

    [[nodiscard]] bool constant_branches_exact() const
    {
        return std::all_of(rows.begin(), rows.end(), [](const auto &r) { return r.constant_branch_deviation == 0.0; });
    }

    [[nodiscard]] bool locus_exact() const
    {
        return std::all_of(rows.begin(), rows.end(), [](const auto &r) { return r.locus_mismatches == 0; });
    }

    [[nodiscard]] bool reference_non_increasing() const
    {
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].reference_deviation > rows[i - 1].reference_deviation) {
                return false;
            }
        }
        return true;
    }
};

namespace detail {

inline double deviation(const Interval &got, const Interval &want)
{
    const auto gap = [](ExtReal a, ExtReal b) {
        if (a == b) {
            return 0.0;
        }
        if (!a.is_finite() || !b.is_finite()) {
            return std::numeric_limits<double>::infinity();
        }
        return std::abs(a.value() - b.value());
    };
    return std::max(gap(got.lo(), want.lo()), gap(got.hi(), want.hi()));
}

// Distance from p to the boundary of the bounding box of the samples.
inline double edge_distance(const SampledMetricSpace &s, const Coord &p)
{
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.dim(); ++k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto &q : s.points()) {
            lo = std::min(lo, q[k]);
            hi = std::max(hi, q[k]);
        }
        d = std::min({d, p[k] - lo, hi - p[k]});
    }
    return d;
}

} // namespace detail

/// Regularizes the point-valued sampling (the upper endpoints of the closed
/// form) with regularize_lower on a sequence of grids and compares against
/// the closed-form H-continuous target.
inline ConvergenceStudy run_convergence_study(const std::string &example, const std::vector<std::size_t> &grid_sizes)
{
    const auto ex = parse_example(example);
    if (grid_sizes.empty()) {
        throw InvalidArgument("convergence study needs at least one grid size");
    }
    ConvergenceStudy study{example, {}};

    // reference points fixed on the first grid
    std::vector<Coord> reference;
    for (std::size_t gi = 0; gi < grid_sizes.size(); ++gi) {
        const auto space = example_grid(ex, grid_sizes[gi]);
        const auto &s = space->metric_space();
        const auto target = make_example(ex, space);
        const auto sampled = IntervalFunction::point_valued(space, target.upper_values());
        const auto got = regularize_lower(sampled);

        ConvergenceRow row;
        row.n = grid_sizes[gi];
        row.points = s.size();
        row.radius = s.finest_radius();
        const double band = 3.0 * row.radius;
        if (gi == 0) {
            for (std::size_t x = 0; x < s.size(); ++x) {
                const auto &p = s.point(x);
                if (in_varying_branch(ex, p) && distance_to_discontinuity(ex, p) > band) {
                    reference.push_back(p);
                }
            }
        }
        std::map<Coord, std::size_t> index;
        if (!reference.empty()) {
            for (std::size_t x = 0; x < s.size(); ++x) {
                index.emplace(s.point(x), x);
            }
        }
        for (std::size_t x = 0; x < s.size(); ++x) {
            const auto &want = target[x];
            const double dev = detail::deviation(got[x], want);
            if (want.is_point()) {
                ++row.continuity_points;
                row.max_deviation = std::max(row.max_deviation, dev);
                if (distance_to_nonconstant(ex, s.point(x)) > band) {
                    ++row.constant_branch_points;
                    row.constant_branch_deviation = std::max(row.constant_branch_deviation, dev);
                }
            } else if (detail::edge_distance(s, s.point(x)) <= band) {
                ++row.edge_locus_points;
                if (dev != 0.0) {
                    ++row.edge_locus_mismatches;
                }
            } else {
                ++row.locus_points;
                if (dev != 0.0) {
                    ++row.locus_mismatches;
                }
                row.locus_hull = row.locus_hull ? Interval(std::min(row.locus_hull->lo(), got[x].lo()),
                                                           std::max(row.locus_hull->hi(), got[x].hi()))
                                                : got[x];
            }
        }
        for (const auto &p : reference) {
            auto it = index.find(p);
            if (it == index.end()) {
                continue;
            }
            ++row.reference_points;
            row.reference_deviation =
                std::max(row.reference_deviation, detail::deviation(got[it->second], target[it->second]));
        }
        study.rows.push_back(row);
    }
    return study;
}

inline json to_json(const ConvergenceStudy &study)
{
    json rows = json::array();
    for (const auto &r : study.rows) {
        json j{{"n", r.n},
               {"points", r.points},
               {"radius", r.radius},
               {"continuity_points", r.continuity_points},
               {"max_deviation", r.max_deviation},
               {"constant_branch_points", r.constant_branch_points},
               {"constant_branch_deviation", r.constant_branch_deviation},
               {"reference_points", r.reference_points},
               {"reference_deviation", r.reference_deviation},
               {"locus_points", r.locus_points},
               {"locus_mismatches", r.locus_mismatches},
               {"edge_locus_points", r.edge_locus_points},
               {"edge_locus_mismatches", r.edge_locus_mismatches}};
        j["locus_hull"] = r.locus_hull ? to_json(*r.locus_hull) : json(nullptr);
        rows.push_back(std::move(j));
    }
    return {{"example", study.example},
            {"rows", std::move(rows)},
            {"constant_branches_exact", study.constant_branches_exact()},
            {"locus_exact", study.locus_exact()},
            {"reference_non_increasing", study.reference_non_increasing()}};
}

// ---------------------------------------------------------------------------
// Plot data

enum class PlotFormat { csv, svg };

namespace detail {

inline std::string format_ext(ExtReal v)
{
    if (v.is_pos_inf()) {
        return "inf";
    }
    if (v.is_neg_inf()) {
        return "-inf";
    }
    return format_double(v.value());
}

inline std::size_t plot_dimension(const IntervalFunction &f)
{
    if (f.size() == 0) {
        throw InvalidArgument("empty function");
    }
    const auto d = f.space().dimension();
    if (d != 1 && d != 2) {
        throw PreconditionError("plot needs a 1D or 2D space with coordinates");
    }
    return d;
}

// Blue (low) to white to red (high).
inline std::string color(ExtReal v, double lo, double hi)
{
    if (!v.is_finite()) {
        return "#000000";
    }
    double s = hi > lo ? (v.value() - lo) / (hi - lo) : 0.5;
    s = std::clamp(s, 0.0, 1.0);
    int r = 255;
    int g = 255;
    int b = 255;
    if (s < 0.5) {
        const double k = s / 0.5;
        r = static_cast<int>(std::lround(59 + k * (255 - 59)));
        g = static_cast<int>(std::lround(76 + k * (255 - 76)));
        b = static_cast<int>(std::lround(192 + k * (255 - 192)));
    } else {
        const double k = (s - 0.5) / 0.5;
        r = static_cast<int>(std::lround(255 + k * (180 - 255)));
        g = static_cast<int>(std::lround(255 + k * (4 - 255)));
        b = static_cast<int>(std::lround(255 + k * (38 - 255)));
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

inline std::string svg_1d(const IntervalFunction &f)
{
    const auto &s = f.space();
    const double W = 640;
    const double H = 400;
    const double pad = 40;
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = s.coordinate(i)[0];
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        for (auto v : {f[i].lo(), f[i].hi()}) {
            if (v.is_finite()) {
                ymin = std::min(ymin, v.value());
                ymax = std::max(ymax, v.value());
            }
        }
    }
    if (!(xmax > xmin)) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (!(ymax > ymin)) {
        ymin = std::isfinite(ymin) ? ymin - 1.0 : -1.0;
        ymax = std::isfinite(ymax) ? ymax + 1.0 : 1.0;
    }
    const auto X = [&](double x) { return pad + (x - xmin) / (xmax - xmin) * (W - 2 * pad); };
    const auto Y = [&](ExtReal v) {
        const double y = v.is_finite() ? v.value() : (v.is_pos_inf() ? ymax : ymin);
        return H - pad - (y - ymin) / (ymax - ymin) * (H - 2 * pad);
    };
    std::vector<std::size_t> order(f.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return s.coordinate(a)[0] < s.coordinate(b)[0]; });

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (int which = 0; which < 2; ++which) {
        os << "<polyline fill=\"none\" stroke=\"" << (which == 0 ? "#3b4cc0" : "#b40426")
           << "\" stroke-width=\"1.5\" points=\"";
        for (auto i : order) {
            os << format_double(X(s.coordinate(i)[0])) << ',' << format_double(Y(which == 0 ? f[i].lo() : f[i].hi()))
               << ' ';
        }
        os << "\"/>\n";
    }
    for (auto i : order) {
        if (!f[i].is_point()) {
            const auto x = format_double(X(s.coordinate(i)[0]));
            os << "<line x1=\"" << x << "\" x2=\"" << x << "\" y1=\"" << format_double(Y(f[i].lo())) << "\" y2=\""
               << format_double(Y(f[i].hi())) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

inline std::string svg_2d(const IntervalFunction &f)
{
    const auto &ms = f.space().metric_space();
    if (!ms.grid()) {
        throw PreconditionError("2D plots need a rectangular grid");
    }
    const auto nx = ms.grid()->nx;
    const auto ny = ms.grid()->ny;
    const double cell = std::max(1.0, std::floor(360.0 / static_cast<double>(std::max(nx, ny))));
    const double pw = cell * static_cast<double>(nx);
    const double ph = cell * static_cast<double>(ny);
    const double gap = 20;
    const auto b = bounds_of(f);
    const double lo = b.lo.is_finite() ? b.lo.value() : 0.0;
    const double hi = b.hi.is_finite() ? b.hi.value() : 1.0;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(2 * pw + 3 * gap) << "\" height=\""
       << format_double(ph + 2 * gap + 20) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (int panel = 0; panel < 2; ++panel) {
        const double ox = gap + panel * (pw + gap);
        os << "<g id=\"" << (panel == 0 ? "lower" : "upper") << "\">\n";
        os << "<text x=\"" << format_double(ox) << "\" y=\"14\" font-size=\"12\">" << (panel == 0 ? "lower" : "upper")
           << "</text>\n";
        for (std::size_t j = 0; j < ny; ++j) {
            for (std::size_t i = 0; i < nx; ++i) {
                const auto k = j * nx + i;
                const auto v = panel == 0 ? f[k].lo() : f[k].hi();
                // y grows upward
                const double y = 20 + gap + static_cast<double>(ny - 1 - j) * cell;
                os << "<rect x=\"" << format_double(ox + static_cast<double>(i) * cell) << "\" y=\"" << format_double(y)
                   << "\" width=\"" << format_double(cell) << "\" height=\"" << format_double(cell) << "\" fill=\""
                   << color(v, lo, hi) << "\"/>\n";
            }
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace detail

/// CSV rows "coordinates..., lo, hi" in point order, or an SVG rendering:
/// endpoint curves for 1D, lower and upper heatmaps for 2D grids.
inline std::string emit_plot_data(const IntervalFunction &f, PlotFormat format)
{
    const auto d = detail::plot_dimension(f);
    if (format == PlotFormat::svg) {
        return d == 1 ? detail::svg_1d(f) : detail::svg_2d(f);
    }
    std::ostringstream os;
    os << (d == 1 ? "x,lo,hi\n" : "x,y,lo,hi\n");
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto c = f.space().coordinate(i);
        os << format_double(c[0]) << ',';
        if (d == 2) {
            os << format_double(c[1]) << ',';
        }
        os << detail::format_ext(f[i].lo()) << ',' << detail::format_ext(f[i].hi()) << '\n';
    }
    return os.str();
}

} // namespace hcont
