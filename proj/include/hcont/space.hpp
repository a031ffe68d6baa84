#pragma once

#include <hcont/check_report.hpp>
#include <hcont/error.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hcont {

/// Subset of the points of a finite topology, stored as a 64-bit mask.
class PointSet {
public:
    static constexpr std::size_t max_points = 64;

    constexpr PointSet() noexcept = default;
    explicit constexpr PointSet(std::uint64_t bits) noexcept : bits_(bits) {}

    static constexpr PointSet all(std::size_t n) noexcept
    {
        return PointSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }
    static constexpr PointSet single(std::size_t i) noexcept { return PointSet(std::uint64_t{1} << i); }

    [[nodiscard]] constexpr std::uint64_t bits() const noexcept { return bits_; }
    [[nodiscard]] constexpr bool empty() const noexcept { return bits_ == 0; }
    [[nodiscard]] constexpr std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
    [[nodiscard]] constexpr bool contains(std::size_t i) const noexcept { return ((bits_ >> i) & 1U) != 0; }
    [[nodiscard]] constexpr bool subset_of(PointSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    [[nodiscard]] constexpr bool intersects(PointSet other) const noexcept { return (bits_ & other.bits_) != 0; }

    constexpr void insert(std::size_t i) noexcept { bits_ |= std::uint64_t{1} << i; }

    template <class Fn>
    constexpr void for_each(Fn &&fn) const
    {
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
            fn(static_cast<std::size_t>(std::countr_zero(b)));
        }
    }

    [[nodiscard]] std::vector<std::size_t> indices() const
    {
        std::vector<std::size_t> out;
        out.reserve(size());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    friend constexpr PointSet operator|(PointSet a, PointSet b) noexcept { return PointSet(a.bits_ | b.bits_); }
    friend constexpr PointSet operator&(PointSet a, PointSet b) noexcept { return PointSet(a.bits_ & b.bits_); }
    friend constexpr bool operator==(PointSet, PointSet) noexcept = default;
    friend constexpr auto operator<=>(PointSet a, PointSet b) noexcept { return a.bits_ <=> b.bits_; }

private:
    std::uint64_t bits_ = 0;
};

/// A topology on a finite point set given by its full list of open sets.
///
/// The constructor only normalizes (deduplicates and sorts) the opens; the
/// closure axioms are checked by validate_topology so that a broken topology
/// can be reported rather than rejected. Point labels are free-form; when all
/// of them are numbers the topology also carries 1D coordinates, which lets
/// the closed-form example catalog be sampled on it.
class FiniteTopology {
public:
    FiniteTopology(std::vector<std::string> labels, std::vector<PointSet> opens,
                   std::optional<std::vector<double>> coords = std::nullopt)
        : labels_(std::move(labels)), opens_(std::move(opens)), coords_(std::move(coords))
    {
        if (labels_.empty()) {
            throw InvalidArgument("finite topology needs at least one point");
        }
        if (labels_.size() > PointSet::max_points) {
            throw InvalidArgument("finite topology supports at most 64 points");
        }
        if (coords_ && coords_->size() != labels_.size()) {
            throw InvalidArgument("coordinate count does not match point count");
        }
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (labels_[i] == labels_[j]) {
                    throw InvalidArgument("duplicate point label '" + labels_[i] + "'");
                }
            }
        }
        const auto full = PointSet::all(labels_.size());
        for (auto o : opens_) {
            if (!o.subset_of(full)) {
                throw InvalidArgument("open set refers to a point outside the space");
            }
        }
        std::sort(opens_.begin(), opens_.end());
        opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
    }

    static FiniteTopology discrete(std::size_t n)
    {
        std::vector<PointSet> opens;
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
            opens.emplace_back(b);
        }
        return FiniteTopology(default_labels(n), std::move(opens));
    }

    static FiniteTopology indiscrete(std::size_t n)
    {
        return FiniteTopology(default_labels(n), {PointSet{}, PointSet::all(n)});
    }

    // Points a, b with opens {∅, {a}, {a,b}}.
    static FiniteTopology sierpinski()
    {
        return FiniteTopology({"a", "b"}, {PointSet{}, PointSet::single(0), PointSet::all(2)});
    }

    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string> &labels() const noexcept { return labels_; }
    [[nodiscard]] const std::vector<PointSet> &opens() const noexcept { return opens_; }
    [[nodiscard]] const std::optional<std::vector<double>> &coords() const noexcept { return coords_; }
    [[nodiscard]] PointSet full() const noexcept { return PointSet::all(size()); }

    [[nodiscard]] bool is_open(PointSet s) const { return std::binary_search(opens_.begin(), opens_.end(), s); }

    [[nodiscard]] std::size_t index_of(const std::string &label) const
    {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw PreconditionError("unknown point '" + label + "'");
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }

    friend bool operator==(const FiniteTopology &, const FiniteTopology &) = default;

private:
    static std::vector<std::string> default_labels(std::size_t n)
    {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back("p" + std::to_string(i));
        }
        return out;
    }

    std::vector<std::string> labels_;
    std::vector<PointSet> opens_;
    std::optional<std::vector<double>> coords_;
};

namespace detail {

inline std::string describe(const FiniteTopology &t, PointSet s)
{
    std::string out = "{";
    bool first = true;
    s.for_each([&](std::size_t i) {
        if (!first) {
            out += ",";
        }
        out += t.labels()[i];
        first = false;
    });
    return out + "}";
}

} // namespace detail

/// Reports every missing axiom instance: absent ∅ or X, and every pair of
/// opens whose union or intersection is not open.
inline CheckReport validate_topology(const FiniteTopology &t)
{
    CheckReport report;
    if (!t.is_open(PointSet{})) {
        report.fail("empty set missing");
    }
    if (!t.is_open(t.full())) {
        report.fail("full point set " + detail::describe(t, t.full()) + " missing");
    }
    const auto &opens = t.opens();
    for (std::size_t i = 0; i < opens.size(); ++i) {
        for (std::size_t j = i + 1; j < opens.size(); ++j) {
            const auto u = opens[i] | opens[j];
            const auto v = opens[i] & opens[j];
            if (!t.is_open(u)) {
                report.fail("union " + detail::describe(t, opens[i]) + "∪" + detail::describe(t, opens[j]) + "="
                            + detail::describe(t, u) + " missing");
            }
            if (!t.is_open(v)) {
                report.fail("intersection " + detail::describe(t, opens[i]) + "∩" + detail::describe(t, opens[j])
                            + "=" + detail::describe(t, v) + " missing");
            }
        }
    }
    return report;
}

/// Intersection of all open sets containing x. On a finite topology this is
/// the smallest neighborhood of x, so sup/inf over all neighborhoods are
/// attained on it.
inline PointSet minimal_neighborhood(const FiniteTopology &t, std::size_t x)
{
    if (x >= t.size()) {
        throw PreconditionError("unknown point index " + std::to_string(x));
    }
    PointSet u = t.full();
    bool any = false;
    for (auto o : t.opens()) {
        if (o.contains(x)) {
            u = u & o;
            any = true;
        }
    }
    if (!any || !t.is_open(u)) {
        throw PreconditionError("topology is not valid: no minimal open set around " + t.labels()[x]);
    }
    return u;
}

inline PointSet minimal_neighborhood(const FiniteTopology &t, const std::string &label)
{
    return minimal_neighborhood(t, t.index_of(label));
}

// d is dense iff it meets every non-empty open set.
inline bool is_dense(const FiniteTopology &t, PointSet d)
{
    return std::all_of(t.opens().begin(), t.opens().end(),
                       [d](PointSet o) { return o.empty() || o.intersects(d); });
}

enum class Metric { euclidean, manhattan, discrete };

inline const char *metric_name(Metric m) noexcept
{
    switch (m) {
        case Metric::euclidean:
            return "euclidean";
        case Metric::manhattan:
            return "manhattan";
        case Metric::discrete:
            return "discrete";
    }
    return "?";
}

using Coord = std::array<double, 2>;

/// Finitely many sample points of a 1D or 2D metric space, with a strictly
/// decreasing schedule of ball radii. Points are addressed by index.
class SampledMetricSpace {
public:
    struct GridShape {
        std::size_t nx = 0;
        std::size_t ny = 1;
        friend bool operator==(const GridShape &, const GridShape &) = default;
    };

    SampledMetricSpace(std::size_t dim, std::vector<Coord> points, Metric metric, std::vector<double> radii,
                       std::optional<GridShape> grid = std::nullopt)
        : dim_(dim), points_(std::move(points)), metric_(metric), radii_(std::move(radii)), grid_(grid)
    {
        if (dim_ != 1 && dim_ != 2) {
            throw InvalidArgument("sampled spaces are 1D or 2D");
        }
        if (points_.empty()) {
            throw InvalidArgument("sampled space needs at least one point");
        }
        for (const auto &p : points_) {
            if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || (dim_ == 1 && p[1] != 0.0)) {
                throw InvalidArgument("sample coordinates must be finite");
            }
        }
        order_.resize(points_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) {
            order_[i] = i;
        }
        std::stable_sort(order_.begin(), order_.end(),
                         [this](std::size_t a, std::size_t b) { return points_[a] < points_[b]; });
        min_spacing_ = compute_min_spacing();
        if (min_spacing_ == 0.0) {
            throw InvalidArgument("sampled space contains duplicate points");
        }
        validate_radii(radii_);
    }

    /// Uniform grid of n points on [lo, hi]. Coordinates are computed as
    /// ((n-1-i)*lo + i*hi)/(n-1) so symmetric grids hit 0 exactly. An empty
    /// radii list selects the default schedule (8Δ, 4Δ, 2Δ, 1.5Δ).
    static SampledMetricSpace grid1d(double lo, double hi, std::size_t n, Metric metric = Metric::euclidean,
                                     std::vector<double> radii = {})
    {
        auto xs = axis(lo, hi, n);
        std::vector<Coord> pts;
        pts.reserve(n);
        for (double x : xs) {
            pts.push_back({x, 0.0});
        }
        if (radii.empty()) {
            radii = default_radii(n > 1 ? (hi - lo) / static_cast<double>(n - 1) : 1.0, metric);
        }
        return SampledMetricSpace(1, std::move(pts), metric, std::move(radii), GridShape{n, 1});
    }

    /// Rectangular grid flattened row-major (x fastest).
    static SampledMetricSpace grid2d(double xmin, double xmax, std::size_t nx, double ymin, double ymax,
                                     std::size_t ny, Metric metric = Metric::euclidean, std::vector<double> radii = {})
    {
        auto xs = axis(xmin, xmax, nx);
        auto ys = axis(ymin, ymax, ny);
        std::vector<Coord> pts;
        pts.reserve(nx * ny);
        for (double y : ys) {
            for (double x : xs) {
                pts.push_back({x, y});
            }
        }
        if (radii.empty()) {
            const double dx = nx > 1 ? (xmax - xmin) / static_cast<double>(nx - 1) : 0.0;
            const double dy = ny > 1 ? (ymax - ymin) / static_cast<double>(ny - 1) : 0.0;
            const double d = std::max(dx, dy);
            radii = default_radii(d > 0.0 ? d : 1.0, metric);
        }
        return SampledMetricSpace(2, std::move(pts), metric, std::move(radii), GridShape{nx, ny});
    }

    static std::vector<double> default_radii(double spacing, Metric metric)
    {
        if (metric == Metric::discrete) {
            return {0.5};
        }
        return {8.0 * spacing, 4.0 * spacing, 2.0 * spacing, 1.5 * spacing};
    }

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] Metric metric() const noexcept { return metric_; }
    [[nodiscard]] const std::vector<Coord> &points() const noexcept { return points_; }
    [[nodiscard]] const Coord &point(std::size_t i) const { return points_.at(i); }
    [[nodiscard]] const std::vector<double> &radii() const noexcept { return radii_; }
    [[nodiscard]] double finest_radius() const noexcept { return radii_.back(); }
    [[nodiscard]] double min_spacing() const noexcept { return min_spacing_; }
    [[nodiscard]] const std::optional<GridShape> &grid() const noexcept { return grid_; }

    [[nodiscard]] double distance(const Coord &a, const Coord &b) const noexcept
    {
        switch (metric_) {
            case Metric::euclidean: {
                const double dx = a[0] - b[0];
                const double dy = a[1] - b[1];
                return dim_ == 1 ? std::abs(dx) : std::sqrt(dx * dx + dy * dy);
            }
            case Metric::manhattan:
                return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]);
            case Metric::discrete:
                return (a[0] == b[0] && a[1] == b[1]) ? 0.0 : 1.0;
        }
        return 0.0;
    }

    [[nodiscard]] double distance(std::size_t i, std::size_t j) const { return distance(point(i), point(j)); }

    /// Indices y with ρ(x, y) <= r, in increasing index order.
    [[nodiscard]] std::vector<std::size_t> ball(std::size_t x, double r) const
    {
        std::vector<std::size_t> out;
        const auto &c = point(x);
        if (metric_ == Metric::discrete) {
            if (r >= 1.0) {
                out = order_;
                std::sort(out.begin(), out.end());
            } else {
                out.push_back(x);
            }
            return out;
        }
        // every non-discrete metric here dominates |Δx|, so restrict to the x-slab
        auto first = std::lower_bound(order_.begin(), order_.end(), c[0] - r,
                                      [this](std::size_t i, double v) { return points_[i][0] < v; });
        for (auto it = first; it != order_.end() && points_[*it][0] <= c[0] + r; ++it) {
            if (distance(c, points_[*it]) <= r) {
                out.push_back(*it);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Distance from x to its nearest other sample (infinity for a single point).
    [[nodiscard]] double nearest_distance(std::size_t x) const
    {
        double best = std::numeric_limits<double>::infinity();
        if (metric_ == Metric::discrete) {
            return size() > 1 ? 1.0 : best;
        }
        const auto &c = point(x);
        auto pos = std::find(order_.begin(), order_.end(), x) - order_.begin();
        for (auto k = pos + 1; k < static_cast<std::ptrdiff_t>(order_.size()); ++k) {
            const auto &q = points_[order_[k]];
            if (q[0] - c[0] > best) {
                break;
            }
            best = std::min(best, distance(c, q));
        }
        for (auto k = pos - 1; k >= 0; --k) {
            const auto &q = points_[order_[k]];
            if (c[0] - q[0] > best) {
                break;
            }
            best = std::min(best, distance(c, q));
        }
        return best;
    }

    // A ball radius is admissible when it is positive and, for the non-discrete
    // metrics, strictly exceeds the smallest inter-point distance.
    void validate_radius(double r) const
    {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw PreconditionError("ball radius must be positive and finite");
        }
        if (metric_ != Metric::discrete && size() > 1 && !(r > min_spacing_)) {
            std::ostringstream os;
            os << "radius " << r << " does not exceed the minimal point spacing " << min_spacing_;
            throw PreconditionError(os.str());
        }
    }

    friend bool operator==(const SampledMetricSpace &a, const SampledMetricSpace &b)
    {
        return a.dim_ == b.dim_ && a.metric_ == b.metric_ && a.points_ == b.points_ && a.radii_ == b.radii_
               && a.grid_ == b.grid_;
    }

private:
    static std::vector<double> axis(double lo, double hi, std::size_t n)
    {
        if (n == 0 || !std::isfinite(lo) || !std::isfinite(hi) || (n > 1 && !(lo < hi))) {
            throw InvalidArgument("grid axis needs n >= 1 and min < max");
        }
        std::vector<double> xs(n);
        if (n == 1) {
            xs[0] = lo;
            return xs;
        }
        const auto m = static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            const auto k = static_cast<double>(i);
            xs[i] = ((m - k) * lo + k * hi) / m;
        }
        return xs;
    }

    double compute_min_spacing() const
    {
        if (points_.size() < 2) {
            return std::numeric_limits<double>::infinity();
        }
        if (metric_ == Metric::discrete) {
            for (std::size_t k = 1; k < order_.size(); ++k) {
                const auto &a = points_[order_[k - 1]];
                const auto &b = points_[order_[k]];
                if (a == b) {
                    return 0.0;
                }
            }
            return 1.0;
        }
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < order_.size(); ++k) {
            const auto &a = points_[order_[k]];
            for (std::size_t l = k + 1; l < order_.size(); ++l) {
                const auto &b = points_[order_[l]];
                if (b[0] - a[0] > best) {
                    break;
                }
                best = std::min(best, distance(a, b));
            }
        }
        return best;
    }

    void validate_radii(const std::vector<double> &radii) const
    {
        if (radii.empty()) {
            throw InvalidArgument("radius schedule must be non-empty");
        }
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
                throw InvalidArgument("radius schedule entries must be positive");
            }
            if (i > 0 && !(radii[i] < radii[i - 1])) {
                throw InvalidArgument("radius schedule must be strictly decreasing");
            }
        }
        try {
            validate_radius(radii.back());
        } catch (const PreconditionError &e) {
            throw InvalidArgument(std::string("finest scheduled ") + e.what());
        }
    }

    std::size_t dim_;
    std::vector<Coord> points_;
    Metric metric_;
    std::vector<double> radii_;
    std::optional<GridShape> grid_;
    std::vector<std::size_t> order_;
    double min_spacing_ = 0.0;
};

/// Closed ball {y : ρ(center, y) <= radius} on the metric backend.
struct Ball {
    std::size_t center;
    double radius;

    [[nodiscard]] bool contains(const SampledMetricSpace &s, std::size_t y) const
    {
        return s.distance(center, y) <= radius;
    }
};

inline std::vector<std::size_t> ball_points(const SampledMetricSpace &s, std::size_t x, double r)
{
    if (x >= s.size()) {
        throw PreconditionError("unknown point index " + std::to_string(x));
    }
    if (!(r > 0.0)) {
        throw PreconditionError("ball radius must be positive");
    }
    return s.ball(x, r);
}

enum class Backend { exact, sampled };

inline const char *backend_name(Backend b) noexcept
{
    return b == Backend::exact ? "exact" : "sampled";
}

/// Either realization of the underlying space X.
class Space {
public:
    explicit Space(FiniteTopology t) : impl_(std::move(t))
    {
        auto report = validate_topology(std::get<FiniteTopology>(impl_));
        if (!report.valid()) {
            throw InvalidArgument("invalid topology: " + report.witnesses.front());
        }
    }
    explicit Space(SampledMetricSpace s) : impl_(std::move(s)) {}

    [[nodiscard]] Backend backend() const noexcept
    {
        return std::holds_alternative<FiniteTopology>(impl_) ? Backend::exact : Backend::sampled;
    }
    [[nodiscard]] bool is_finite_topology() const noexcept { return backend() == Backend::exact; }

    [[nodiscard]] const FiniteTopology &topology() const
    {
        if (const auto *t = std::get_if<FiniteTopology>(&impl_)) {
            return *t;
        }
        throw PreconditionError("operation requires a finite topology");
    }

    [[nodiscard]] const SampledMetricSpace &metric_space() const
    {
        if (const auto *s = std::get_if<SampledMetricSpace>(&impl_)) {
            return *s;
        }
        throw PreconditionError("operation requires a sampled metric space");
    }

    [[nodiscard]] std::size_t size() const noexcept
    {
        return std::visit([](const auto &s) { return s.size(); }, impl_);
    }

    // 0 when points carry no coordinates.
    [[nodiscard]] std::size_t dimension() const noexcept
    {
        if (const auto *t = std::get_if<FiniteTopology>(&impl_)) {
            return t->coords() ? 1 : 0;
        }
        return std::get<SampledMetricSpace>(impl_).dim();
    }

    [[nodiscard]] Coord coordinate(std::size_t i) const
    {
        if (const auto *t = std::get_if<FiniteTopology>(&impl_)) {
            if (!t->coords()) {
                throw PreconditionError("finite topology points carry no coordinates");
            }
            return {t->coords()->at(i), 0.0};
        }
        return std::get<SampledMetricSpace>(impl_).point(i);
    }

    friend bool operator==(const Space &a, const Space &b) { return a.impl_ == b.impl_; }

private:
    std::variant<FiniteTopology, SampledMetricSpace> impl_;
};

using SpacePtr = std::shared_ptr<const Space>;

inline SpacePtr make_space(FiniteTopology t)
{
    return std::make_shared<const Space>(std::move(t));
}

inline SpacePtr make_space(SampledMetricSpace s)
{
    return std::make_shared<const Space>(std::move(s));
}

/// Per-point neighborhoods over which the Baire operators take min/max:
/// minimal open sets on a finite topology, balls of the finest scheduled
/// radius (or an override) on a sampled space.
struct Stencil {
    Backend backend = Backend::exact;
    std::optional<double> radius;
    std::vector<std::vector<std::size_t>> neighbors;
};

inline Stencil make_stencil(const Space &space, std::optional<double> radius = std::nullopt)
{
    Stencil st;
    st.backend = space.backend();
    st.neighbors.resize(space.size());
    if (space.is_finite_topology()) {
        if (radius) {
            throw PreconditionError("a radius applies only to sampled metric spaces");
        }
        const auto &t = space.topology();
        for (std::size_t x = 0; x < t.size(); ++x) {
            st.neighbors[x] = minimal_neighborhood(t, x).indices();
        }
        return st;
    }
    const auto &s = space.metric_space();
    const double r = radius.value_or(s.finest_radius());
    s.validate_radius(r);
    st.radius = r;
    for (std::size_t x = 0; x < s.size(); ++x) {
        st.neighbors[x] = s.ball(x, r);
    }
    return st;
}

} // namespace hcont
