#pragma once

#include <hcont/error.hpp>
#include <hcont/extreal_interval.hpp>
#include <hcont/space.hpp>

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hcont {

/// f = [f_lo, f_hi]: one interval per point of a space.
class IntervalFunction {
public:
    IntervalFunction(SpacePtr space, std::vector<Interval> values) : space_(std::move(space)), values_(std::move(values))
    {
        if (!space_) {
            throw InvalidArgument("interval function needs a space");
        }
        if (values_.size() != space_->size()) {
            throw InvalidArgument("interval function has " + std::to_string(values_.size()) + " values for "
                                  + std::to_string(space_->size()) + " points");
        }
    }

    static IntervalFunction constant(SpacePtr space, Interval v)
    {
        const auto n = space->size();
        return IntervalFunction(std::move(space), std::vector<Interval>(n, v));
    }

    static IntervalFunction point_valued(SpacePtr space, const std::vector<ExtReal> &values)
    {
        std::vector<Interval> out;
        out.reserve(values.size());
        for (auto v : values) {
            out.push_back(point_interval(v));
        }
        return IntervalFunction(std::move(space), std::move(out));
    }

    static IntervalFunction from_endpoints(SpacePtr space, const std::vector<ExtReal> &lo, const std::vector<ExtReal> &hi)
    {
        if (lo.size() != hi.size()) {
            throw InvalidArgument("endpoint vectors differ in length");
        }
        std::vector<Interval> out;
        out.reserve(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) {
            out.emplace_back(lo[i], hi[i]);
        }
        return IntervalFunction(std::move(space), std::move(out));
    }

    [[nodiscard]] const Space &space() const noexcept { return *space_; }
    [[nodiscard]] const SpacePtr &space_ptr() const noexcept { return space_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] const Interval &operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] const std::vector<Interval> &values() const noexcept { return values_; }

    [[nodiscard]] std::vector<ExtReal> lower_values() const
    {
        std::vector<ExtReal> out;
        out.reserve(values_.size());
        for (const auto &v : values_) {
            out.push_back(v.lo());
        }
        return out;
    }

    [[nodiscard]] std::vector<ExtReal> upper_values() const
    {
        std::vector<ExtReal> out;
        out.reserve(values_.size());
        for (const auto &v : values_) {
            out.push_back(v.hi());
        }
        return out;
    }

    // The endpoint functions as point-valued interval functions.
    [[nodiscard]] IntervalFunction lower() const { return point_valued(space_, lower_values()); }
    [[nodiscard]] IntervalFunction upper() const { return point_valued(space_, upper_values()); }

    [[nodiscard]] bool is_point_valued() const noexcept
    {
        for (const auto &v : values_) {
            if (!v.is_point()) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const IntervalFunction &a, const IntervalFunction &b)
    {
        return (a.space_ == b.space_ || *a.space_ == *b.space_) && a.values_ == b.values_;
    }

private:
    SpacePtr space_;
    std::vector<Interval> values_;
};

inline bool same_space(const IntervalFunction &a, const IntervalFunction &b)
{
    return a.space_ptr() == b.space_ptr() || a.space() == b.space();
}

inline void require_same_space(const IntervalFunction &a, const IntervalFunction &b)
{
    if (!same_space(a, b)) {
        throw SpaceMismatch();
    }
}

/// Non-empty finite list of functions over one common space.
class FunctionFamily {
public:
    explicit FunctionFamily(std::vector<IntervalFunction> members) : members_(std::move(members))
    {
        if (members_.empty()) {
            throw PreconditionError("function family must be non-empty");
        }
        for (const auto &m : members_) {
            require_same_space(members_.front(), m);
        }
    }

    [[nodiscard]] const std::vector<IntervalFunction> &members() const noexcept { return members_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] const Space &space() const noexcept { return members_.front().space(); }
    [[nodiscard]] const SpacePtr &space_ptr() const noexcept { return members_.front().space_ptr(); }

    [[nodiscard]] auto begin() const noexcept { return members_.begin(); }
    [[nodiscard]] auto end() const noexcept { return members_.end(); }

private:
    std::vector<IntervalFunction> members_;
};

// Pointwise interval order.
inline bool func_leq(const IntervalFunction &f, const IntervalFunction &g)
{
    require_same_space(f, g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!interval_leq(f[i], g[i])) {
            return false;
        }
    }
    return true;
}

// g(x) ⊆ f(x) at every point.
inline bool func_subset(const IntervalFunction &g, const IntervalFunction &f)
{
    require_same_space(g, f);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!interval_subset(g[i], f[i])) {
            return false;
        }
    }
    return true;
}

struct Bounds {
    ExtReal lo;
    ExtReal hi;
};

// (min of lower endpoints, max of upper endpoints).
inline Bounds bounds_of(const IntervalFunction &f)
{
    Bounds b{ExtReal::inf(), ExtReal::neg_inf()};
    for (const auto &v : f.values()) {
        b.lo = std::min(b.lo, v.lo());
        b.hi = std::max(b.hi, v.hi());
    }
    return b;
}

// ---------------------------------------------------------------------------
// Closed-form example catalog.

enum class ExampleKind { step, sin_reciprocal, shock, constant };

struct ExampleSpec {
    ExampleKind kind = ExampleKind::constant;
    double constant = 0.0;

    // Required coordinate dimension; 0 means any space, with or without coordinates.
    [[nodiscard]] std::size_t dimension() const noexcept
    {
        switch (kind) {
            case ExampleKind::step:
                return 1;
            case ExampleKind::sin_reciprocal:
            case ExampleKind::shock:
                return 2;
            case ExampleKind::constant:
                return 0;
        }
        return 0;
    }
};

inline ExampleSpec parse_example(std::string_view name)
{
    if (name == "step") {
        return {ExampleKind::step};
    }
    if (name == "sin-reciprocal") {
        return {ExampleKind::sin_reciprocal};
    }
    if (name == "shock") {
        return {ExampleKind::shock};
    }
    constexpr std::string_view prefix = "constant:";
    if (name.substr(0, prefix.size()) == prefix) {
        const auto arg = name.substr(prefix.size());
        double c = 0.0;
        const auto *first = arg.data();
        const auto *last = arg.data() + arg.size();
        auto [ptr, ec] = std::from_chars(first, last, c);
        if (arg.empty() || ec != std::errc{} || ptr != last || !std::isfinite(c)) {
            throw InvalidArgument("constant example needs a finite real, got '" + std::string(arg) + "'");
        }
        return {ExampleKind::constant, c};
    }
    throw InvalidArgument("unknown example '" + std::string(name) + "'");
}

namespace detail {

// The sign rule of the step example: 1 above zero, -1 below, [-1,1] at zero.
constexpr Interval step_rule(double v)
{
    if (v > 0.0) {
        return point_interval(1.0);
    }
    if (v < 0.0) {
        return point_interval(-1.0);
    }
    return Interval(-1.0, 1.0);
}

} // namespace detail

/// Value of a catalog example at p. Points exactly on the discontinuity locus
/// get the interval value; everything else a point value.
///
/// The shock solution carries [0, 1] on its shock line: the one-sided limits
/// there are 1 (left) and 0 (right), and [0, 1] is the value that makes the
/// function H-continuous.
inline Interval example_value(const ExampleSpec &ex, const Coord &p)
{
    switch (ex.kind) {
        case ExampleKind::step:
            return detail::step_rule(p[0]);
        case ExampleKind::sin_reciprocal: {
            if (p[0] == 0.0 && p[1] == 0.0) {
                return Interval(-1.0, 1.0);
            }
            return detail::step_rule(std::sin(1.0 / std::hypot(p[0], p[1])));
        }
        case ExampleKind::shock: {
            const double x = p[0];
            const double t = p[1];
            if (t < 0.0) {
                throw PreconditionError("shock example is defined for t >= 0 only");
            }
            if (t < 1.0) {
                if (x < t - 1.0) {
                    return point_interval(1.0);
                }
                if (x <= 0.0) {
                    return point_interval(x / (t - 1.0) + 0.0); // no -0 at x = 0
                }
                return point_interval(0.0);
            }
            const double front = (t - 1.0) / 2.0;
            if (x < front) {
                return point_interval(1.0);
            }
            if (x > front) {
                return point_interval(0.0);
            }
            return Interval(0.0, 1.0);
        }
        case ExampleKind::constant:
            return point_interval(ex.constant);
    }
    return {};
}

inline IntervalFunction make_example(const ExampleSpec &ex, SpacePtr space)
{
    const auto need = ex.dimension();
    if (need != 0 && space->dimension() != need) {
        throw PreconditionError("example needs a " + std::to_string(need) + "D space, got "
                                + std::to_string(space->dimension()) + "D");
    }
    std::vector<Interval> values;
    values.reserve(space->size());
    for (std::size_t i = 0; i < space->size(); ++i) {
        values.push_back(need == 0 ? point_interval(ex.constant) : example_value(ex, space->coordinate(i)));
    }
    return IntervalFunction(std::move(space), std::move(values));
}

inline IntervalFunction make_example(std::string_view name, SpacePtr space)
{
    return make_example(parse_example(name), std::move(space));
}

} // namespace hcont
