#pragma once

#include <hcont/error.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

namespace hcont {

/// A value of the extended real line: a finite double, +inf or -inf.
///
/// Only the order structure is used anywhere in the library (comparison,
/// min, max), so the infinities never meet arithmetic and no NaN can be
/// produced. Construction from NaN is rejected.
class ExtReal {
public:
    constexpr ExtReal() noexcept = default;

    // NOLINTNEXTLINE(google-explicit-constructor)
    constexpr ExtReal(double v) : v_(v)
    {
        if (v != v) {
            throw InvalidArgument("ExtReal cannot hold NaN");
        }
    }

    static constexpr ExtReal inf() noexcept { return ExtReal(Raw{}, std::numeric_limits<double>::infinity()); }
    static constexpr ExtReal neg_inf() noexcept { return ExtReal(Raw{}, -std::numeric_limits<double>::infinity()); }

    [[nodiscard]] constexpr double value() const noexcept { return v_; }
    [[nodiscard]] constexpr bool is_finite() const noexcept
    {
        return v_ != std::numeric_limits<double>::infinity() && v_ != -std::numeric_limits<double>::infinity();
    }
    [[nodiscard]] constexpr bool is_pos_inf() const noexcept { return v_ == std::numeric_limits<double>::infinity(); }
    [[nodiscard]] constexpr bool is_neg_inf() const noexcept { return v_ == -std::numeric_limits<double>::infinity(); }

    friend constexpr bool operator==(ExtReal a, ExtReal b) noexcept { return a.v_ == b.v_; }
    friend constexpr std::weak_ordering operator<=>(ExtReal a, ExtReal b) noexcept
    {
        if (a.v_ < b.v_) {
            return std::weak_ordering::less;
        }
        if (b.v_ < a.v_) {
            return std::weak_ordering::greater;
        }
        return std::weak_ordering::equivalent;
    }

    friend std::ostream &operator<<(std::ostream &os, ExtReal x)
    {
        if (x.is_pos_inf()) {
            return os << "inf";
        }
        if (x.is_neg_inf()) {
            return os << "-inf";
        }
        return os << x.v_;
    }

private:
    struct Raw {};
    constexpr ExtReal(Raw, double v) noexcept : v_(v) {}

    double v_ = 0.0;
};

/// Closed interval [lo, hi] of extended reals with lo <= hi.
class Interval {
public:
    constexpr Interval() noexcept = default;

    constexpr Interval(ExtReal lo, ExtReal hi) : lo_(lo), hi_(hi)
    {
        if (hi < lo) {
            throw InvalidArgument("interval lower endpoint exceeds upper endpoint");
        }
    }

    [[nodiscard]] constexpr ExtReal lo() const noexcept { return lo_; }
    [[nodiscard]] constexpr ExtReal hi() const noexcept { return hi_; }

    [[nodiscard]] constexpr bool is_point() const noexcept { return lo_ == hi_; }
    [[nodiscard]] constexpr bool is_finite() const noexcept { return lo_.is_finite() && hi_.is_finite(); }
    [[nodiscard]] constexpr bool contains(ExtReal x) const noexcept { return lo_ <= x && x <= hi_; }

    friend constexpr bool operator==(const Interval &, const Interval &) noexcept = default;

    friend std::ostream &operator<<(std::ostream &os, const Interval &a)
    {
        return os << '[' << a.lo_ << ", " << a.hi_ << ']';
    }

private:
    ExtReal lo_{};
    ExtReal hi_{};
};

// Componentwise order: [a,A] <= [b,B] iff a <= b and A <= B.
[[nodiscard]] constexpr bool interval_leq(const Interval &a, const Interval &b) noexcept
{
    return a.lo() <= b.lo() && a.hi() <= b.hi();
}

// Set inclusion a ⊆ b.
[[nodiscard]] constexpr bool interval_subset(const Interval &a, const Interval &b) noexcept
{
    return b.lo() <= a.lo() && a.hi() <= b.hi();
}

[[nodiscard]] constexpr Interval point_interval(ExtReal x) noexcept
{
    return Interval(x, x);
}

} // namespace hcont
