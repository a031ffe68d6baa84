#pragma once

// Shared fixtures for the test suites: seeded random generators for small
// topologies and interval functions, and the Khalimsky line.

#include <hcont/funcs.hpp>
#include <hcont/io.hpp>
#include <hcont/oracle.hpp>
#include <hcont/space.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hcont::support {

using Rng = std::mt19937_64;

// All topologies on 1..4 labeled points, computed once.
inline const std::vector<FiniteTopology> &topologies_up_to_4()
{
    static const std::vector<FiniteTopology> all = [] {
        std::vector<FiniteTopology> out;
        for (std::size_t n = 1; n <= 4; ++n) {
            for (auto &t : enumerate_topologies(n)) {
                out.push_back(std::move(t));
            }
        }
        return out;
    }();
    return all;
}

inline SpacePtr random_topology(Rng &rng, std::size_t max_points = 4)
{
    const auto &all = topologies_up_to_4();
    for (;;) {
        const auto &t = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
        if (t.size() <= max_points) {
            return make_space(t);
        }
    }
}

inline Interval random_interval(Rng &rng, const std::vector<ExtReal> &chain)
{
    std::uniform_int_distribution<std::size_t> pick(0, chain.size() - 1);
    auto a = chain[pick(rng)];
    auto b = chain[pick(rng)];
    return a <= b ? Interval(a, b) : Interval(b, a);
}

inline IntervalFunction random_function(Rng &rng, const SpacePtr &space, const std::vector<ExtReal> &chain)
{
    std::vector<Interval> v;
    for (std::size_t i = 0; i < space->size(); ++i) {
        v.push_back(random_interval(rng, chain));
    }
    return IntervalFunction(space, std::move(v));
}

inline IntervalFunction random_point_function(Rng &rng, const SpacePtr &space, const std::vector<ExtReal> &chain)
{
    std::uniform_int_distribution<std::size_t> pick(0, chain.size() - 1);
    std::vector<ExtReal> v;
    for (std::size_t i = 0; i < space->size(); ++i) {
        v.push_back(chain[pick(rng)]);
    }
    return IntervalFunction::point_valued(space, v);
}

inline const std::vector<ExtReal> &chain012()
{
    static const std::vector<ExtReal> c{0.0, 1.0, 2.0};
    return c;
}

// Random finite interval function with endpoints in [-scale, scale].
inline IntervalFunction random_real_function(Rng &rng, const SpacePtr &space, double scale = 100.0)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<Interval> v;
    for (std::size_t i = 0; i < space->size(); ++i) {
        const double a = u(rng);
        const double b = u(rng);
        v.emplace_back(std::min(a, b), std::max(a, b));
    }
    return IntervalFunction(space, std::move(v));
}

/// Integers lo..hi with odd points open ({k}) and even points closed (minimal
/// neighborhood {k-1, k, k+1}). Labels are the integers, so catalog examples
/// can be sampled on it.
inline SpacePtr khalimsky(int lo, int hi)
{
    const auto n = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::string> labels;
    std::vector<double> coords;
    for (int k = lo; k <= hi; ++k) {
        labels.push_back(std::to_string(k));
        coords.push_back(k);
    }
    std::vector<std::uint64_t> U(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int k = lo + static_cast<int>(i);
        U[i] = std::uint64_t{1} << i;
        if (k % 2 == 0) {
            if (i > 0) {
                U[i] |= std::uint64_t{1} << (i - 1);
            }
            if (i + 1 < n) {
                U[i] |= std::uint64_t{1} << (i + 1);
            }
        }
    }
    // open iff it contains U_x for each of its points
    std::vector<PointSet> opens;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        bool open = true;
        for (std::size_t i = 0; i < n && open; ++i) {
            open = !((s >> i) & 1U) || (s & U[i]) == U[i];
        }
        if (open) {
            opens.emplace_back(s);
        }
    }
    return make_space(FiniteTopology(std::move(labels), std::move(opens), std::move(coords)));
}

} // namespace hcont::support
