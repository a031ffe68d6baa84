#pragma once

// Brute-force counterparts of the production operators for small finite
// topologies. Nothing here calls into baire or hcontinuity: Baire operators
// are recomputed from the list of opens, and H-continuity from the definition.

#include <hcont/check_report.hpp>
#include <hcont/error.hpp>
#include <hcont/funcs.hpp>
#include <hcont/lattice.hpp>
#include <hcont/space.hpp>

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hcont {

struct EnumerationBudget {
    std::size_t max_points = 5;
    std::size_t max_chain = 5;
    std::uint64_t max_candidates = 1'000'000;

    void validate() const
    {
        if (max_points > 5 || max_chain > 5) {
            throw InvalidArgument("enumeration budget allows at most 5 points and 5 chain values");
        }
    }
};

namespace oracle {

inline void check_budget(const EnumerationBudget &b, std::size_t points, std::size_t chain)
{
    b.validate();
    if (points > b.max_points) {
        throw BudgetError("space has " + std::to_string(points) + " points, budget allows "
                          + std::to_string(b.max_points));
    }
    if (chain > b.max_chain) {
        throw BudgetError("chain has " + std::to_string(chain) + " values, budget allows "
                          + std::to_string(b.max_chain));
    }
}

// Raw open sets as bit masks.
inline std::vector<std::uint64_t> open_masks(const FiniteTopology &t)
{
    std::vector<std::uint64_t> out;
    for (auto o : t.opens()) {
        out.push_back(o.bits());
    }
    return out;
}

// sup over opens V ∋ x of inf over V (lower = true), or the mirrored inf-sup.
inline std::vector<ExtReal> sup_inf(const std::vector<std::uint64_t> &opens, const std::vector<ExtReal> &v, bool lower)
{
    const auto n = v.size();
    std::vector<ExtReal> out(n, lower ? ExtReal::neg_inf() : ExtReal::inf());
    for (std::size_t x = 0; x < n; ++x) {
        for (auto V : opens) {
            if (((V >> x) & 1U) == 0) {
                continue;
            }
            ExtReal inner = lower ? ExtReal::inf() : ExtReal::neg_inf();
            for (std::size_t y = 0; y < n; ++y) {
                if ((V >> y) & 1U) {
                    inner = lower ? std::min(inner, v[y]) : std::max(inner, v[y]);
                }
            }
            out[x] = lower ? std::max(out[x], inner) : std::min(out[x], inner);
        }
    }
    return out;
}

inline std::vector<ExtReal> lows(const std::vector<Interval> &f)
{
    std::vector<ExtReal> out;
    for (const auto &v : f) {
        out.push_back(v.lo());
    }
    return out;
}

inline std::vector<ExtReal> highs(const std::vector<Interval> &f)
{
    std::vector<ExtReal> out;
    for (const auto &v : f) {
        out.push_back(v.hi());
    }
    return out;
}

// All intervals [a, b] with a <= b from a sorted chain, ordered by (a, b).
inline std::vector<Interval> chain_intervals(const std::vector<ExtReal> &chain)
{
    std::vector<Interval> out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        for (std::size_t j = i; j < chain.size(); ++j) {
            out.emplace_back(chain[i], chain[j]);
        }
    }
    return out;
}

inline std::vector<ExtReal> sorted_chain(std::vector<ExtReal> chain)
{
    std::sort(chain.begin(), chain.end());
    chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
    return chain;
}

// Calls fn on every tuple of choices, last position varying fastest.
template <class Fn>
void odometer(const std::vector<std::size_t> &radix, Fn fn)
{
    std::vector<std::size_t> idx(radix.size(), 0);
    for (auto r : radix) {
        if (r == 0) {
            return;
        }
    }
    for (;;) {
        if (!fn(idx)) {
            return;
        }
        std::size_t k = radix.size();
        while (k > 0) {
            --k;
            if (++idx[k] < radix[k]) {
                break;
            }
            idx[k] = 0;
            if (k == 0) {
                return;
            }
        }
        if (radix.empty()) {
            return;
        }
    }
}

inline std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap)
{
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        r *= base;
        if (r > cap) {
            return cap + 1;
        }
    }
    return r;
}

} // namespace oracle

struct OracleBaireResult {
    IntervalFunction lower;
    IntervalFunction upper;
};

/// (I(f), S(f)) from sup-inf / inf-sup over every open set containing each point.
inline OracleBaireResult oracle_baire(const IntervalFunction &f, const EnumerationBudget &budget = {})
{
    const auto &t = f.space().topology();
    oracle::check_budget(budget, t.size(), 0);
    const auto opens = oracle::open_masks(t);
    const auto I = oracle::sup_inf(opens, oracle::lows(f.values()), true);
    const auto S = oracle::sup_inf(opens, oracle::highs(f.values()), false);
    return {IntervalFunction::point_valued(f.space_ptr(), I), IntervalFunction::point_valued(f.space_ptr(), S)};
}

/// Definition check on the raw opens: every g ⊆ f with endpoints in the chain
/// must satisfy [I(g_lo), S(g_hi)] = f.
inline bool oracle_is_h_continuous(const FiniteTopology &t, const std::vector<Interval> &f,
                                   const std::vector<ExtReal> &chain)
{
    const auto opens = oracle::open_masks(t);
    const auto all = oracle::chain_intervals(chain);
    std::vector<std::vector<Interval>> sub(f.size());
    std::vector<std::size_t> radix(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) {
        for (const auto &iv : all) {
            if (f[x].lo() <= iv.lo() && iv.hi() <= f[x].hi()) {
                sub[x].push_back(iv);
            }
        }
        radix[x] = sub[x].size();
    }
    bool ok = true;
    std::vector<Interval> g(f.size());
    oracle::odometer(radix, [&](const std::vector<std::size_t> &idx) {
        for (std::size_t x = 0; x < f.size(); ++x) {
            g[x] = sub[x][idx[x]];
        }
        const auto lo = oracle::sup_inf(opens, oracle::lows(g), true);
        const auto hi = oracle::sup_inf(opens, oracle::highs(g), false);
        for (std::size_t x = 0; x < f.size(); ++x) {
            if (lo[x] != f[x].lo() || hi[x] != f[x].hi()) {
                ok = false;
                return false;
            }
        }
        return true;
    });
    return ok;
}

/// All H-continuous functions with endpoints in the chain, in lexicographic
/// order: point 0 first, intervals ordered by (lo, hi).
inline std::vector<IntervalFunction> enumerate_h_continuous(const SpacePtr &space, std::vector<ExtReal> chain,
                                                            const EnumerationBudget &budget = {})
{
    const auto &t = space->topology();
    chain = oracle::sorted_chain(std::move(chain));
    oracle::check_budget(budget, t.size(), chain.size());
    const auto options = oracle::chain_intervals(chain);
    const auto total = oracle::checked_power(options.size(), t.size(), budget.max_candidates);
    if (total > budget.max_candidates) {
        throw BudgetError("enumeration would exceed " + std::to_string(budget.max_candidates) + " candidates");
    }
    std::vector<IntervalFunction> out;
    std::vector<Interval> f(t.size());
    oracle::odometer(std::vector<std::size_t>(t.size(), options.size()), [&](const std::vector<std::size_t> &idx) {
        for (std::size_t x = 0; x < t.size(); ++x) {
            f[x] = options[idx[x]];
        }
        if (oracle_is_h_continuous(t, f, chain)) {
            out.emplace_back(space, f);
        }
        return true;
    });
    return out;
}

/// Every topology on n labeled points, found by filtering all families of
/// subsets for closure under union and intersection.
inline std::vector<FiniteTopology> enumerate_topologies(std::size_t n)
{
    if (n == 0 || n > 4) {
        throw BudgetError("topology enumeration supports 1 to 4 points");
    }
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    // proper non-empty subsets
    std::vector<std::uint64_t> middle;
    for (std::uint64_t s = 1; s < full; ++s) {
        middle.push_back(s);
    }
    std::vector<FiniteTopology> out;
    const std::uint64_t families = std::uint64_t{1} << middle.size();
    for (std::uint64_t pick = 0; pick < families; ++pick) {
        std::vector<std::uint64_t> sets{0, full};
        for (std::size_t k = 0; k < middle.size(); ++k) {
            if ((pick >> k) & 1U) {
                sets.push_back(middle[k]);
            }
        }
        const auto member = [&](std::uint64_t s) { return std::find(sets.begin(), sets.end(), s) != sets.end(); };
        bool closed = true;
        for (std::size_t i = 0; i < sets.size() && closed; ++i) {
            for (std::size_t j = i + 1; j < sets.size() && closed; ++j) {
                closed = member(sets[i] | sets[j]) && member(sets[i] & sets[j]);
            }
        }
        if (!closed) {
            continue;
        }
        std::vector<PointSet> opens;
        for (auto s : sets) {
            opens.emplace_back(s);
        }
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) {
            labels.push_back("p" + std::to_string(i));
        }
        out.emplace_back(std::move(labels), std::move(opens));
    }
    return out;
}

namespace oracle {

inline std::string describe_subset(const std::vector<IntervalFunction> &h, std::uint64_t mask)
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if ((mask >> i) & 1U) {
            os << (first ? "" : ", ") << '(';
            for (std::size_t x = 0; x < h[i].size(); ++x) {
                os << (x ? " " : "") << h[i][x];
            }
            os << ')';
            first = false;
        }
    }
    os << '}';
    return os.str();
}

inline bool pointwise_leq(const IntervalFunction &a, const IntervalFunction &b)
{
    for (std::size_t x = 0; x < a.size(); ++x) {
        if (!(a[x].lo() <= b[x].lo() && a[x].hi() <= b[x].hi())) {
            return false;
        }
    }
    return true;
}

} // namespace oracle

/// For every non-empty subset of the enumerated H-continuous functions and
/// every enumerated upper (lower) bound of it, family_sup (family_inf) must
/// land in the enumerated set, bound the subset, and sit below (above) every
/// enumerated upper (lower) bound.
inline CheckReport verify_dedekind_completeness(const SpacePtr &space, std::vector<ExtReal> chain,
                                                const EnumerationBudget &budget = {})
{
    const auto H = enumerate_h_continuous(space, std::move(chain), budget);
    CheckReport report;
    report.qualifier = "Dedekind complete over " + std::to_string(H.size()) + " functions";
    if (H.size() >= 63 || (std::uint64_t{1} << H.size()) > budget.max_candidates) {
        throw BudgetError("subset enumeration over " + std::to_string(H.size()) + " functions exceeds the budget");
    }
    const auto in_H = [&](const IntervalFunction &u) { return std::find(H.begin(), H.end(), u) != H.end(); };

    const std::uint64_t subsets = std::uint64_t{1} << H.size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        std::vector<IntervalFunction> members;
        for (std::size_t i = 0; i < H.size(); ++i) {
            if ((mask >> i) & 1U) {
                members.push_back(H[i]);
            }
        }
        const FunctionFamily F(members);
        std::vector<const IntervalFunction *> ub;
        std::vector<const IntervalFunction *> lb;
        for (const auto &h : H) {
            bool above = true;
            bool below = true;
            for (const auto &m : members) {
                above = above && oracle::pointwise_leq(m, h);
                below = below && oracle::pointwise_leq(h, m);
            }
            if (above) {
                ub.push_back(&h);
            }
            if (below) {
                lb.push_back(&h);
            }
        }
        const auto fail = [&](const char *what, const IntervalFunction &bound) {
            std::ostringstream os;
            os << what << " for subset " << oracle::describe_subset(H, mask) << " with bound (";
            for (std::size_t x = 0; x < bound.size(); ++x) {
                os << (x ? " " : "") << bound[x];
            }
            os << ')';
            report.fail(os.str());
        };
        for (const auto *b : ub) {
            const auto u = family_sup(F, *b);
            if (!in_H(u)) {
                fail("sup not H-continuous", *b);
            }
            for (const auto &m : members) {
                if (!oracle::pointwise_leq(m, u)) {
                    fail("sup is not an upper bound", *b);
                    break;
                }
            }
            for (const auto *other : ub) {
                if (!oracle::pointwise_leq(u, *other)) {
                    fail("sup exceeds an upper bound", *other);
                }
            }
        }
        for (const auto *b : lb) {
            const auto v = family_inf(F, *b);
            if (!in_H(v)) {
                fail("inf not H-continuous", *b);
            }
            for (const auto &m : members) {
                if (!oracle::pointwise_leq(v, m)) {
                    fail("inf is not a lower bound", *b);
                    break;
                }
            }
            for (const auto *other : lb) {
                if (!oracle::pointwise_leq(*other, v)) {
                    fail("inf is below a lower bound", *other);
                }
            }
        }
    }
    return report;
}

} // namespace hcont
