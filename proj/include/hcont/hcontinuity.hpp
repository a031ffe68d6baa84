#pragma once

#include <hcont/baire.hpp>
#include <hcont/check_report.hpp>
#include <hcont/funcs.hpp>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace hcont {

enum class HCriterion { definition, b, c };

inline const char *criterion_name(HCriterion c) noexcept
{
    switch (c) {
        case HCriterion::definition:
            return "definition";
        case HCriterion::b:
            return "b";
        case HCriterion::c:
            return "c";
    }
    return "?";
}

struct HContFailure {
    std::size_t point;
    std::string equality;
    ExtReal lhs;
    ExtReal rhs;
};

struct HContReport {
    HCriterion criterion = HCriterion::c;
    Backend backend = Backend::exact;
    std::optional<double> radius;
    std::vector<HContFailure> failures;

    [[nodiscard]] bool verdict() const noexcept { return failures.empty(); }

    // On sampled spaces the verdict is always stated relative to the stencil radius.
    [[nodiscard]] std::string qualifier() const
    {
        std::ostringstream os;
        if (!verdict()) {
            os << "not ";
        }
        if (backend == Backend::sampled) {
            os << "discrete-H-continuous at radius " << *radius;
        } else {
            os << "H-continuous";
        }
        return os.str();
    }
};

namespace detail {

inline void compare_into(HContReport &r, const std::vector<ExtReal> &lhs, const std::vector<ExtReal> &rhs,
                         const char *equality)
{
    for (std::size_t x = 0; x < lhs.size(); ++x) {
        if (lhs[x] != rhs[x]) {
            r.failures.push_back({x, equality, lhs[x], rhs[x]});
        }
    }
}

} // namespace detail

/// H-continuity through the pair of equalities S(f_lo) = f_hi and
/// I(f_hi) = f_lo, which characterize it for every topological space.
inline HContReport is_h_continuous(const IntervalFunction &f, const BaireOptions &opt = {})
{
    const auto st = make_stencil(f.space(), opt.radius);
    HContReport r{HCriterion::c, st.backend, st.radius, {}};
    const auto lo = f.lower_values();
    const auto hi = f.upper_values();
    detail::compare_into(r, detail::max_over(st, lo), hi, "S(lower)=upper");
    detail::compare_into(r, detail::min_over(st, hi), lo, "I(upper)=lower");
    return r;
}

/// The equivalent test F(f_lo) = F(f_hi) = f.
inline HContReport check_criterion_b(const IntervalFunction &f, const BaireOptions &opt = {})
{
    const auto st = make_stencil(f.space(), opt.radius);
    HContReport r{HCriterion::b, st.backend, st.radius, {}};
    const auto lo = f.lower_values();
    const auto hi = f.upper_values();
    detail::compare_into(r, detail::min_over(st, lo), lo, "I(lower)=lower");
    detail::compare_into(r, detail::max_over(st, lo), hi, "S(lower)=upper");
    detail::compare_into(r, detail::min_over(st, hi), lo, "I(upper)=lower");
    detail::compare_into(r, detail::max_over(st, hi), hi, "S(upper)=upper");
    return r;
}

inline std::vector<ExtReal> normalize_chain(std::vector<ExtReal> chain)
{
    std::sort(chain.begin(), chain.end());
    chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
    return chain;
}

/// H-continuity straight from the definition: every g with g(x) ⊆ f(x) must
/// complete back to f. Only g with endpoints in the value chain are tried;
/// since all endpoints of f lie in the chain, the extremal sub-functions are
/// among them and this is exhaustive. Exponential, finite topologies only.
inline HContReport is_h_continuous_by_definition(const IntervalFunction &f, std::vector<ExtReal> chain)
{
    if (!f.space().is_finite_topology()) {
        throw PreconditionError("definition check runs on finite topologies only");
    }
    chain = normalize_chain(std::move(chain));
    if (f.size() > 5 || chain.size() > 5) {
        throw PreconditionError("definition check is limited to 5 points and 5 chain values");
    }
    const auto in_chain = [&](ExtReal v) { return std::binary_search(chain.begin(), chain.end(), v); };

    // candidate sub-intervals per point
    std::vector<std::vector<Interval>> options(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (!in_chain(f[x].lo()) || !in_chain(f[x].hi())) {
            throw PreconditionError("endpoint of f at point " + std::to_string(x) + " is not in the value chain");
        }
        for (auto a : chain) {
            for (auto b : chain) {
                if (a <= b && f[x].lo() <= a && b <= f[x].hi()) {
                    options[x].emplace_back(a, b);
                }
            }
        }
    }

    const auto st = make_stencil(f.space());
    HContReport r{HCriterion::definition, st.backend, st.radius, {}};
    std::vector<std::size_t> idx(f.size(), 0);
    std::vector<Interval> g(f.size());
    for (;;) {
        for (std::size_t x = 0; x < f.size(); ++x) {
            g[x] = options[x][idx[x]];
        }
        const auto fg = detail::graph_completion(st, IntervalFunction(f.space_ptr(), g));
        for (std::size_t x = 0; x < f.size(); ++x) {
            if (fg[x].lo() != f[x].lo()) {
                r.failures.push_back({x, "F(g)lower=lower", fg[x].lo(), f[x].lo()});
            }
            if (fg[x].hi() != f[x].hi()) {
                r.failures.push_back({x, "F(g)upper=upper", fg[x].hi(), f[x].hi()});
            }
        }
        if (!r.failures.empty()) {
            return r;
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == options[k].size()) {
            idx[k++] = 0;
        }
        if (k == idx.size()) {
            return r;
        }
    }
}

/// F(S(I(f))), which is H-continuous for every f.
///
/// Evaluated as [I(u), u] with u = S(I(f)). The two agree wherever S is
/// idempotent (every topology), and on ball stencils, where S is not, the
/// reduced form is the one that stays discretely H-continuous.
inline IntervalFunction regularize_lower(const IntervalFunction &f, const BaireOptions &opt = {})
{
    const auto st = make_stencil(f.space(), opt.radius);
    const auto u = detail::max_over(st, detail::min_over(st, f.lower_values()));
    return IntervalFunction::from_endpoints(f.space_ptr(), detail::min_over(st, u), u);
}

/// F(I(S(f))), evaluated as [v, S(v)] with v = I(S(f)).
inline IntervalFunction regularize_upper(const IntervalFunction &f, const BaireOptions &opt = {})
{
    const auto st = make_stencil(f.space(), opt.radius);
    const auto v = detail::min_over(st, detail::max_over(st, f.upper_values()));
    return IntervalFunction::from_endpoints(f.space_ptr(), v, detail::max_over(st, v));
}

enum class PointClass { continuous_point, interval_valued };

struct ContinuityPoint {
    PointClass cls;
    bool lower_continuous;
    bool upper_continuous;
};

// Widths at or below this count as point values on sampled spaces.
inline constexpr double sampled_width_tolerance = 1e-12;

/// Splits the points of an H-continuous f into point values (where both
/// endpoint functions are continuous) and interval values. Continuity of an
/// endpoint function φ at a is tested as I(φ)(a) = S(φ)(a).
///
/// On finite topologies f must be H-continuous. On sampled spaces only
/// piecewise constant data can be discretely H-continuous, so there the
/// classification runs on any input and goes by interval width.
inline std::vector<ContinuityPoint> continuity_points(const IntervalFunction &f, const BaireOptions &opt = {})
{
    const auto st = make_stencil(f.space(), opt.radius);
    if (st.backend == Backend::exact && !is_h_continuous(f).verdict()) {
        throw PreconditionError("continuity_points requires an H-continuous function");
    }
    const auto lo = f.lower_values();
    const auto hi = f.upper_values();
    const auto ilo = detail::min_over(st, lo);
    const auto slo = detail::max_over(st, lo);
    const auto ihi = detail::min_over(st, hi);
    const auto shi = detail::max_over(st, hi);
    std::vector<ContinuityPoint> out(f.size());
    for (std::size_t a = 0; a < f.size(); ++a) {
        bool point = false;
        if (st.backend == Backend::exact) {
            point = lo[a] == hi[a];
        } else if (lo[a] == hi[a]) {
            point = true;
        } else {
            point = lo[a].is_finite() && hi[a].is_finite() && hi[a].value() - lo[a].value() <= sampled_width_tolerance;
        }
        out[a] = {point ? PointClass::continuous_point : PointClass::interval_valued, ilo[a] == slo[a],
                  ihi[a] == shi[a]};
    }
    return out;
}

/// One instance of the dense-set rigidity of H-continuous functions: when
/// f <= g on a dense d, f <= g must hold everywhere. A witness in the report
/// means the implication was falsified, which can only be a bug.
inline CheckReport dense_agreement(const IntervalFunction &f, const IntervalFunction &g, PointSet d)
{
    require_same_space(f, g);
    const auto &t = f.space().topology();
    if (!is_dense(t, d)) {
        throw PreconditionError("point set is not dense");
    }
    if (!is_h_continuous(f).verdict() || !is_h_continuous(g).verdict()) {
        throw PreconditionError("dense_agreement requires H-continuous functions");
    }
    CheckReport report;
    bool hypothesis = true;
    d.for_each([&](std::size_t x) { hypothesis = hypothesis && interval_leq(f[x], g[x]); });
    if (!hypothesis) {
        report.qualifier = "hypothesis not met";
        return report;
    }
    report.qualifier = "f <= g on dense set";
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (!interval_leq(f[x], g[x])) {
            std::ostringstream os;
            os << "violation at " << t.labels()[x] << ": f=" << f[x] << " g=" << g[x];
            report.fail(os.str());
        }
    }
    return report;
}

} // namespace hcont
