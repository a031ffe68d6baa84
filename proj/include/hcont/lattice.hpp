#pragma once

#include <hcont/baire.hpp>
#include <hcont/check_report.hpp>
#include <hcont/envelope.hpp>
#include <hcont/funcs.hpp>
#include <hcont/hcontinuity.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hcont {

/// f -> -f, i.e. [lo, hi] -> [-hi, -lo].
inline IntervalFunction negate(const IntervalFunction &f)
{
    std::vector<Interval> out;
    out.reserve(f.size());
    const auto neg = [](ExtReal v) {
        if (v.is_pos_inf()) {
            return ExtReal::neg_inf();
        }
        if (v.is_neg_inf()) {
            return ExtReal::inf();
        }
        return ExtReal(-v.value());
    };
    for (const auto &v : f.values()) {
        out.emplace_back(neg(v.hi()), neg(v.lo()));
    }
    return IntervalFunction(f.space_ptr(), std::move(out));
}

inline FunctionFamily negate(const FunctionFamily &family)
{
    std::vector<IntervalFunction> out;
    out.reserve(family.size());
    for (const auto &m : family) {
        out.push_back(negate(m));
    }
    return FunctionFamily(std::move(out));
}

namespace detail {

inline void require_finite(const IntervalFunction &f, const char *what)
{
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (!f[x].is_finite()) {
            throw PreconditionError(std::string(what) + " has an infinite endpoint at point " + std::to_string(x));
        }
    }
}

inline void require_bounded_by(const FunctionFamily &family, const IntervalFunction &bound, bool above,
                               const BaireOptions &opt)
{
    if (!is_h_continuous(bound, opt).verdict()) {
        throw PreconditionError("bound is not H-continuous");
    }
    require_finite(bound, "bound");
    std::size_t k = 0;
    for (const auto &m : family) {
        require_same_space(m, bound);
        if (above ? !func_leq(m, bound) : !func_leq(bound, m)) {
            throw PreconditionError("family member " + std::to_string(k) + " is not "
                                    + (above ? "below" : "above") + " the bound");
        }
        ++k;
    }
}

} // namespace detail

/// Least upper bound of a family bounded above by an H-continuous finite
/// function. With g the pointwise max of the lower endpoints, the result is
/// F(S(g)), evaluated as [I(S(g)), S(g)].
inline IntervalFunction family_sup(const FunctionFamily &family, const IntervalFunction &bound,
                                   const BaireOptions &opt = {})
{
    detail::require_bounded_by(family, bound, true, opt);
    std::vector<ExtReal> g(family.space().size(), ExtReal::neg_inf());
    for (const auto &m : family) {
        for (std::size_t x = 0; x < g.size(); ++x) {
            g[x] = std::max(g[x], m[x].lo());
        }
    }
    const auto st = make_stencil(family.space(), opt.radius);
    const auto u = detail::max_over(st, g);
    return IntervalFunction::from_endpoints(family.space_ptr(), detail::min_over(st, u), u);
}

/// Dual of family_sup: h is the pointwise min of the upper endpoints and the
/// result is F(I(h)) = [I(h), S(I(h))].
inline IntervalFunction family_inf(const FunctionFamily &family, const IntervalFunction &bound,
                                   const BaireOptions &opt = {})
{
    detail::require_bounded_by(family, bound, false, opt);
    std::vector<ExtReal> h(family.space().size(), ExtReal::inf());
    for (const auto &m : family) {
        for (std::size_t x = 0; x < h.size(); ++x) {
            h[x] = std::min(h[x], m[x].hi());
        }
    }
    const auto st = make_stencil(family.space(), opt.radius);
    const auto v = detail::min_over(st, h);
    return IntervalFunction::from_endpoints(family.space_ptr(), v, detail::max_over(st, v));
}

enum class FunctionClass { Hft, Hb, Hcm };

inline const char *class_name(FunctionClass c) noexcept
{
    switch (c) {
        case FunctionClass::Hft:
            return "Hft";
        case FunctionClass::Hb:
            return "Hb";
        case FunctionClass::Hcm:
            return "Hcm";
    }
    return "?";
}

struct ClassTag {
    FunctionClass tag;
    // nullopt: the class is not available on this backend.
    std::optional<bool> verdict;
    std::optional<double> bound;                 // Hb
    std::optional<IntervalFunction> minorant;    // Hcm
    std::optional<IntervalFunction> majorant;    // Hcm
};

struct Classification {
    ClassTag hft{FunctionClass::Hft, false, {}, {}, {}};
    ClassTag hb{FunctionClass::Hb, false, {}, {}, {}};
    ClassTag hcm{FunctionClass::Hcm, false, {}, {}, {}};
    // Set on sampled spaces, where classification does not require the input
    // to be discretely H-continuous.
    std::optional<bool> discrete_h_continuous;
};

/// Membership in H_ft, H_b and H_cm.
///
/// On finite topologies f must be H-continuous and H_cm is not applicable.
/// On sampled spaces any f is accepted (sampled data is rarely discretely
/// H-continuous) and the stencil verdict is recorded alongside; H_cm carries
/// the envelope minorant and majorant as witnesses.
inline Classification classify(const IntervalFunction &f, const BaireOptions &opt = {})
{
    Classification c;
    const bool hc = is_h_continuous(f, opt).verdict();
    if (f.space().is_finite_topology()) {
        if (!hc) {
            throw PreconditionError("classify requires an H-continuous function");
        }
        c.hcm.verdict = std::nullopt;
    } else {
        c.discrete_h_continuous = hc;
    }

    bool finite = true;
    for (const auto &v : f.values()) {
        finite = finite && v.is_finite();
    }
    c.hft.verdict = finite;
    if (finite) {
        const auto b = bounds_of(f);
        c.hb.verdict = true;
        c.hb.bound = std::max(std::abs(b.lo.value()), std::abs(b.hi.value()));
    }
    if (!f.space().is_finite_topology() && finite) {
        auto lo = continuous_minorant(f);
        auto hi = continuous_majorant(f);
        c.hcm.verdict = true;
        c.hcm.minorant = std::move(lo.envelope);
        c.hcm.majorant = std::move(hi.envelope);
    }
    return c;
}

/// Exhaustive least-upper-bound check on a small finite topology: u must be an
/// upper bound of the family (A) and below every H-continuous upper bound with
/// endpoints in the chain (B).
inline CheckReport least_upper_bound_check(const FunctionFamily &family, const IntervalFunction &u,
                                           std::vector<ExtReal> chain)
{
    if (!family.space().is_finite_topology()) {
        throw PreconditionError("least upper bound check runs on finite topologies only");
    }
    require_same_space(family.members().front(), u);
    chain = normalize_chain(std::move(chain));
    const auto n = family.space().size();
    if (n > 4 || chain.size() > 4) {
        throw BudgetError("least upper bound check is limited to 4 points and 4 chain values");
    }
    CheckReport report;
    report.qualifier = "least upper bound";
    std::size_t k = 0;
    for (const auto &m : family) {
        if (!func_leq(m, u)) {
            report.fail("(A) member " + std::to_string(k) + " is not below u");
        }
        ++k;
    }

    std::vector<Interval> options;
    for (auto a : chain) {
        for (auto b : chain) {
            if (a <= b) {
                options.emplace_back(a, b);
            }
        }
    }
    std::vector<std::size_t> idx(n, 0);
    std::vector<Interval> h(n);
    for (;;) {
        for (std::size_t x = 0; x < n; ++x) {
            h[x] = options[idx[x]];
        }
        IntervalFunction cand(family.space_ptr(), h);
        if (is_h_continuous(cand).verdict()) {
            bool upper = true;
            for (const auto &m : family) {
                upper = upper && func_leq(m, cand);
            }
            if (upper && !func_leq(u, cand)) {
                std::ostringstream os;
                os << "(B) upper bound (";
                for (std::size_t x = 0; x < n; ++x) {
                    os << (x ? ", " : "") << h[x];
                }
                os << ") is not above u";
                report.fail(os.str());
            }
        }
        std::size_t j = 0;
        while (j < n && ++idx[j] == options.size()) {
            idx[j++] = 0;
        }
        if (j == n) {
            break;
        }
    }
    return report;
}

} // namespace hcont
