#pragma once

#include <hcont/check_report.hpp>
#include <hcont/funcs.hpp>
#include <hcont/space.hpp>

#include <optional>
#include <sstream>

namespace hcont {

struct BaireOptions {
    // Overrides the finest scheduled ball radius on sampled spaces.
    std::optional<double> radius;
};

enum class BaireOp { lower, upper, completion };

struct OperatorResult {
    IntervalFunction output;
    Backend backend;
    std::optional<double> radius_used;
};

namespace detail {

// Pointwise min of v over each stencil neighborhood.
inline std::vector<ExtReal> min_over(const Stencil &st, const std::vector<ExtReal> &v)
{
    std::vector<ExtReal> out(v.size(), ExtReal::inf());
    for (std::size_t x = 0; x < v.size(); ++x) {
        for (auto y : st.neighbors[x]) {
            out[x] = std::min(out[x], v[y]);
        }
    }
    return out;
}

inline std::vector<ExtReal> max_over(const Stencil &st, const std::vector<ExtReal> &v)
{
    std::vector<ExtReal> out(v.size(), ExtReal::neg_inf());
    for (std::size_t x = 0; x < v.size(); ++x) {
        for (auto y : st.neighbors[x]) {
            out[x] = std::max(out[x], v[y]);
        }
    }
    return out;
}

// I(f) depends on the lower endpoints only, S(f) on the upper ones.
inline std::vector<ExtReal> lower_envelope(const Stencil &st, const IntervalFunction &f)
{
    return min_over(st, f.lower_values());
}

inline std::vector<ExtReal> upper_envelope(const Stencil &st, const IntervalFunction &f)
{
    return max_over(st, f.upper_values());
}

inline IntervalFunction lower_baire(const Stencil &st, const IntervalFunction &f)
{
    return IntervalFunction::point_valued(f.space_ptr(), lower_envelope(st, f));
}

inline IntervalFunction upper_baire(const Stencil &st, const IntervalFunction &f)
{
    return IntervalFunction::point_valued(f.space_ptr(), upper_envelope(st, f));
}

inline IntervalFunction graph_completion(const Stencil &st, const IntervalFunction &f)
{
    return IntervalFunction::from_endpoints(f.space_ptr(), lower_envelope(st, f), upper_envelope(st, f));
}

inline std::string radius_qualifier(const Stencil &st, const char *what)
{
    if (st.backend == Backend::exact) {
        return "";
    }
    std::ostringstream os;
    os << "discrete-" << what << " at radius " << *st.radius;
    return os.str();
}

} // namespace detail

/// Lower Baire operator. Only the lower endpoints of f matter; the result is
/// point valued.
inline IntervalFunction lower_baire(const IntervalFunction &f, const BaireOptions &opt = {})
{
    return detail::lower_baire(make_stencil(f.space(), opt.radius), f);
}

/// Upper Baire operator, dual of lower_baire.
inline IntervalFunction upper_baire(const IntervalFunction &f, const BaireOptions &opt = {})
{
    return detail::upper_baire(make_stencil(f.space(), opt.radius), f);
}

/// Graph completion F(f) = [I(f_lo), S(f_hi)].
inline IntervalFunction graph_completion(const IntervalFunction &f, const BaireOptions &opt = {})
{
    return detail::graph_completion(make_stencil(f.space(), opt.radius), f);
}

inline OperatorResult apply_baire(BaireOp op, const IntervalFunction &f, const BaireOptions &opt = {})
{
    const auto st = make_stencil(f.space(), opt.radius);
    switch (op) {
        case BaireOp::lower:
            return {detail::lower_baire(st, f), st.backend, st.radius};
        case BaireOp::upper:
            return {detail::upper_baire(st, f), st.backend, st.radius};
        case BaireOp::completion:
            break;
    }
    return {detail::graph_completion(st, f), st.backend, st.radius};
}

namespace detail {

inline void require_point_valued(const IntervalFunction &f)
{
    if (!f.is_point_valued()) {
        throw PreconditionError("semicontinuity is defined for point-valued functions");
    }
}

template <class Envelope>
CheckReport fixed_point_report(const IntervalFunction &f, const BaireOptions &opt, Envelope env, const char *what,
                               const char *op)
{
    require_point_valued(f);
    const auto st = make_stencil(f.space(), opt.radius);
    const auto g = env(st, f);
    CheckReport report;
    report.qualifier = radius_qualifier(st, what);
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (g[x] != f[x].lo()) {
            std::ostringstream os;
            os << "point " << x << ": " << op << "(f)=" << g[x] << " but f=" << f[x].lo();
            report.fail(os.str());
        }
    }
    return report;
}

} // namespace detail

// Lower semicontinuity as the fixed-point property I(f) = f.
inline CheckReport is_lower_semicontinuous(const IntervalFunction &f, const BaireOptions &opt = {})
{
    return detail::fixed_point_report(f, opt, detail::lower_envelope, "lsc", "I");
}

// Upper semicontinuity as S(f) = f.
inline CheckReport is_upper_semicontinuous(const IntervalFunction &f, const BaireOptions &opt = {})
{
    return detail::fixed_point_report(f, opt, detail::upper_envelope, "usc", "S");
}

} // namespace hcont
