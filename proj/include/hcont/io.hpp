#pragma once

#include <hcont/envelope.hpp>
#include <hcont/error.hpp>
#include <hcont/extreal_interval.hpp>
#include <hcont/funcs.hpp>
#include <hcont/hcontinuity.hpp>
#include <hcont/lattice.hpp>
#include <hcont/space.hpp>

#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace hcont {

using json = nlohmann::json;

// Shortest decimal form that reads back to the same double.
inline std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) {
        throw Error("cannot format number");
    }
    return std::string(buf, ptr);
}

inline json to_json(ExtReal v)
{
    if (v.is_pos_inf()) {
        return "inf";
    }
    if (v.is_neg_inf()) {
        return "-inf";
    }
    return v.value();
}

inline ExtReal ext_from_json(const json &j)
{
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf") {
            return ExtReal::inf();
        }
        if (s == "-inf") {
            return ExtReal::neg_inf();
        }
    }
    throw InvalidArgument("expected a number, \"inf\" or \"-inf\", got " + j.dump());
}

inline json to_json(const Interval &v)
{
    return json::array({to_json(v.lo()), to_json(v.hi())});
}

inline Interval interval_from_json(const json &j)
{
    if (!j.is_array() || j.size() != 2) {
        throw InvalidArgument("interval must be a two-element array, got " + j.dump());
    }
    return Interval(ext_from_json(j[0]), ext_from_json(j[1]));
}

// ---------------------------------------------------------------------------
// Spaces

namespace detail {

inline const json &field(const json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw InvalidArgument(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

inline Metric metric_from_string(const std::string &s)
{
    if (s == "euclidean") {
        return Metric::euclidean;
    }
    if (s == "manhattan") {
        return Metric::manhattan;
    }
    if (s == "discrete") {
        return Metric::discrete;
    }
    throw InvalidArgument("unknown metric '" + s + "'");
}

inline std::vector<double> radii_from_json(const json &j)
{
    if (!j.contains("radii")) {
        return {};
    }
    std::vector<double> r;
    for (const auto &v : j.at("radii")) {
        if (!v.is_number()) {
            throw InvalidArgument("radii must be numbers");
        }
        r.push_back(v.get<double>());
    }
    if (r.empty()) {
        throw InvalidArgument("radii list is empty");
    }
    return r;
}

template <class T>
T get_as(const json &j, const char *key)
{
    const auto &v = field(j, key);
    try {
        return v.get<T>();
    } catch (const json::exception &) {
        throw InvalidArgument(std::string("field '") + key + "' has the wrong type");
    }
}

inline std::size_t get_count(const json &j, const char *key)
{
    const auto &v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw InvalidArgument(std::string("field '") + key + "' must be a positive integer");
    }
    return v.get<std::size_t>();
}

inline FiniteTopology finite_from_json(const json &j)
{
    const auto &pts = field(j, "points");
    if (!pts.is_array()) {
        throw InvalidArgument("'points' must be an array");
    }
    std::vector<std::string> labels;
    std::vector<double> coords;
    bool numeric = !pts.empty();
    for (const auto &p : pts) {
        numeric = numeric && p.is_number();
    }
    for (const auto &p : pts) {
        if (numeric) {
            coords.push_back(p.get<double>());
            labels.push_back(format_double(coords.back()));
        } else if (p.is_string()) {
            labels.push_back(p.get<std::string>());
        } else {
            throw InvalidArgument("point identifiers must all be strings or all be numbers");
        }
    }
    const auto lookup = [&](const json &id) -> std::size_t {
        std::string key;
        if (id.is_number() && numeric) {
            key = format_double(id.get<double>());
        } else if (id.is_string()) {
            key = id.get<std::string>();
        } else {
            throw InvalidArgument("bad point reference " + id.dump());
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == key) {
                return i;
            }
        }
        throw InvalidArgument("open set refers to unknown point " + id.dump());
    };
    if (labels.size() > PointSet::max_points) {
        throw InvalidArgument("finite topology supports at most 64 points");
    }
    std::vector<PointSet> opens;
    for (const auto &o : field(j, "opens")) {
        if (!o.is_array()) {
            throw InvalidArgument("each open set must be an array of points");
        }
        PointSet s;
        for (const auto &id : o) {
            s.insert(lookup(id));
        }
        opens.push_back(s);
    }
    std::optional<std::vector<double>> c;
    if (numeric) {
        c = std::move(coords);
    }
    return FiniteTopology(std::move(labels), std::move(opens), std::move(c));
}

} // namespace detail

inline SpacePtr space_from_json(const json &j)
{
    const auto type = detail::get_as<std::string>(j, "type");
    if (type == "finite") {
        return make_space(detail::finite_from_json(j));
    }
    const auto metric = j.contains("metric") ? detail::metric_from_string(detail::get_as<std::string>(j, "metric"))
                                             : Metric::euclidean;
    const auto radii = detail::radii_from_json(j);
    if (type == "grid1d") {
        return make_space(SampledMetricSpace::grid1d(detail::get_as<double>(j, "min"), detail::get_as<double>(j, "max"),
                                                     detail::get_count(j, "n"), metric, radii));
    }
    if (type == "grid2d") {
        return make_space(SampledMetricSpace::grid2d(
            detail::get_as<double>(j, "xmin"), detail::get_as<double>(j, "xmax"), detail::get_count(j, "nx"),
            detail::get_as<double>(j, "ymin"), detail::get_as<double>(j, "ymax"), detail::get_count(j, "ny"), metric,
            radii));
    }
    if (type == "sampled") {
        const auto dim = detail::get_count(j, "dim");
        std::vector<Coord> pts;
        for (const auto &p : detail::field(j, "points")) {
            if (!p.is_array() || p.size() != dim) {
                throw InvalidArgument("sample point must have " + std::to_string(dim) + " coordinates");
            }
            pts.push_back({p[0].get<double>(), dim == 2 ? p[1].get<double>() : 0.0});
        }
        if (radii.empty()) {
            throw InvalidArgument("sampled space needs explicit radii");
        }
        return make_space(SampledMetricSpace(dim, std::move(pts), metric, radii));
    }
    throw InvalidArgument("unknown space type '" + type + "'");
}

inline json to_json(const Space &space)
{
    json j;
    if (space.is_finite_topology()) {
        const auto &t = space.topology();
        j["type"] = "finite";
        json pts = json::array();
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t.coords()) {
                pts.push_back((*t.coords())[i]);
            } else {
                pts.push_back(t.labels()[i]);
            }
        }
        json opens = json::array();
        for (auto o : t.opens()) {
            json set = json::array();
            o.for_each([&](std::size_t i) { set.push_back(pts[i]); });
            opens.push_back(std::move(set));
        }
        j["points"] = std::move(pts);
        j["opens"] = std::move(opens);
        return j;
    }
    const auto &s = space.metric_space();
    const auto &pts = s.points();
    if (s.grid() && s.dim() == 1) {
        j["type"] = "grid1d";
        j["min"] = pts.front()[0];
        j["max"] = pts.back()[0];
        j["n"] = s.grid()->nx;
    } else if (s.grid()) {
        j["type"] = "grid2d";
        j["xmin"] = pts.front()[0];
        j["xmax"] = pts.back()[0];
        j["nx"] = s.grid()->nx;
        j["ymin"] = pts.front()[1];
        j["ymax"] = pts.back()[1];
        j["ny"] = s.grid()->ny;
    } else {
        j["type"] = "sampled";
        j["dim"] = s.dim();
        json p = json::array();
        for (const auto &c : pts) {
            p.push_back(s.dim() == 1 ? json::array({c[0]}) : json::array({c[0], c[1]}));
        }
        j["points"] = std::move(p);
    }
    j["metric"] = metric_name(s.metric());
    j["radii"] = s.radii();
    return j;
}

// ---------------------------------------------------------------------------
// Files

inline json read_json_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
}

// Refuses to replace an existing file unless force is set.
inline void write_text_file(const std::filesystem::path &path, const std::string &text, bool force)
{
    if (!force && std::filesystem::exists(path)) {
        throw InvalidArgument(path.string() + " exists; pass --force to overwrite");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw InvalidArgument("cannot write " + path.string());
    }
    out << text;
}

inline void write_json_file(const std::filesystem::path &path, const json &j, bool force)
{
    write_text_file(path, j.dump(2) + "\n", force);
}

inline SpacePtr load_space(const std::filesystem::path &path)
{
    return space_from_json(read_json_file(path));
}

// ---------------------------------------------------------------------------
// Functions

inline json to_json(const IntervalFunction &f)
{
    json values = json::array();
    for (const auto &v : f.values()) {
        values.push_back(to_json(v));
    }
    return {{"space", to_json(f.space())}, {"values", std::move(values)}};
}

// A string "space" is a path, resolved against base_dir when relative.
inline IntervalFunction function_from_json(const json &j, const std::filesystem::path &base_dir = {},
                                           SpacePtr shared = nullptr)
{
    const auto &sp = detail::field(j, "space");
    SpacePtr space;
    if (sp.is_string()) {
        std::filesystem::path p = sp.get<std::string>();
        if (p.is_relative()) {
            p = base_dir / p;
        }
        space = load_space(p);
    } else {
        space = space_from_json(sp);
    }
    if (shared && *shared == *space) {
        space = shared;
    }
    const auto &vals = detail::field(j, "values");
    if (!vals.is_array() || vals.empty()) {
        throw InvalidArgument("function file has no values");
    }
    std::vector<Interval> values;
    values.reserve(vals.size());
    for (const auto &v : vals) {
        values.push_back(interval_from_json(v));
    }
    return IntervalFunction(std::move(space), std::move(values));
}

inline IntervalFunction load_function(const std::filesystem::path &path, SpacePtr shared = nullptr)
{
    return function_from_json(read_json_file(path), path.parent_path(), std::move(shared));
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const CheckReport &r)
{
    return {{"valid", r.valid()}, {"qualifier", r.qualifier}, {"witnesses", r.witnesses}};
}

inline json to_json(const HContReport &r)
{
    json failures = json::array();
    for (const auto &f : r.failures) {
        failures.push_back({{"point", f.point}, {"equality", f.equality}, {"lhs", to_json(f.lhs)},
                            {"rhs", to_json(f.rhs)}});
    }
    json j{{"criterion", criterion_name(r.criterion)},
           {"backend", backend_name(r.backend)},
           {"verdict", r.verdict()},
           {"qualifier", r.qualifier()},
           {"failures", std::move(failures)}};
    j["radius"] = r.radius ? json(*r.radius) : json(nullptr);
    return j;
}

inline json values_json(const IntervalFunction &f)
{
    json a = json::array();
    for (const auto &v : f.values()) {
        a.push_back(to_json(v));
    }
    return a;
}

inline json to_json(const ClassTag &c)
{
    json j{{"tag", class_name(c.tag)}};
    j["verdict"] = c.verdict ? json(*c.verdict) : json("not applicable");
    if (c.bound) {
        j["witness"] = {{"M", *c.bound}};
    }
    if (c.minorant && c.majorant) {
        j["witness"] = {{"minorant", values_json(*c.minorant)}, {"majorant", values_json(*c.majorant)}};
    }
    return j;
}

inline json to_json(const Classification &c)
{
    json j{{"classes", json::array({to_json(c.hft), to_json(c.hb), to_json(c.hcm)})}};
    if (c.discrete_h_continuous) {
        j["discrete_h_continuous"] = *c.discrete_h_continuous;
    }
    return j;
}

// A family file shares one space among its members.
inline json to_json(const FunctionFamily &family)
{
    json members = json::array();
    for (const auto &m : family) {
        members.push_back(values_json(m));
    }
    return {{"space", to_json(family.space())}, {"members", std::move(members)}};
}

inline FunctionFamily family_from_json(const json &j)
{
    const auto space = space_from_json(detail::field(j, "space"));
    std::vector<IntervalFunction> members;
    for (const auto &m : detail::field(j, "members")) {
        std::vector<Interval> values;
        for (const auto &v : m) {
            values.push_back(interval_from_json(v));
        }
        members.emplace_back(space, std::move(values));
    }
    return FunctionFamily(std::move(members));
}

} // namespace hcont
