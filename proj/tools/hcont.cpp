// Command-line front end for the hcont library.
//
// Exit codes: 0 success, 1 a checked property is false, 2 usage or input
// error, 3 precondition or budget error.

#include <hcont/baire.hpp>
#include <hcont/envelope.hpp>
#include <hcont/hcontinuity.hpp>
#include <hcont/io.hpp>
#include <hcont/lattice.hpp>
#include <hcont/oracle.hpp>
#include <hcont/study.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace hcont;

constexpr int exit_ok = 0;
constexpr int exit_false = 1;
constexpr int exit_usage = 2;
constexpr int exit_precondition = 3;

std::vector<ExtReal> parse_chain(const std::string &text)
{
    std::vector<ExtReal> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        const auto tok = text.substr(start, end - start);
        if (tok == "inf" || tok == "+inf") {
            out.push_back(ExtReal::inf());
        } else if (tok == "-inf") {
            out.push_back(ExtReal::neg_inf());
        } else {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw InvalidArgument("bad chain value '" + tok + "'");
            }
            out.push_back(v);
        }
        start = end + 1;
    }
    return out;
}

// Writes to a file when a path is given, otherwise to stdout.
void emit(const std::string &path, const std::string &text, bool force)
{
    if (path.empty()) {
        std::cout << text;
    } else {
        write_text_file(path, text, force);
    }
}

void emit(const std::string &path, const json &j, bool force)
{
    emit(path, j.dump(2) + "\n", force);
}

BaireOptions baire_options(const std::optional<double> &radius)
{
    return BaireOptions{radius};
}

struct Common {
    std::string in;
    std::string out;
    bool force = false;
    std::optional<double> radius;
};

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Hausdorff continuous interval functions"};
    app.require_subcommand(1);

    Common c;
    std::string op = "F";
    std::string mode;
    std::string by = "c";
    std::string chain_text = "0,1,2";
    std::vector<std::string> family_paths;
    std::string bound_path;
    std::string report_path;
    double eps = 0.05;
    std::optional<double> bound_M;
    bool schedule_only = false;
    std::string test;
    std::string space_path;
    std::uint64_t budget = 1'000'000;
    std::string example_name;
    std::size_t grid_n = 0;
    std::vector<std::size_t> sizes;
    std::string format = "csv";

    const auto add_in = [&](CLI::App *sub) { sub->add_option("--in", c.in, "input function file")->required(); };
    const auto add_out = [&](CLI::App *sub) {
        sub->add_option("--out", c.out, "output file (default: stdout)");
        sub->add_flag("--force", c.force, "overwrite existing outputs");
    };
    const auto add_radius = [&](CLI::App *sub) {
        sub->add_option("--radius", c.radius, "stencil radius on sampled spaces");
    };

    auto *baire = app.add_subcommand("baire", "apply I, S or F");
    baire->add_option("--op", op, "operator")->check(CLI::IsMember({"I", "S", "F"}));
    add_in(baire);
    add_out(baire);
    add_radius(baire);

    auto *regularize = app.add_subcommand("regularize", "F(S(I f)) or F(I(S f))");
    regularize->add_option("--mode", mode)->required()->check(CLI::IsMember({"lower", "upper"}));
    add_in(regularize);
    add_out(regularize);
    add_radius(regularize);

    auto *check = app.add_subcommand("check", "H-continuity test");
    add_in(check);
    add_out(check);
    add_radius(check);
    check->add_option("--by", by, "criterion")->check(CLI::IsMember({"c", "b", "definition"}));
    check->add_option("--chain", chain_text, "value chain for --by definition");

    auto *sup = app.add_subcommand("sup", "least upper bound of a family");
    auto *inf = app.add_subcommand("inf", "greatest lower bound of a family");
    for (auto *sub : {sup, inf}) {
        sub->add_option("--family", family_paths, "member files")->required();
        sub->add_option("--bound", bound_path, "bounding function")->required();
        add_out(sub);
        add_radius(sub);
    }

    auto *classify_cmd = app.add_subcommand("classify", "membership in Hft, Hb, Hcm");
    add_in(classify_cmd);
    add_out(classify_cmd);
    add_radius(classify_cmd);

    auto *envelope = app.add_subcommand("envelope", "continuous minorant or majorant");
    envelope->add_option("--mode", mode)->required()->check(CLI::IsMember({"minorant", "majorant"}));
    add_in(envelope);
    add_out(envelope);
    envelope->add_option("--report", report_path, "psi and Lipschitz report");

    auto *family = app.add_subcommand("family", "continuous approximating family");
    family->add_option("--mode", mode)->required()->check(CLI::IsMember({"hb", "hcm"}));
    add_in(family);
    add_out(family);
    family->add_option("--eps", eps, "recovery tolerance")->check(CLI::PositiveNumber);
    family->add_option("--M", bound_M, "bound for --mode hb (default: from classify)");
    family->add_flag("--schedule-only", schedule_only, "try scheduled radii only");
    family->add_option("--report", report_path, "radius selection report");

    auto *oracle_cmd = app.add_subcommand("oracle", "brute-force checks on finite topologies");
    oracle_cmd->add_option("--test", test)->required()->check(CLI::IsMember({"baire", "enumerate", "dedekind"}));
    oracle_cmd->add_option("--space", space_path, "space file (enumerate, dedekind)");
    oracle_cmd->add_option("--in", c.in, "function file (baire)");
    oracle_cmd->add_option("--chain", chain_text, "value chain");
    oracle_cmd->add_option("--budget", budget, "candidate cap");
    add_out(oracle_cmd);

    auto *example = app.add_subcommand("example", "sample a catalog example");
    example->add_option("--name", example_name)->required();
    example->add_option("--space", space_path, "space file");
    example->add_option("--n", grid_n, "points per axis of the example's default grid");
    add_out(example);

    auto *converge = app.add_subcommand("converge", "convergence study on refining grids");
    converge->add_option("--example", example_name)->required();
    converge->add_option("--sizes", sizes, "grid sizes")->delimiter(',')->required();
    add_out(converge);

    auto *plot = app.add_subcommand("plot", "CSV or SVG plot data");
    plot->add_option("--in", c.in, "function file");
    plot->add_option("--example", example_name, "catalog example instead of --in");
    plot->add_option("--n", grid_n, "grid size for --example");
    plot->add_option("--format", format)->check(CLI::IsMember({"csv", "svg"}));
    add_out(plot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        const auto opt = baire_options(c.radius);
        if (baire->parsed()) {
            const auto f = load_function(c.in);
            const auto r = apply_baire(op == "I" ? BaireOp::lower : op == "S" ? BaireOp::upper : BaireOp::completion, f,
                                       opt);
            emit(c.out, to_json(r.output), c.force);
        } else if (regularize->parsed()) {
            const auto f = load_function(c.in);
            emit(c.out, to_json(mode == "lower" ? regularize_lower(f, opt) : regularize_upper(f, opt)), c.force);
        } else if (check->parsed()) {
            const auto f = load_function(c.in);
            HContReport r;
            if (by == "definition") {
                r = is_h_continuous_by_definition(f, parse_chain(chain_text));
            } else if (by == "b") {
                r = check_criterion_b(f, opt);
            } else {
                r = is_h_continuous(f, opt);
            }
            emit(c.out, to_json(r), c.force);
            return r.verdict() ? exit_ok : exit_false;
        } else if (sup->parsed() || inf->parsed()) {
            const auto bound = load_function(bound_path);
            std::vector<IntervalFunction> members;
            for (const auto &p : family_paths) {
                members.push_back(load_function(p, bound.space_ptr()));
            }
            const FunctionFamily F(std::move(members));
            const auto u = sup->parsed() ? family_sup(F, bound, opt) : family_inf(F, bound, opt);
            emit(c.out, to_json(u), c.force);
        } else if (classify_cmd->parsed()) {
            emit(c.out, to_json(classify(load_function(c.in), opt)), c.force);
        } else if (envelope->parsed()) {
            const auto f = load_function(c.in);
            const auto r = mode == "minorant" ? continuous_minorant(f) : continuous_majorant(f);
            if (!report_path.empty() && !c.force && std::filesystem::exists(report_path)) {
                throw InvalidArgument(report_path + " exists; pass --force to overwrite");
            }
            emit(c.out, to_json(r.envelope), c.force);
            if (!report_path.empty()) {
                emit(report_path, json{{"psi", r.psi}, {"lipschitz_bound", r.lipschitz_bound}}, c.force);
            }
        } else if (family->parsed()) {
            const auto f = load_function(c.in);
            const RadiusPolicy policy{!schedule_only};
            const auto radii = select_radii(f, eps, policy);
            ApproximatingFamily fam = [&] {
                if (mode == "hb") {
                    double M = 0.0;
                    if (bound_M) {
                        M = *bound_M;
                    } else {
                        const auto b = bounds_of(f);
                        M = std::max(std::abs(b.lo.value()), std::abs(b.hi.value()));
                    }
                    return approximating_family_bounded(f, M, radii);
                }
                return approximating_family_cm(f, continuous_minorant(f).envelope, radii);
            }();
            if (!report_path.empty() && !c.force && std::filesystem::exists(report_path)) {
                throw InvalidArgument(report_path + " exists; pass --force to overwrite");
            }
            emit(c.out, to_json(fam.family), c.force);
            if (!report_path.empty()) {
                json rep{{"eps", eps},
                         {"radius", fam.radii.radius},
                         {"achieved_eps", fam.radii.achieved_eps},
                         {"m", fam.m}};
                std::vector<int> fb(fam.radii.fallback.begin(), fam.radii.fallback.end());
                rep["fallback"] = fb;
                if (fam.minorant_lipschitz) {
                    rep["minorant_lipschitz"] = *fam.minorant_lipschitz;
                }
                emit(report_path, rep, c.force);
            }
        } else if (oracle_cmd->parsed()) {
            EnumerationBudget b;
            b.max_candidates = budget;
            const auto chain = parse_chain(chain_text);
            if (test == "baire") {
                if (c.in.empty()) {
                    throw InvalidArgument("oracle --test baire needs --in");
                }
                const auto f = load_function(c.in);
                const auto r = oracle_baire(f, b);
                const bool agree = r.lower == lower_baire(f) && r.upper == upper_baire(f);
                emit(c.out,
                     json{{"test", "baire"},
                          {"lower", values_json(r.lower)},
                          {"upper", values_json(r.upper)},
                          {"matches_operators", agree}},
                     c.force);
                return agree ? exit_ok : exit_false;
            }
            if (space_path.empty()) {
                throw InvalidArgument("oracle --test " + test + " needs --space");
            }
            const auto space = load_space(space_path);
            if (test == "enumerate") {
                json fs = json::array();
                for (const auto &h : enumerate_h_continuous(space, chain, b)) {
                    fs.push_back(values_json(h));
                }
                emit(c.out, json{{"test", "enumerate"}, {"count", fs.size()}, {"functions", fs}}, c.force);
            } else {
                const auto r = verify_dedekind_completeness(space, chain, b);
                auto j = to_json(r);
                j["test"] = "dedekind";
                emit(c.out, j, c.force);
                return r.valid() ? exit_ok : exit_false;
            }
        } else if (example->parsed()) {
            const auto spec = parse_example(example_name);
            SpacePtr space;
            if (!space_path.empty()) {
                space = load_space(space_path);
            } else if (grid_n > 0) {
                space = example_grid(spec, grid_n);
            } else {
                throw InvalidArgument("example needs --space or --n");
            }
            emit(c.out, to_json(make_example(spec, space)), c.force);
        } else if (converge->parsed()) {
            emit(c.out, to_json(run_convergence_study(example_name, sizes)), c.force);
        } else if (plot->parsed()) {
            std::optional<IntervalFunction> f;
            if (!c.in.empty()) {
                f = load_function(c.in);
            } else if (!example_name.empty() && grid_n > 0) {
                const auto spec = parse_example(example_name);
                f = make_example(spec, example_grid(spec, grid_n));
            } else {
                throw InvalidArgument("plot needs --in or --example with --n");
            }
            emit(c.out, emit_plot_data(*f, format == "svg" ? PlotFormat::svg : PlotFormat::csv), c.force);
        }
    } catch (const InvalidArgument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const PreconditionError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_precondition;
    } catch (const BudgetError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_precondition;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_ok;
}
