#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>

#include "troppt/acceptance.hpp"
#include "troppt/io.hpp"

using namespace troppt;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// builtin names or a polytope JSON (file or inline)
LatticePolytope load_polytope(const std::string& arg) {
    std::smatch mt;
    if (arg == "unit-square") return LatticePolytope::unit_square();
    if (std::regex_match(arg, mt, std::regex(R"(triangle-(\d+))"))) return LatticePolytope::triangle(std::stol(mt[1]));
    if (std::regex_match(arg, mt, std::regex(R"(rectangle-(\d+)x(\d+))")))
        return LatticePolytope::rectangle(std::stol(mt[1]), std::stol(mt[2]));
    if (std::regex_match(arg, mt, std::regex(R"(segment-(\d+))"))) return LatticePolytope::segment(std::stol(mt[1]));
    return polytope_from_json(read_json_arg(arg));
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"troppt: secondary fans, logarithmic linear systems, Minkowski weights and Euler-Satake counts"};
    app.require_subcommand(1);
    app.fallthrough();
    Budget budget = Budget::from_env();
    size_t budget_flag = 0;
    unsigned threads = 1;
    app.add_option("--budget", budget_flag, "bound on enumerated cones and types (overrides TROPPT_BUDGET)");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    std::string polytope, lift, svg, out, around;
    double box = 0;

    auto* sec = app.add_subcommand("secondary", "regular subdivisions and the secondary fan");
    sec->add_option("--polytope", polytope, "polytope JSON file, inline JSON, or a builtin name")->required();
    sec->add_option("--out", out, "output file");

    auto* dual = app.add_subcommand("dual-curve", "tropical curve dual to a lifted polytope");
    dual->add_option("--polytope", polytope)->required();
    dual->add_option("--lift", lift, "lift JSON {\"values\": [...]} or a bare array")->required();
    dual->add_option("--svg", svg, "write an SVG drawing");
    dual->add_option("--box", box, "half width of the drawing box");
    dual->add_option("--out", out);

    bool lazy = false;
    auto* pt0 = app.add_subcommand("pt0-fan", "fan of the logarithmic linear system");
    pt0->add_option("--polytope", polytope)->required();
    pt0->add_flag("--lazy", lazy, "only the closed star of one cone");
    pt0->add_option("--around", around, "lift whose cone is the center of the star (with --lazy)");
    pt0->add_option("--out", out);

    unsigned degree = 0;
    bool global = false;
    auto* integral = app.add_subcommand("integral", "point-insertion integral against the single-point boundary class");
    integral->add_option("--triangle-degree", degree, "degree d of the plane curve class")->required();
    integral->add_flag("--global", global, "use the full fan instead of the linear-support route");
    integral->add_flag("--verbose", "print the factors");

    unsigned ed = 0, en = 0;
    bool audit = false, csv = false;
    std::string spine = "1w";
    auto* es = app.add_subcommand("euler-satake", "Euler-Satake characteristic for the class (1,d) on P1 x P1");
    es->add_option("--d", ed)->required()->check(CLI::PositiveNumber);
    es->add_option("--n", en)->required();
    es->add_flag("--audit", audit, "dump every weighted type with its contribution (JSON)");
    es->add_flag("--csv", csv, "with --audit, write CSV instead of JSON");
    es->add_option("--spine", spine, "index order of the spine factor")->check(CLI::IsMember({"1w", "w1"}));
    es->add_option("--out", out);

    std::vector<int> criteria;
    auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
    self->add_option("--criteria", criteria, "subset of criteria ids")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (budget_flag > 0) budget.max_cones = budget_flag;
    budget.threads = threads;

    try {
        if (*sec) {
            auto P = load_polytope(polytope);
            auto S = enumerate_regular_subdivisions(P, budget);
            write_out(out, secondary_json(P, S).dump(2) + "\n");
        } else if (*dual) {
            auto P = load_polytope(polytope);
            QVec phi = lift_from_json(read_json_arg(lift), P.size());
            auto g = dual_tropical_curve(P, phi);
            if (!g.balanced()) throw InvariantViolation("tropical curve is not balanced");
            if (!svg.empty()) {
                SvgOptions o;
                o.half_width = box;
                write_out(svg, curve_svg(g, o));
            }
            Json j = curve_json(g);
            j["subdivision"] = subdivision_json(induced_subdivision(P, phi));
            write_out(out, j.dump(2) + "\n");
        } else if (*pt0) {
            auto P = load_polytope(polytope);
            auto X = normal_fan(P);
            PT0Fan f;
            if (lazy) {
                if (around.empty()) throw UsageError("--lazy needs --around");
                f = local_pt0(P, X, lift_from_json(read_json_arg(around), P.size()), budget);
            } else {
                if (!around.empty()) throw UsageError("--around needs --lazy");
                f = build_pt0(P, X, budget);
            }
            std::string why;
            if (!f.fan.check_fan(&why)) throw InvariantViolation("pt0 fan: " + why);
            write_out(out, pt0_json(f).dump(2) + "\n");
        } else if (*integral) {
            if (global) {
                auto n = LatticePolytope::triangle(static_cast<long>(degree)).m();
                Rat v = with_generic(n, 1, [&](const Displacement& a) {
                    return with_generic(n, 2, [&](const Displacement& b) {
                        return integral_single_point_global(degree, a, b, budget);
                    });
                });
                std::cout << to_string(v) << "\n";
            } else {
                auto r = integral_single_point(degree, budget);
                std::cout << to_string(r.value) << "\n";
                if (integral->count("--verbose"))
                    std::cout << "insertions " << r.exponent << ", boundary weights " << to_string(r.weight_product)
                              << ", transversality " << to_string(r.transversality) << ", linear degree "
                              << to_string(r.linear_degree) << ", (d!)^3 " << to_string(r.formula) << "\n";
            }
        } else if (*es) {
            EulerOptions o;
            o.spine = spine == "w1" ? SpineOrder::WOne : SpineOrder::OneW;
            auto r = euler_satake(ed, en, audit, o, budget);
            if (!audit)
                write_out(out, to_string(r.total) + "\n");
            else if (csv)
                write_out(out, euler_csv(r));
            else
                write_out(out, euler_json(ed, en, r).dump(2) + "\n");
        } else if (*self) {
            auto results = run_acceptance(criteria, [](const std::string& s) { std::cout << "  " << s << "\n"; });
            bool all = true;
            for (const auto& r : results) {
                std::cout << format_result(r) << "\n";
                all = all && r.pass;
            }
            return all ? 0 : 4;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 1;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
