#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "projcoh/commands.hpp"

using namespace projcoh;

namespace {

constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

void apply_jet_bound() {
    const char* env = std::getenv("PROJCOH_MAX_JET");
    if (!env || !*env) return;
    std::size_t used = 0;
    int bound = 0;
    try {
        bound = std::stoi(env, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used != std::string{env}.size() || bound < 1)
        throw usage_error(std::string{"PROJCOH_MAX_JET must be a positive integer (got '"} + env + "')");
    set_max_jet_order(bound);
}

chart_mode mode_from(const std::string& text) {
    if (auto m = parse_chart_mode(text)) return *m;
    throw usage_error("unknown mode '" + text + "': expected flat or covariant");
}

void emit(const report& r) { std::cout << r.to_json().dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cohomology of vector fields on projective densities: exact verification reports"};
    app.require_subcommand(1);

    verify_args va;
    std::string verify_mode = "covariant";
    auto* verify = app.add_subcommand("verify", "Check an identity and report its residual");
    verify->add_option("kind", va.kind, "cocycle, sl2, projective-class, schwarzian-cocycle, transition, correspondence")
        ->required()
        ->check(CLI::IsMember({"cocycle", "sl2", "projective-class", "schwarzian-cocycle", "transition", "correspondence"}));
    verify->add_option("--name", va.name, "J3, J4, J5, J6_0, J6_m4 or I3, I4, I5, I6, I6'");
    verify->add_option("--lambda", va.lambda, "integer, p/q or symbolic")->capture_default_str();
    verify->add_option("--mode", verify_mode, "flat or covariant")->capture_default_str();
    verify->add_option("--order", va.order, "jet order for the Schwarzian checks")->capture_default_str();

    solve_args sa;
    std::string solve_mode = "flat";
    std::string tmpl;
    int solve_order = 0;
    auto* solve = app.add_subcommand("solve", "Solve for coboundaries, invariant coefficients or invariant bilinear forms");
    solve->add_option("kind", sa.kind, "coboundary, invariance, classify")
        ->required()
        ->check(CLI::IsMember({"coboundary", "invariance", "classify"}));
    solve->add_option("--name", sa.name, "cocycle name for coboundary");
    solve->add_option("--template", tmpl, "operator name for invariance");
    solve->add_option("--lambda", sa.lambda, "integer, p/q or symbolic")->capture_default_str();
    auto* order_opt = solve->add_option("--order", solve_order, "order bound of the coboundary ansatz");
    solve->add_option("--m", sa.m, "total order of the bilinear form")->capture_default_str();
    solve->add_option("--w1", sa.w1, "weight of the first slot: lambda, mu or a rational")->capture_default_str();
    solve->add_option("--w2", sa.w2, "weight of the second slot: lambda, mu or a rational")->capture_default_str();
    solve->add_option("--mode", solve_mode, "flat")->capture_default_str();

    std::string k_range = "0..6";
    std::string latex;
    auto* table = app.add_subcommand("table", "Dimension table of the first cohomology by shift μ − λ");
    table->add_option("--k-range", k_range, "a..b with 0 <= a <= b <= 6")->capture_default_str();
    auto* latex_opt = table->add_option("--latex", latex, "write a LaTeX fragment to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_usage;
    }

    try {
        apply_jet_bound();
        if (*verify) {
            va.mode = mode_from(verify_mode);
            if ((va.kind == "cocycle" || va.kind == "sl2" || va.kind == "projective-class" ||
                 va.kind == "correspondence") &&
                va.name.empty())
                throw usage_error("verify " + va.kind + " needs --name");
            auto r = cmd_verify(va);
            emit(r);
            return r.outcome == status::pass ? 0 : exit_fail;
        }
        if (*solve) {
            sa.mode = mode_from(solve_mode);
            if (sa.kind == "invariance") sa.name = tmpl.empty() ? sa.name : tmpl;
            if (sa.kind != "classify" && sa.name.empty())
                throw usage_error("solve " + sa.kind + " needs " + (sa.kind == "invariance" ? "--template" : "--name"));
            if (*order_opt) sa.order = solve_order;
            emit(cmd_solve(sa));
            return 0;
        }
        auto [lo, hi] = parse_k_range(k_range);
        emit(cmd_table(lo, hi, *latex_opt ? std::optional<std::string>{latex} : std::nullopt));
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_fail;
    }
}
