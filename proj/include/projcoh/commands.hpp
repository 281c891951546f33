#pragma once

// Command implementations behind the projcoh executable. Each command returns
// a report; rendering and exit codes are handled by the caller.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "projcoh/cohomology.hpp"
#include "projcoh/schwarzian.hpp"

namespace projcoh {

enum class status { pass, fail, indeterminate };
std::string to_string(status s);

struct report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    status outcome = status::indeterminate;
    std::string residual = "0";
    nlohmann::ordered_json exceptional_values = nlohmann::ordered_json::array();
    std::string witness;
    std::vector<std::string> notes;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    std::int64_t duration_ms = 0;

    nlohmann::ordered_json to_json() const;
};

/// Malformed or inconsistent command arguments.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// "symbolic" or an integer / p/q literal.
std::optional<rational> parse_lambda(std::string_view text);

struct verify_args {
    std::string kind;  // cocycle, sl2, projective-class, schwarzian-cocycle, transition, correspondence
    std::string name;
    std::string lambda = "symbolic";
    chart_mode mode = chart_mode::covariant;
    int order = 6;
};

struct solve_args {
    std::string kind;  // coboundary, invariance, classify
    std::string name;
    std::string lambda = "symbolic";
    std::optional<int> order;
    int m = 1;
    std::string w1 = "lambda";
    std::string w2 = "mu";
    chart_mode mode = chart_mode::flat;
};

report cmd_verify(const verify_args& args);
report cmd_solve(const solve_args& args);
/// With latex_path set, also writes render_latex of the rows to that file.
report cmd_table(int k_min, int k_max, const std::optional<std::string>& latex_path = std::nullopt);

/// "a..b" → (a, b).
std::pair<int, int> parse_k_range(std::string_view text);

/// Standalone LaTeX fragment with the table rows and operator formulas.
std::string render_latex(const std::vector<table_row>& rows);

}  // namespace projcoh
