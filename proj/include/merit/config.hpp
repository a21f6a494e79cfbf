#pragma once

#include <optional>
#include <string>
#include <vector>

#include "merit/design_search.hpp"
#include "merit/trial_engine.hpp"

namespace merit {

// Which configurations a scenario report covers.
enum class ScenarioSet { all, nulls, alternatives, least_favorable };

struct VerifySettings {
    std::vector<int> J{2, 3};
    std::vector<int> n{10, 15, 20};
    std::vector<double> rho{0.25, 0.5, 0.75};
    std::optional<Boundary> single;  // verify one boundary instead of full grids
};

struct RunConfig {
    DesignSpec spec;
    std::optional<Boundary> boundary;
    InterimPolicy interim{{0.5}};
    IsotonicFlags isotonic;
    ScenarioSet scenarios = ScenarioSet::all;
    VerifySettings verify;
    Table2Filter table2;
    std::int64_t table2_check_replicates = 400000;
    std::string out;
    std::string format = "table";

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/*
 * YAML document with optional sections design, evaluation, boundary,
 * interim, scenarios, verify, table2 and output. Unknown keys are rejected
 * with std::invalid_argument naming the key.
 */
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

EvalMode::Request parse_mode(const std::string& text);
DecisionRule parse_rule(const std::string& text);
PowerKind parse_power_kind(int value);
ScenarioSet parse_scenarios(const std::string& text);

std::string to_string(EvalMode::Request r);
std::string to_string(DecisionRule r);
std::string to_string(Kind1Event e);

}  // namespace merit
