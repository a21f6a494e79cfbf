#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "merit/oc_engine.hpp"

namespace merit {

struct DesignSpec {
    DesignRates rates;
    int J = 2;
    double alpha_star = 0.1;
    double beta_star = 0.8;
    PowerKind power_kind = PowerKind::I;
    double rho = 0.5;
    int n_max = 100;
    DecisionRule rule = DecisionRule::isotonic;
    Kind1Event event = Kind1Event::selection;
    EvalMode mode = EvalMode::automatic(100000, 20240601);

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct Candidate {
    Boundary boundary;
    OCResult oc;
};

struct DesignResult {
    Boundary boundary;
    OCResult oc;
    bool feasible = false;
    std::vector<Candidate> alternatives_at_n;  // every feasible pair at the chosen n
};

// Feasible (m_T, m_E) at n in (m_T, m_E) order, pruned by monotonicity of alpha in m_T.
std::vector<Candidate> feasible_boundaries(int n, const DesignSpec& spec);

// Same result by scanning every pair; kept to check the pruned scan.
std::vector<Candidate> feasible_boundaries_naive(int n, const DesignSpec& spec);

/*
 * Smallest n <= n_max with a feasible pair. Among pairs at that n: largest
 * global power, then smallest global alpha, then smallest m_E, then smallest
 * m_T. When nothing is feasible the result carries the near miss with the
 * smallest total constraint shortfall and feasible = false.
 */
DesignResult find_optimal_design(const DesignSpec& spec);

struct CurvePoint {
    double alpha_star;
    std::optional<int> n;  // absent when infeasible up to n_max
};

std::vector<CurvePoint> sample_size_curve(const DesignSpec& spec, std::span<const double> alpha_grid);

/*
 * Several targets sharing rates, J, rho, rule and mode. The OC grid at each n
 * is computed once and checked against every target still open.
 */
struct Target {
    double alpha_star;
    double beta_star;
    PowerKind kind;
};

std::vector<DesignResult> find_optimal_designs(const DesignSpec& base, std::span<const Target> targets);

struct PublishedCell {
    double phi_E0;
    double phi_E1;
    int J;
    double alpha_star;
    double beta_star;
    PowerKind kind;
    Boundary design;
};

// The standard 144-cell table at phi_T = (0.4, 0.2), rho = 0.5.
std::span<const PublishedCell> published_table2();

enum class CellMatch { exact, within_one, mismatch };

struct Table2Row {
    PublishedCell published;
    DesignResult computed;
    CellMatch match = CellMatch::mismatch;
    bool revalidated = false;
    double check_alpha = 0.0;  // independent re-evaluation of the computed design
    double check_power = 0.0;
    double check_se = 0.0;
};

struct Table2Options {
    double rho = 0.5;
    int n_max = 100;
    DecisionRule rule = DecisionRule::isotonic;
    Kind1Event event = Kind1Event::selection;
    EvalMode mode = EvalMode::automatic(100000, 20240601);
    std::int64_t check_replicates = 400000;  // used when re-evaluation cannot be exact
};

struct Table2Filter {
    std::vector<std::pair<double, double>> efficacy_pairs;  // empty = all
    std::vector<int> J;
};

/*
 * Recomputes every published cell selected by the filter. A design
 * re-validates when an independent evaluation (exact where tractable, else a
 * fresh Monte Carlo run with its own seed, allowing 3 SE) meets both targets.
 */
std::vector<Table2Row> reproduce_table2(const Table2Filter& filter, const Table2Options& options);

std::string to_string(CellMatch m);

}  // namespace merit
