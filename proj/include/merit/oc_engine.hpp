#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "merit/hypothesis.hpp"

namespace merit {

struct Boundary {
    int n = 1;
    int m_T = 0;
    int m_E = 0;

    // Requires n >= 1, 0 <= m_T <= n, 0 <= m_E <= n; throws std::invalid_argument.
    void validate() const;
    std::string to_string() const;
    friend bool operator==(const Boundary&, const Boundary&) = default;
};

enum class PowerKind { I = 1, II = 2 };

/*
 * threshold: arm j is accepted iff n_T,j <= m_T and n_E,j >= m_E.
 * isotonic: the same comparison on PAVA-adjusted counts (equal weights,
 * both endpoints), which is how dose monotonicity enters the decision.
 */
enum class DecisionRule { threshold, isotonic };

/*
 * Event counted as a kind-I success.
 * factor: every safe-futile arm has n_E < m_E, every toxic arm has
 *   n_T > m_T, and some admissible arm is accepted (the product form).
 * selection: the accepted set is nonempty and holds admissible arms only.
 * Under the threshold rule with J = 1 or on the least favorable set these
 * differ only in how safe-futile arms rejected for toxicity are scored.
 */
enum class Kind1Event { factor, selection };

enum class EvalKind { exact, monte_carlo };

struct EvalMode {
    enum class Request { exact, monte_carlo, automatic };
    Request request = Request::exact;
    std::int64_t replicates = 100000;
    std::uint64_t seed = 20240601;

    static EvalMode exact() { return {}; }
    static EvalMode monte_carlo(std::int64_t reps, std::uint64_t seed) {
        return {Request::monte_carlo, reps, seed};
    }
    static EvalMode automatic(std::int64_t reps, std::uint64_t seed) {
        return {Request::automatic, reps, seed};
    }
};

struct ScenarioValue {
    HypothesisLabel label;
    int scenario = 0;  // standard scenario number
    double value = 0.0;
    double se = 0.0;   // 0 in exact mode
};

struct OCResult {
    double global_alpha = 0.0;
    std::vector<ScenarioValue> per_null_alpha;
    double global_power = 1.0;
    std::vector<ScenarioValue> per_lfs_power;
    std::vector<ScenarioValue> per_alt_power;  // every Alt(u,v), when requested
    PowerKind kind = PowerKind::I;
    EvalKind mode = EvalKind::exact;
    std::int64_t replicates = 0;
    // SE of the entries attaining the global alpha and the global power,
    // whichever is larger; absent in exact mode.
    std::optional<double> mc_standard_error;
};

// Exact Pr(n_T <= m_T, n_E >= m_E) for one arm.
double arm_acceptance(double pi_T, double pi_E, double rho, const Boundary& b);

// Exact threshold-rule alpha(s,k). Throws std::invalid_argument if config is not a null.
double type1_error(const HypothesisConfig& config, double rho, const Boundary& b);

// Exact threshold-rule power of an alternative. Throws std::invalid_argument on a null config.
double power(const HypothesisConfig& config, double rho, const Boundary& b, PowerKind kind);

OCResult global_oc(const Boundary& b, int J, const DesignRates& rates, double rho, PowerKind kind,
                   const EvalMode& mode = EvalMode::exact(),
                   DecisionRule rule = DecisionRule::threshold,
                   Kind1Event event = Kind1Event::factor, bool all_alternatives = false);

// Whether an alternative is one of the least favorable configurations.
bool is_least_favorable(const HypothesisLabel& label);

// Exact threshold-rule power for every Alt(u,v), in enumerate_alternative order.
std::vector<ScenarioValue> power_over_all_alternatives(const Boundary& b, int J,
                                                       const DesignRates& rates, double rho,
                                                       PowerKind kind);

struct Theorem1Row {
    Boundary boundary;
    HypothesisLabel label;
    double beta[2] = {0.0, 0.0};      // kind I, kind II at Alt(u,v)
    double lfs_min[2] = {0.0, 0.0};   // min over the least favorable set
    bool violated[2] = {false, false};
};

struct Theorem1Report {
    int J = 0;
    double rho = 0.0;
    std::vector<Theorem1Row> rows;  // boundary-major, then enumerate_alternative order
    int violations = 0;
};

// Checks min_j beta(j) <= beta(u,v) for every boundary, kind and Alt(u,v) (exact).
Theorem1Report verify_theorem1(int J, const DesignRates& rates, double rho,
                               std::span<const Boundary> grid);

// Every boundary (n, m_T, m_E) with m_T, m_E in 0..n.
std::vector<Boundary> full_boundary_grid(int n);

/*
 * Operating characteristics for every (m_T, m_E) at a fixed n. Values are
 * stored row-major by m_T, (n+1) x (n+1).
 */
struct GridRequest {
    int n = 1;
    int J = 2;
    DesignRates rates;
    double rho = 0.5;
    DecisionRule rule = DecisionRule::threshold;
    Kind1Event event = Kind1Event::factor;
    EvalMode mode;
    bool all_alternatives = false;  // evaluate every Alt(u,v), not just the least favorable set
    bool force_enumeration = false; // exact mode: enumerate outcomes even when a closed form exists
};

struct ScenarioGrid {
    HypothesisConfig config;
    std::vector<double> value;
    std::vector<double> se;  // empty in exact mode
};

class OcGrid {
  public:
    int n = 0;
    int J = 0;
    EvalKind mode = EvalKind::exact;
    std::int64_t replicates = 0;
    std::vector<ScenarioGrid> nulls;
    // Indexed by kind - 1. Least favorable configurations, or every
    // alternative when requested; global power always uses the former.
    std::vector<ScenarioGrid> power[2];

    std::size_t index(int m_T, int m_E) const {
        return static_cast<std::size_t>(m_T) * static_cast<std::size_t>(n + 1) +
               static_cast<std::size_t>(m_E);
    }
    double global_alpha(int m_T, int m_E) const;
    double global_power(int m_T, int m_E, PowerKind kind) const;
    OCResult result(int m_T, int m_E, PowerKind kind) const;
};

/*
 * Exact mode under the isotonic rule enumerates every joint outcome of the J
 * arms; this throws std::domain_error when that exceeds the hard work cap.
 * Automatic mode picks exact when it fits within the soft budget, else MC.
 */
OcGrid evaluate_grid(const GridRequest& request);

// Whether automatic mode would evaluate this request exactly.
bool exact_within_budget(const GridRequest& request);

}  // namespace merit
