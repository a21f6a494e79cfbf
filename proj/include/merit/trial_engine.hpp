#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "merit/copula_binary.hpp"
#include "merit/hypothesis.hpp"
#include "merit/isotonic.hpp"
#include "merit/oc_engine.hpp"

namespace merit {

enum class ArmStatus { active, stopped_safety, stopped_futility };

std::string to_string(ArmStatus s);

struct ArmData {
    int enrolled = 0;
    int n_T = 0;
    int n_E = 0;
    ArmStatus status = ArmStatus::active;
};

struct TrialData {
    std::vector<ArmData> arms;

    // Throws std::invalid_argument unless 0 <= n_T, n_E <= enrolled.
    void validate() const;
};

// Raised when trial data are not in a state the requested step allows.
class TrialStateError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

struct InterimPolicy {
    std::vector<double> looks;  // fractions of n, strictly increasing in (0, 1)
    double C_T = 0.95;
    double C_E = 0.95;
    double prior_a = 0.1;
    double prior_b = 0.1;

    void validate() const;
    // Enrolment per arm at each look: round half up of fraction * n, keeping
    // sizes in [1, n) and dropping repeats.
    std::vector<int> look_sizes(int n) const;
};

// Parses "1/2" or "1/3,2/3" (decimals also accepted).
std::vector<double> parse_looks(const std::string& text);

struct IsotonicFlags {
    bool toxicity = true;
    bool efficacy = true;
};

struct TrialOutcome {
    std::vector<int> admissible_set;  // 0-based arm indices, ascending
    bool rejected_H0 = false;
    int total_enrolled = 0;
    std::vector<ArmStatus> stop_reasons;
};

/*
 * Arm j is admissible iff it is active, adjusted n_E >= m_E and adjusted
 * n_T <= m_T. Adjusted counts are weighted PAVA fits over the active arms
 * (weights = enrolment) when the flag is set, raw counts otherwise. Throws
 * TrialStateError if an active arm is not fully enrolled.
 */
TrialOutcome admissible_set(const TrialData& data, const Boundary& b, IsotonicFlags flags = {});

enum class Direction { above, below };

// Pr(pi > threshold) or Pr(pi < threshold) under Beta(a + x, b + n - x).
double posterior_exceedance(int x, int n, double threshold, double a, double b, Direction direction);

enum class InterimAction { proceed, stop_safety, stop_futility };

// Safety first: stop if Pr(pi_T > phi_T1) > C_T, else if Pr(pi_E < phi_E1) > C_E.
InterimAction interim_decision(const ArmData& arm, const DesignRates& rates, const InterimPolicy& policy);

/*
 * One trial. All J * n patient outcomes are drawn up front in arm order, so
 * runs sharing a stream state see the same patients with or without looks.
 */
TrialOutcome simulate_trial(const HypothesisConfig& config, const Boundary& b, double rho,
                            const DesignRates& rates, const InterimPolicy* policy,
                            IsotonicFlags flags, Stream& stream);

struct ScenarioEstimate {
    double estimate = 0.0;  // Pr(reject H0) for a null, power of the chosen kind otherwise
    double se = 0.0;
    double expected_n = 0.0;
    double expected_n_se = 0.0;
};

struct InterimComparison {
    HypothesisConfig config;
    int scenario = 0;
    ScenarioEstimate with_interim;
    ScenarioEstimate without_interim;
};

/*
 * Paired Monte Carlo: each replicate runs the same patients with and without
 * the interim policy. Kind I counts a nonempty admissible set of truly
 * admissible arms only; kind II counts any truly admissible arm selected.
 */
std::vector<InterimComparison> simulate_oc_with_interim(const std::vector<HypothesisConfig>& scenarios,
                                                        const Boundary& b, double rho,
                                                        const DesignRates& rates,
                                                        const InterimPolicy& policy, PowerKind kind,
                                                        std::int64_t replicates, std::uint64_t seed,
                                                        IsotonicFlags flags = {});

}  // namespace merit
