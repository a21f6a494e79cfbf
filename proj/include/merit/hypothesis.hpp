#pragma once

#include <optional>
#include <string>
#include <vector>

namespace merit {

// Elicited null/alternative rates. Toxicity: phi_T0 (unacceptable) >
// phi_T1 (acceptable). Efficacy: phi_E0 (unacceptable) < phi_E1 (acceptable).
struct DesignRates {
    double phi_T0 = 0.4;
    double phi_T1 = 0.2;
    double phi_E0 = 0.2;
    double phi_E1 = 0.4;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

enum class DoseClass { safe_futile, toxic_futile, toxic_efficacious, admissible };

struct DoseRates {
    double pi_T;
    double pi_E;
    DoseClass cls;
};

enum class HypothesisKind { null, alternative, least_favorable };

/*
 * Null(s, k): doses 1..s safe-futile, s+1..k toxic-futile, k+1..J
 * toxic-efficacious. Alt(u, v): 1..u safe-futile, u+1..v admissible,
 * v+1..J toxic-efficacious. LFS(j) is Alt(j-1, j) and keeps j in `first`.
 */
struct HypothesisLabel {
    HypothesisKind kind;
    int first;
    int second;

    std::string to_string() const;
    friend bool operator==(const HypothesisLabel&, const HypothesisLabel&) = default;
};

struct HypothesisConfig {
    HypothesisLabel label;
    std::vector<DoseRates> doses;

    int num_doses() const { return static_cast<int>(doses.size()); }
    bool is_null() const { return label.kind == HypothesisKind::null; }
    int num_admissible() const;
};

// All (J+1)(J+2)/2 null configurations ordered by (s, k).
std::vector<HypothesisConfig> enumerate_null(int J, const DesignRates& rates);

// All J(J+1)/2 alternative configurations ordered by (u, v).
std::vector<HypothesisConfig> enumerate_alternative(int J, const DesignRates& rates);

// The J least favorable configurations, j = 1..J.
std::vector<HypothesisConfig> least_favorable_set(int J, const DesignRates& rates);

HypothesisConfig null_config(int J, int s, int k, const DesignRates& rates);
HypothesisConfig alternative_config(int J, int u, int v, const DesignRates& rates);

/*
 * Scenario number used in reports. For J = 2 and J = 3 this is the 1..25
 * numbering of the standard scenario table (J = 2: nulls 1-6, alternatives
 * 17-19; J = 3: nulls 7-16, alternatives 20-25). Other J number nulls then
 * alternatives lexicographically from 1.
 */
int scenario_number(const HypothesisLabel& label, int J);

}  // namespace merit
