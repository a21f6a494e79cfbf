#include "merit/hypothesis.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace merit {

namespace {

void check_prob(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0))
        throw std::invalid_argument(fmt::format("{} must lie in (0, 1), got {}", name, v));
}

void check_J(int J) {
    if (J < 1) throw std::invalid_argument(fmt::format("J must be >= 1, got {}", J));
}

DoseRates dose(const DesignRates& r, DoseClass cls) {
    switch (cls) {
        case DoseClass::safe_futile: return {r.phi_T1, r.phi_E0, cls};
        case DoseClass::toxic_futile: return {r.phi_T0, r.phi_E0, cls};
        case DoseClass::toxic_efficacious: return {r.phi_T0, r.phi_E1, cls};
        case DoseClass::admissible: return {r.phi_T1, r.phi_E1, cls};
    }
    throw std::logic_error("unknown dose class");
}

// Lexicographic position of (a, b) among pairs 0 <= a <= b <= J (strict:
// a < b) in (a, b) order, 0-based.
int pair_rank(int a, int b, int J, bool strict) {
    int rank = 0;
    for (int x = 0; x < a; ++x) rank += J - x + (strict ? 0 : 1);
    return rank + (b - a - (strict ? 1 : 0));
}

}  // namespace

void DesignRates::validate() const {
    check_prob(phi_T0, "phi_T0");
    check_prob(phi_T1, "phi_T1");
    check_prob(phi_E0, "phi_E0");
    check_prob(phi_E1, "phi_E1");
    if (!(phi_T0 > phi_T1))
        throw std::invalid_argument(
            fmt::format("phi_T0 must exceed phi_T1 (got {} <= {})", phi_T0, phi_T1));
    if (!(phi_E0 < phi_E1))
        throw std::invalid_argument(
            fmt::format("phi_E1 must exceed phi_E0 (got {} <= {})", phi_E1, phi_E0));
}

std::string HypothesisLabel::to_string() const {
    switch (kind) {
        case HypothesisKind::null: return fmt::format("H0({},{})", first, second);
        case HypothesisKind::alternative: return fmt::format("H1({},{})", first, second);
        case HypothesisKind::least_favorable: return fmt::format("LFS({})", first);
    }
    return "?";
}

int HypothesisConfig::num_admissible() const {
    int count = 0;
    for (const auto& d : doses) count += d.cls == DoseClass::admissible ? 1 : 0;
    return count;
}

HypothesisConfig null_config(int J, int s, int k, const DesignRates& rates) {
    check_J(J);
    if (s < 0 || s > k || k > J)
        throw std::invalid_argument(fmt::format("H0(s,k) requires 0 <= s <= k <= J, got ({},{})", s, k));
    HypothesisConfig cfg{{HypothesisKind::null, s, k}, {}};
    for (int j = 1; j <= J; ++j) {
        const auto cls = j <= s   ? DoseClass::safe_futile
                         : j <= k ? DoseClass::toxic_futile
                                  : DoseClass::toxic_efficacious;
        cfg.doses.push_back(dose(rates, cls));
    }
    return cfg;
}

HypothesisConfig alternative_config(int J, int u, int v, const DesignRates& rates) {
    check_J(J);
    if (u < 0 || u >= v || v > J)
        throw std::invalid_argument(fmt::format("H1(u,v) requires 0 <= u < v <= J, got ({},{})", u, v));
    HypothesisConfig cfg{{HypothesisKind::alternative, u, v}, {}};
    for (int j = 1; j <= J; ++j) {
        const auto cls = j <= u   ? DoseClass::safe_futile
                         : j <= v ? DoseClass::admissible
                                  : DoseClass::toxic_efficacious;
        cfg.doses.push_back(dose(rates, cls));
    }
    return cfg;
}

std::vector<HypothesisConfig> enumerate_null(int J, const DesignRates& rates) {
    check_J(J);
    std::vector<HypothesisConfig> out;
    for (int s = 0; s <= J; ++s)
        for (int k = s; k <= J; ++k) out.push_back(null_config(J, s, k, rates));
    return out;
}

std::vector<HypothesisConfig> enumerate_alternative(int J, const DesignRates& rates) {
    check_J(J);
    std::vector<HypothesisConfig> out;
    for (int u = 0; u < J; ++u)
        for (int v = u + 1; v <= J; ++v) out.push_back(alternative_config(J, u, v, rates));
    return out;
}

std::vector<HypothesisConfig> least_favorable_set(int J, const DesignRates& rates) {
    check_J(J);
    std::vector<HypothesisConfig> out;
    for (int j = 1; j <= J; ++j) {
        auto cfg = alternative_config(J, j - 1, j, rates);
        cfg.label = {HypothesisKind::least_favorable, j, 0};
        out.push_back(std::move(cfg));
    }
    return out;
}

int scenario_number(const HypothesisLabel& label, int J) {
    int base_null = 1;
    int base_alt = 0;
    if (J == 2) {
        base_alt = 17;
    } else if (J == 3) {
        base_null = 7;
        base_alt = 20;
    } else {
        base_alt = 1 + (J + 1) * (J + 2) / 2;
    }
    switch (label.kind) {
        case HypothesisKind::null:
            return base_null + pair_rank(label.first, label.second, J, false);
        case HypothesisKind::alternative:
            return base_alt + pair_rank(label.first, label.second, J, true);
        case HypothesisKind::least_favorable:
            return base_alt + pair_rank(label.first - 1, label.first, J, true);
    }
    return 0;
}

}  // namespace merit
