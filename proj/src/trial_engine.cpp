#include "merit/trial_engine.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>
#include <fmt/format.h>

#include "merit/parallel.hpp"

namespace merit {

namespace {

constexpr double kCompareSlack = 1e-9;
constexpr std::int64_t kBlock = 5000;

// Stop decisions at each look, tabulated by event count.
struct StopTable {
    std::vector<int> sizes;
    std::vector<std::vector<InterimAction>> tox;  // [look][n_T]: stop_safety or proceed
    std::vector<std::vector<InterimAction>> eff;  // [look][n_E]: stop_futility or proceed

    StopTable(int n, const DesignRates& rates, const InterimPolicy& policy) : sizes(policy.look_sizes(n)) {
        for (int k : sizes) {
            std::vector<InterimAction> t(static_cast<std::size_t>(k) + 1), e(static_cast<std::size_t>(k) + 1);
            for (int x = 0; x <= k; ++x) {
                t[x] = posterior_exceedance(x, k, rates.phi_T1, policy.prior_a, policy.prior_b,
                                            Direction::above) > policy.C_T
                           ? InterimAction::stop_safety
                           : InterimAction::proceed;
                e[x] = posterior_exceedance(x, k, rates.phi_E1, policy.prior_a, policy.prior_b,
                                            Direction::below) > policy.C_E
                           ? InterimAction::stop_futility
                           : InterimAction::proceed;
            }
            tox.push_back(std::move(t));
            eff.push_back(std::move(e));
        }
    }
};

// Patient outcomes, J * n codes in arm order: bit 1 toxicity, bit 0 efficacy.
std::vector<std::uint8_t> draw_patients(const std::vector<CellProbs>& cells, int n, Stream& stream) {
    std::vector<std::uint8_t> out;
    out.reserve(cells.size() * static_cast<std::size_t>(n));
    for (const auto& c : cells) {
        const double c0 = c.p00;
        const double c1 = c0 + c.p01;
        const double c2 = c1 + c.p10;
        for (int i = 0; i < n; ++i) {
            const double u = stream.uniform();
            out.push_back(u < c0 ? 0 : u < c1 ? 1 : u < c2 ? 2 : 3);
        }
    }
    return out;
}

TrialOutcome run_trial(const std::vector<std::uint8_t>& patients, int J, const Boundary& b,
                       const StopTable* stops, IsotonicFlags flags) {
    TrialData data;
    data.arms.resize(static_cast<std::size_t>(J));
    for (int j = 0; j < J; ++j) {
        const std::uint8_t* p = patients.data() + static_cast<std::size_t>(j) * b.n;
        auto& arm = data.arms[j];
        int enrolled = 0;
        auto enroll_to = [&](int k) {
            for (; enrolled < k; ++enrolled) {
                arm.n_T += p[enrolled] >> 1;
                arm.n_E += p[enrolled] & 1;
            }
            arm.enrolled = enrolled;
        };
        if (stops) {
            for (std::size_t l = 0; l < stops->sizes.size() && arm.status == ArmStatus::active; ++l) {
                enroll_to(stops->sizes[l]);
                if (stops->tox[l][arm.n_T] == InterimAction::stop_safety)
                    arm.status = ArmStatus::stopped_safety;
                else if (stops->eff[l][arm.n_E] == InterimAction::stop_futility)
                    arm.status = ArmStatus::stopped_futility;
            }
        }
        if (arm.status == ArmStatus::active) enroll_to(b.n);
    }
    return admissible_set(data, b, flags);
}

std::vector<double> adjusted(const std::vector<double>& counts, const std::vector<double>& weights, bool on) {
    if (!on || counts.empty()) return counts;
    return pava_adjust(counts, weights);
}

}  // namespace

std::string to_string(ArmStatus s) {
    switch (s) {
        case ArmStatus::active: return "active";
        case ArmStatus::stopped_safety: return "stopped_safety";
        case ArmStatus::stopped_futility: return "stopped_futility";
    }
    return "?";
}

void TrialData::validate() const {
    for (std::size_t j = 0; j < arms.size(); ++j) {
        const auto& a = arms[j];
        if (a.enrolled < 0 || a.n_T < 0 || a.n_E < 0 || a.n_T > a.enrolled || a.n_E > a.enrolled)
            throw std::invalid_argument(fmt::format(
                "arm {}: require 0 <= n_T, n_E <= enrolled (got enrolled={}, n_T={}, n_E={})", j + 1,
                a.enrolled, a.n_T, a.n_E));
    }
}

void InterimPolicy::validate() const {
    for (std::size_t i = 0; i < looks.size(); ++i) {
        if (!(looks[i] > 0.0 && looks[i] < 1.0))
            throw std::invalid_argument(fmt::format("look fraction must lie in (0, 1), got {}", looks[i]));
        if (i > 0 && !(looks[i] > looks[i - 1]))
            throw std::invalid_argument("look fractions must be strictly increasing");
    }
    if (!(C_T > 0.0 && C_T < 1.0)) throw std::invalid_argument(fmt::format("C_T must lie in (0, 1), got {}", C_T));
    if (!(C_E > 0.0 && C_E < 1.0)) throw std::invalid_argument(fmt::format("C_E must lie in (0, 1), got {}", C_E));
    if (!(prior_a > 0.0)) throw std::invalid_argument(fmt::format("prior_a must be > 0, got {}", prior_a));
    if (!(prior_b > 0.0)) throw std::invalid_argument(fmt::format("prior_b must be > 0, got {}", prior_b));
}

std::vector<int> InterimPolicy::look_sizes(int n) const {
    std::vector<int> out;
    for (double f : looks) {
        const int k = static_cast<int>(std::floor(f * n + 0.5));
        if (k >= 1 && k < n && (out.empty() || k > out.back())) out.push_back(k);
    }
    return out;
}

std::vector<double> parse_looks(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) throw std::invalid_argument(fmt::format("empty look in '{}'", text));
        try {
            std::size_t used = 0;
            const auto slash = item.find('/');
            double v = 0.0;
            if (slash == std::string::npos) {
                v = std::stod(item, &used);
                if (used != item.size()) throw std::invalid_argument("trailing");
            } else {
                const std::string num = item.substr(0, slash);
                const std::string den = item.substr(slash + 1);
                const double a = std::stod(num, &used);
                if (used != num.size()) throw std::invalid_argument("trailing");
                const double d = std::stod(den, &used);
                if (used != den.size() || d == 0.0) throw std::invalid_argument("denominator");
                v = a / d;
            }
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument(fmt::format("cannot parse look '{}'", item));
        }
    }
    return out;
}

TrialOutcome admissible_set(const TrialData& data, const Boundary& b, IsotonicFlags flags) {
    b.validate();
    data.validate();
    std::vector<int> active;
    for (std::size_t j = 0; j < data.arms.size(); ++j) {
        const auto& a = data.arms[j];
        if (a.status != ArmStatus::active) continue;
        if (a.enrolled != b.n)
            throw TrialStateError(fmt::format("arm {} is active with {} of {} patients enrolled", j + 1,
                                              a.enrolled, b.n));
        active.push_back(static_cast<int>(j));
    }

    std::vector<double> tox, eff, w;
    for (int j : active) {
        tox.push_back(data.arms[j].n_T);
        eff.push_back(data.arms[j].n_E);
        w.push_back(data.arms[j].enrolled);
    }
    const auto t_adj = adjusted(tox, w, flags.toxicity);
    const auto e_adj = adjusted(eff, w, flags.efficacy);

    TrialOutcome out;
    for (std::size_t i = 0; i < active.size(); ++i)
        if (t_adj[i] <= b.m_T + kCompareSlack && e_adj[i] >= b.m_E - kCompareSlack)
            out.admissible_set.push_back(active[i]);
    out.rejected_H0 = !out.admissible_set.empty();
    for (const auto& a : data.arms) {
        out.total_enrolled += a.enrolled;
        out.stop_reasons.push_back(a.status);
    }
    return out;
}

double posterior_exceedance(int x, int n, double threshold, double a, double b, Direction direction) {
    if (n < 0 || x < 0 || x > n) throw std::invalid_argument("posterior_exceedance: require 0 <= x <= n");
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("posterior_exceedance: prior parameters must be > 0");
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw std::invalid_argument("posterior_exceedance: threshold must lie in [0, 1]");
    const double pa = a + x;
    const double pb = b + (n - x);
    if (direction == Direction::above) {
        if (threshold <= 0.0) return 1.0;
        if (threshold >= 1.0) return 0.0;
        return boost::math::ibetac(pa, pb, threshold);
    }
    if (threshold <= 0.0) return 0.0;
    if (threshold >= 1.0) return 1.0;
    return boost::math::ibeta(pa, pb, threshold);
}

InterimAction interim_decision(const ArmData& arm, const DesignRates& rates, const InterimPolicy& policy) {
    if (arm.status != ArmStatus::active) throw TrialStateError("interim decision requested for a stopped arm");
    const double tox = posterior_exceedance(arm.n_T, arm.enrolled, rates.phi_T1, policy.prior_a,
                                            policy.prior_b, Direction::above);
    if (tox > policy.C_T) return InterimAction::stop_safety;
    const double fut = posterior_exceedance(arm.n_E, arm.enrolled, rates.phi_E1, policy.prior_a,
                                            policy.prior_b, Direction::below);
    if (fut > policy.C_E) return InterimAction::stop_futility;
    return InterimAction::proceed;
}

TrialOutcome simulate_trial(const HypothesisConfig& config, const Boundary& b, double rho,
                            const DesignRates& rates, const InterimPolicy* policy,
                            IsotonicFlags flags, Stream& stream) {
    b.validate();
    std::vector<CellProbs> cells;
    for (const auto& d : config.doses) cells.push_back(cell_probabilities(d.pi_T, d.pi_E, rho));
    const auto patients = draw_patients(cells, b.n, stream);
    std::optional<StopTable> stops;
    if (policy) {
        policy->validate();
        stops.emplace(b.n, rates, *policy);
    }
    return run_trial(patients, config.num_doses(), b, stops ? &*stops : nullptr, flags);
}

std::vector<InterimComparison> simulate_oc_with_interim(const std::vector<HypothesisConfig>& scenarios,
                                                        const Boundary& b, double rho,
                                                        const DesignRates& rates,
                                                        const InterimPolicy& policy, PowerKind kind,
                                                        std::int64_t replicates, std::uint64_t seed,
                                                        IsotonicFlags flags) {
    b.validate();
    rates.validate();
    policy.validate();
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    const StopTable stops(b.n, rates, policy);
    const std::int64_t blocks = (replicates + kBlock - 1) / kBlock;

    struct Sums {
        std::int64_t hits[2] = {0, 0};
        std::int64_t n[2] = {0, 0};
        std::int64_t n2[2] = {0, 0};
    };
    std::vector<Sums> sums(scenarios.size());
    std::vector<std::mutex> locks(scenarios.size());

    parallel_for(scenarios.size() * static_cast<std::size_t>(blocks), [&](std::size_t ti) {
        const std::size_t s = ti / static_cast<std::size_t>(blocks);
        const auto block = static_cast<std::int64_t>(ti % static_cast<std::size_t>(blocks));
        const auto& cfg = scenarios[s];
        std::vector<CellProbs> cells;
        for (const auto& d : cfg.doses) cells.push_back(cell_probabilities(d.pi_T, d.pi_E, rho));
        const auto J = cfg.num_doses();
        const int label_id = scenario_number(cfg.label, J);

        auto success = [&](const TrialOutcome& o) {
            if (cfg.is_null()) return o.rejected_H0;
            bool any_adm = false;
            bool all_adm = true;
            for (int j : o.admissible_set) {
                const bool adm = cfg.doses[j].cls == DoseClass::admissible;
                any_adm |= adm;
                all_adm &= adm;
            }
            return kind == PowerKind::II ? any_adm : (o.rejected_H0 && all_adm);
        };

        Stream stream(seed, {static_cast<std::uint64_t>(label_id), static_cast<std::uint64_t>(J),
                             static_cast<std::uint64_t>(block)});
        Sums local;
        const std::int64_t count = std::min(kBlock, replicates - block * kBlock);
        for (std::int64_t r = 0; r < count; ++r) {
            const auto patients = draw_patients(cells, b.n, stream);
            const TrialOutcome runs[2] = {run_trial(patients, J, b, &stops, flags),
                                          run_trial(patients, J, b, nullptr, flags)};
            for (int m = 0; m < 2; ++m) {
                local.hits[m] += success(runs[m]) ? 1 : 0;
                local.n[m] += runs[m].total_enrolled;
                local.n2[m] += static_cast<std::int64_t>(runs[m].total_enrolled) * runs[m].total_enrolled;
            }
        }
        std::lock_guard lock(locks[s]);
        for (int m = 0; m < 2; ++m) {
            sums[s].hits[m] += local.hits[m];
            sums[s].n[m] += local.n[m];
            sums[s].n2[m] += local.n2[m];
        }
    });

    const auto R = static_cast<double>(replicates);
    std::vector<InterimComparison> out;
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        InterimComparison c;
        c.config = scenarios[s];
        c.scenario = scenario_number(scenarios[s].label, scenarios[s].num_doses());
        ScenarioEstimate* est[2] = {&c.with_interim, &c.without_interim};
        for (int m = 0; m < 2; ++m) {
            const double p = static_cast<double>(sums[s].hits[m]) / R;
            const double mean = static_cast<double>(sums[s].n[m]) / R;
            const double var = std::max(0.0, static_cast<double>(sums[s].n2[m]) / R - mean * mean);
            *est[m] = {p, std::sqrt(p * (1.0 - p) / R), mean, std::sqrt(var / R)};
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace merit
