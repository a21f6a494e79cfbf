#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <random>

#include "merit/copula_binary.hpp"
#include "merit/oc_engine.hpp"
#include "merit/trial_engine.hpp"

using namespace merit;

namespace {
const DesignRates kRates{0.4, 0.2, 0.2, 0.4};

const ScenarioValue& find(const std::vector<ScenarioValue>& v, int scenario) {
    for (const auto& s : v)
        if (s.scenario == scenario) return s;
    throw std::runtime_error("scenario missing");
}
}  // namespace

TEST_CASE("arm acceptance") {
    CHECK(arm_acceptance(0.2, 0.4, 0.0, {1, 0, 1}) == doctest::Approx(0.8 * 0.4).epsilon(1e-14));
    CHECK(arm_acceptance(0.3, 0.7, 0.6, {12, 12, 0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(arm_acceptance(0.2, 0.4, 0.5, {5, 6, 0}), std::invalid_argument);
    CHECK_THROWS_AS(arm_acceptance(0.2, 0.4, 0.5, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("arm acceptance against ten million simulated arms") {
    const Boundary b{20, 5, 6};
    const double p = arm_acceptance(0.2, 0.4, 0.5, b);
    // Latent normals thresholded at the marginal quantiles.
    std::mt19937_64 g(99);
    std::normal_distribution<double> z;
    const double qT = -0.8416212335729143, qE = -0.2533471031357997, rho = 0.5;
    const double s = std::sqrt(1 - rho * rho);
    const long reps = 10000000;
    long hits = 0;
    for (long r = 0; r < reps; ++r) {
        int t = 0, e = 0;
        for (int i = 0; i < b.n; ++i) {
            const double x = z(g);
            const double y = rho * x + s * z(g);
            t += x <= qT;
            e += y <= qE;
        }
        hits += t <= b.m_T && e >= b.m_E;
    }
    const double se = std::sqrt(p * (1 - p) / reps);
    CHECK(std::abs(hits / double(reps) - p) < 4 * se);
}

TEST_CASE("type I error identities") {
    const Boundary b{20, 6, 5};
    const auto cfg = null_config(2, 0, 0, kRates);  // both arms (T0, E1)
    const double q = arm_acceptance(0.4, 0.4, 0.5, b);
    CHECK(type1_error(cfg, 0.5, b) == doctest::Approx(1 - (1 - q) * (1 - q)).epsilon(1e-13));
    CHECK_THROWS_AS(type1_error(alternative_config(2, 0, 1, kRates), 0.5, b), std::invalid_argument);
    CHECK_THROWS_AS(power(null_config(2, 0, 0, kRates), 0.5, b, PowerKind::I), std::invalid_argument);
    for (const auto& c : enumerate_null(3, kRates)) CHECK(type1_error(c, 0.5, {9, 9, 0}) == 1.0);

    const auto one = alternative_config(1, 0, 1, kRates);
    CHECK(power(one, 0.5, b, PowerKind::II) == doctest::Approx(arm_acceptance(0.2, 0.4, 0.5, b)).epsilon(1e-14));
}

TEST_CASE("published two-dose design") {
    const Boundary b{47, 13, 14};
    // Threshold rule on raw counts: regression values.
    const auto raw = global_oc(b, 2, kRates, 0.5, PowerKind::I);
    CHECK(raw.global_alpha == doctest::Approx(0.114258).epsilon(1e-5));
    CHECK(raw.global_power == doctest::Approx(0.810664).epsilon(1e-5));
    CHECK(find(raw.per_lfs_power, 19).value >= 0.8);
    CHECK(raw.per_null_alpha.size() == 6);
    CHECK(raw.per_lfs_power.size() == 2);
    CHECK(raw.mode == EvalKind::exact);
    CHECK_FALSE(raw.mc_standard_error.has_value());
    // Isotonic-adjusted rule: both global constraints hold.
    const auto iso = global_oc(b, 2, kRates, 0.5, PowerKind::I, EvalMode::exact(), DecisionRule::isotonic,
                               Kind1Event::selection);
    CHECK(find(iso.per_null_alpha, 6).value <= 0.1);
    CHECK(iso.global_alpha <= 0.1);
    CHECK(find(iso.per_lfs_power, 19).value >= 0.8);
    CHECK(iso.global_power >= 0.8);
}

TEST_CASE("threshold formulas match outcome enumeration") {
    for (int J : {1, 2, 3}) {
        for (auto event : {Kind1Event::factor, Kind1Event::selection}) {
            GridRequest req{J == 3 ? 7 : 12, J, {0.45, 0.15, 0.25, 0.5}, 0.3, DecisionRule::threshold, event};
            req.all_alternatives = true;
            const auto formula = evaluate_grid(req);
            req.force_enumeration = true;
            const auto enumerated = evaluate_grid(req);
            CAPTURE(J);
            for (std::size_t s = 0; s < formula.nulls.size(); ++s)
                for (std::size_t i = 0; i < formula.nulls[s].value.size(); ++i)
                    CHECK(std::abs(formula.nulls[s].value[i] - enumerated.nulls[s].value[i]) < 1e-10);
            for (int k = 0; k < 2; ++k)
                for (std::size_t s = 0; s < formula.power[k].size(); ++s)
                    for (std::size_t i = 0; i < formula.power[k][s].value.size(); ++i)
                        CHECK(std::abs(formula.power[k][s].value[i] - enumerated.power[k][s].value[i]) < 1e-10);
        }
    }
}

TEST_CASE("isotonic enumeration matches a per-outcome decision oracle") {
    for (int J : {2, 3}) {
        const int n = J == 2 ? 6 : 4;
        const double rho = 0.4;
        GridRequest req{n, J, kRates, rho, DecisionRule::isotonic, Kind1Event::selection};
        req.all_alternatives = true;
        const auto grid = evaluate_grid(req);

        std::vector<HypothesisConfig> configs = enumerate_null(J, kRates);
        for (const auto& c : enumerate_alternative(J, kRates)) configs.push_back(c);
        for (std::size_t ci = 0; ci < configs.size(); ++ci) {
            const auto& cfg = configs[ci];
            std::vector<JointCounts> arms;
            for (const auto& d : cfg.doses) arms.emplace_back(n, cell_probabilities(d.pi_T, d.pi_E, rho));
            const int cells = (n + 1) * (n + 1);
            std::vector<double> reject(cells * cells, 0.0), k1(reject), k2(reject);
            std::vector<int> outcome(J, 0);
            long total = 1;
            for (int j = 0; j < J; ++j) total *= cells;
            for (long code = 0; code < total; ++code) {
                long c = code;
                double w = 1;
                TrialData data;
                for (int j = 0; j < J; ++j) {
                    const int o = static_cast<int>(c % cells);
                    c /= cells;
                    const int t = o / (n + 1), e = o % (n + 1);
                    w *= arms[j].pmf(t, e);
                    data.arms.push_back({n, t, e, ArmStatus::active});
                }
                if (w == 0) continue;
                for (int mt = 0; mt <= n; ++mt)
                    for (int me = 0; me <= n; ++me) {
                        const auto out = admissible_set(data, {n, mt, me});
                        if (out.admissible_set.empty()) continue;
                        bool all_ok = true, any_ok = false;
                        for (int a : out.admissible_set) {
                            const bool ok = cfg.doses[a].cls == DoseClass::admissible;
                            all_ok = all_ok && ok;
                            any_ok = any_ok || ok;
                        }
                        const int idx = mt * (n + 1) + me;
                        reject[idx] += w;
                        if (all_ok) k1[idx] += w;
                        if (any_ok) k2[idx] += w;
                    }
            }
            CAPTURE(J);
            CAPTURE(cfg.label.to_string());
            for (int idx = 0; idx < cells; ++idx) {
                if (cfg.is_null()) {
                    CHECK(std::abs(grid.nulls[ci].value[idx] - reject[idx]) < 1e-10);
                } else {
                    const std::size_t ai = ci - grid.nulls.size();
                    CHECK(std::abs(grid.power[0][ai].value[idx] - k1[idx]) < 1e-10);
                    CHECK(std::abs(grid.power[1][ai].value[idx] - k2[idx]) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("exact and Monte Carlo agree") {
    for (auto rule : {DecisionRule::threshold, DecisionRule::isotonic}) {
        for (const Boundary b : {Boundary{30, 8, 9}, Boundary{18, 5, 4}}) {
            const auto ex = global_oc(b, 2, kRates, 0.5, PowerKind::I, EvalMode::exact(), rule,
                                      Kind1Event::selection, true);
            const auto mc = global_oc(b, 2, kRates, 0.5, PowerKind::I, EvalMode::monte_carlo(200000, 17), rule,
                                      Kind1Event::selection, true);
            CHECK(mc.mode == EvalKind::monte_carlo);
            CHECK(mc.replicates == 200000);
            REQUIRE(mc.mc_standard_error.has_value());
            for (std::size_t i = 0; i < ex.per_null_alpha.size(); ++i) {
                const double p = ex.per_null_alpha[i].value;
                const double se = std::sqrt(p * (1 - p) / 200000);
                CHECK(std::abs(mc.per_null_alpha[i].value - p) <= 4 * se + 1e-12);
            }
            for (std::size_t i = 0; i < ex.per_alt_power.size(); ++i) {
                const double p = ex.per_alt_power[i].value;
                const double se = std::sqrt(p * (1 - p) / 200000);
                CHECK(std::abs(mc.per_alt_power[i].value - p) <= 4 * se + 1e-12);
            }
        }
    }
}

TEST_CASE("Monte Carlo is independent of the thread count") {
    GridRequest req{20, 2, kRates, 0.5, DecisionRule::isotonic, Kind1Event::selection,
                    EvalMode::monte_carlo(30000, 5)};
    setenv("MERIT_THREADS", "1", 1);
    const auto a = evaluate_grid(req);
    setenv("MERIT_THREADS", "4", 1);
    const auto b = evaluate_grid(req);
    unsetenv("MERIT_THREADS");
    for (std::size_t s = 0; s < a.nulls.size(); ++s) CHECK(a.nulls[s].value == b.nulls[s].value);
    for (std::size_t s = 0; s < a.power[0].size(); ++s) CHECK(a.power[0][s].value == b.power[0][s].value);
}

TEST_CASE("global alpha is monotone in the boundary") {
    for (auto rule : {DecisionRule::threshold, DecisionRule::isotonic}) {
        for (int J : {2, 3}) {
            const int n = J == 2 ? 20 : 8;
            const auto g = evaluate_grid({n, J, kRates, 0.5, rule, Kind1Event::selection});
            for (int mt = 0; mt <= n; ++mt)
                for (int me = 0; me <= n; ++me) {
                    if (mt < n) CHECK(g.global_alpha(mt, me) <= g.global_alpha(mt + 1, me) + 1e-12);
                    if (me < n) CHECK(g.global_alpha(mt, me + 1) <= g.global_alpha(mt, me) + 1e-12);
                }
        }
    }
}

TEST_CASE("kind I power never exceeds kind II") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.05, 0.3);
    for (int trial = 0; trial < 6; ++trial) {
        const double t1 = u(gen), e0 = u(gen);
        const DesignRates r{t1 + 0.2, t1, e0, e0 + 0.25};
        const int J = 2 + trial % 2;
        for (auto rule : {DecisionRule::threshold, DecisionRule::isotonic})
            for (auto event : {Kind1Event::factor, Kind1Event::selection}) {
                if (rule == DecisionRule::isotonic && event == Kind1Event::factor && J == 3) continue;
                GridRequest req{J == 2 ? 15 : 7, J, r, 0.5, rule, event};
                req.all_alternatives = true;
                const auto g = evaluate_grid(req);
                for (std::size_t s = 0; s < g.power[0].size(); ++s)
                    for (std::size_t i = 0; i < g.power[0][s].value.size(); ++i)
                        CHECK(g.power[0][s].value[i] <= g.power[1][s].value[i] + 1e-12);
            }
    }
}

TEST_CASE("least favorable set bounds every alternative") {
    const auto grid10 = full_boundary_grid(10);
    const auto grid20 = full_boundary_grid(20);
    CHECK(grid10.size() == 121);
    CHECK(verify_theorem1(2, kRates, 0.5, grid10).violations == 0);
    CHECK(verify_theorem1(2, kRates, 0.5, grid20).violations == 0);
    CHECK(verify_theorem1(3, kRates, 0.5, full_boundary_grid(15)).violations == 0);

    const Boundary one[] = {{47, 13, 14}};
    const auto rep = verify_theorem1(2, kRates, 0.5, one);
    CHECK(rep.rows.size() == 3);
    CHECK(power_over_all_alternatives(one[0], 2, kRates, 0.5, PowerKind::I).size() == 3);
    for (const auto& row : rep.rows) {
        CHECK(row.lfs_min[0] <= row.beta[0] + 1e-12);
        CHECK(row.lfs_min[1] <= row.beta[1] + 1e-12);
    }
    CHECK(is_least_favorable({HypothesisKind::alternative, 1, 2}));
    CHECK_FALSE(is_least_favorable({HypothesisKind::alternative, 0, 2}));
}

TEST_CASE("budgets") {
    GridRequest big{60, 4, kRates, 0.5, DecisionRule::isotonic, Kind1Event::selection};
    CHECK_FALSE(exact_within_budget(big));
    CHECK_THROWS_AS(evaluate_grid(big), std::domain_error);
    big.mode = EvalMode::automatic(2000, 1);
    CHECK(evaluate_grid(big).mode == EvalKind::monte_carlo);
    GridRequest small{20, 2, kRates, 0.5, DecisionRule::isotonic, Kind1Event::selection,
                      EvalMode::automatic(2000, 1)};
    CHECK(exact_within_budget(small));
    CHECK(evaluate_grid(small).mode == EvalKind::exact);
}
