#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "merit/trial_engine.hpp"
#include "oracles.hpp"

using namespace merit;

namespace {
const DesignRates kRates{0.4, 0.2, 0.2, 0.4};

std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }
}  // namespace

TEST_CASE("pava examples") {
    const std::vector<double> a{1, 2, 3}, b{5, 3}, c{0.5, 0.3, 0.1};
    CHECK(pava_adjust(a, ones(3)) == std::vector<double>{1, 2, 3});
    CHECK(pava_adjust(b, ones(2)) == std::vector<double>{4, 4});
    const auto fc = pava_adjust(c, ones(3));
    for (double v : fc) CHECK(v == doctest::Approx(0.3).epsilon(1e-15));
    CHECK_THROWS_AS(pava_adjust(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(pava_adjust(a, ones(2)), std::invalid_argument);
    CHECK_THROWS_AS(pava_adjust(a, std::vector<double>{1, 0, 1}), std::invalid_argument);
}

TEST_CASE("pava properties on random inputs") {
    std::mt19937_64 g(2024);
    std::uniform_real_distribution<double> val(-5, 5), wt(0.1, 4);
    for (int rep = 0; rep < 600; ++rep) {
        const std::size_t n = 1 + g() % 9;
        std::vector<double> y(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Integer values half the time, so ties occur.
            y[i] = rep % 2 ? std::round(val(g)) : val(g);
            w[i] = rep % 3 ? 1.0 : wt(g);
        }
        const auto fit = pava_adjust(y, w);
        const auto ref = oracle::pava_minmax(y, w);
        double sy = 0, sf = 0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(fit[i] == doctest::Approx(ref[i]).epsilon(1e-12));
            if (i) CHECK(fit[i] >= fit[i - 1] - 1e-12);
            sy += w[i] * y[i];
            sf += w[i] * fit[i];
        }
        CHECK(sf == doctest::Approx(sy).epsilon(1e-12));
        const auto again = pava_adjust(fit, w);
        for (std::size_t i = 0; i < n; ++i) CHECK(again[i] == doctest::Approx(fit[i]).epsilon(1e-12));
    }
}

TEST_CASE("integer isotonic counts agree with the real-valued fit") {
    std::mt19937_64 g(8);
    for (int rep = 0; rep < 500; ++rep) {
        const std::size_t n = 1 + g() % 6;
        std::vector<int> x(n);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = x[i] = static_cast<int>(g() % 30);
        const auto iso = isotonic_counts(x);
        const auto fit = pava_adjust(y, ones(n));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(iso.block_sum[i] == doctest::Approx(fit[i] * iso.block_size[i]).epsilon(1e-12));
            CHECK(iso.ceil_at(i) == static_cast<int>(std::ceil(fit[i] - 1e-9)));
            CHECK(iso.floor_at(i) == static_cast<int>(std::floor(fit[i] + 1e-9)));
        }
    }
}

TEST_CASE("admissible set") {
    const Boundary b{26, 7, 6};
    TrialData d{{{26, 5, 8}, {26, 9, 10}}};
    auto out = admissible_set(d, b, {false, false});
    CHECK(out.admissible_set == std::vector<int>{0});
    CHECK(out.rejected_H0);
    CHECK(out.total_enrolled == 52);

    TrialData e{{{26, 8, 9}, {26, 6, 9}}};
    out = admissible_set(e, b, {true, false});
    CHECK(out.admissible_set == std::vector<int>{0, 1});
    out = admissible_set(e, b, {false, false});
    CHECK(out.admissible_set == std::vector<int>{1});

    TrialData z{{{26, 0, 0}, {26, 0, 0}, {26, 0, 0}}};
    out = admissible_set(z, b);
    CHECK(out.admissible_set.empty());
    CHECK_FALSE(out.rejected_H0);

    TrialData partial{{{26, 1, 8}, {13, 1, 4}}};
    CHECK_THROWS_AS(admissible_set(partial, b), TrialStateError);
    partial.arms[1].status = ArmStatus::stopped_futility;
    out = admissible_set(partial, b);
    CHECK(out.admissible_set == std::vector<int>{0});
    CHECK(out.total_enrolled == 39);

    TrialData bad{{{10, 11, 0}}};
    CHECK_THROWS_AS(admissible_set(bad, {10, 3, 3}), std::invalid_argument);
}

TEST_CASE("posterior exceedance") {
    CHECK(posterior_exceedance(0, 0, 0.5, 0.1, 0.1, Direction::above) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(posterior_exceedance(50, 50, 0.2, 0.1, 0.1, Direction::above) >= 0.999);
    const double v = posterior_exceedance(6, 10, 0.2, 0.1, 0.1, Direction::above);
    CHECK(v == doctest::Approx(oracle::beta_upper(0.2, 6.1, 4.1)).epsilon(1e-10));
    CHECK(posterior_exceedance(6, 10, 0.2, 0.1, 0.1, Direction::below) == doctest::Approx(1 - v).epsilon(1e-12));
    for (int x : {0, 3, 7})
        for (double t : {0.1, 0.35, 0.6})
            CHECK(posterior_exceedance(x, 12, t, 0.5, 0.5, Direction::above) ==
                  doctest::Approx(oracle::beta_upper(t, 0.5 + x, 0.5 + 12 - x)).epsilon(1e-9));
    CHECK_THROWS_AS(posterior_exceedance(3, 2, 0.2, 0.1, 0.1, Direction::above), std::invalid_argument);
    CHECK_THROWS_AS(posterior_exceedance(1, 2, 0.2, 0.0, 0.1, Direction::above), std::invalid_argument);
}

TEST_CASE("posterior exceedance is monotone") {
    for (int n : {5, 20, 47})
        for (double t : {0.2, 0.4}) {
            double prev = -1;
            for (int x = 0; x <= n; ++x) {
                const double p = posterior_exceedance(x, n, t, 0.1, 0.1, Direction::above);
                CHECK(p >= prev);
                if (prev < 1 - 1e-12) CHECK(p > prev);
                prev = p;
            }
            double prev_t = 2;
            for (double th = 0.05; th < 1; th += 0.05) {
                const double p = posterior_exceedance(n / 2, n, th, 0.1, 0.1, Direction::above);
                CHECK(p <= prev_t);
                if (p > 1e-300 && prev_t < 1 - 1e-12) CHECK(p < prev_t);
                prev_t = p;
            }
        }
}

TEST_CASE("interim decisions") {
    const InterimPolicy policy{{0.5}};
    CHECK(interim_decision({0, 0, 0}, kRates, policy) == InterimAction::proceed);
    CHECK(posterior_exceedance(10, 10, 0.2, 0.1, 0.1, Direction::above) > 0.95);
    CHECK(oracle::beta_upper(0.2, 10.1, 0.1) > 0.95);
    CHECK(interim_decision({10, 10, 5}, kRates, policy) == InterimAction::stop_safety);
    CHECK(oracle::beta_upper(0.4, 0.1, 10.1) < 0.05);
    CHECK(interim_decision({10, 1, 0}, kRates, policy) == InterimAction::stop_futility);
    // Safety is checked first.
    CHECK(interim_decision({10, 10, 0}, kRates, policy) == InterimAction::stop_safety);
    CHECK(interim_decision({10, 2, 4}, kRates, policy) == InterimAction::proceed);
}

TEST_CASE("looks") {
    CHECK(parse_looks("1/2") == std::vector<double>{0.5});
    const auto two = parse_looks("1/3, 2/3");
    REQUIRE(two.size() == 2);
    CHECK(two[0] == doctest::Approx(1.0 / 3));
    CHECK(parse_looks("0.25,0.75") == std::vector<double>{0.25, 0.75});
    CHECK_THROWS(parse_looks("1/0"));
    CHECK_THROWS(parse_looks("abc"));
    CHECK_THROWS((InterimPolicy{{1.5}}.validate()));
    CHECK_THROWS((InterimPolicy{{0.6, 0.3}}.validate()));
    CHECK(InterimPolicy{{0.5}}.look_sizes(47) == std::vector<int>{24});
    CHECK(InterimPolicy{{1.0 / 3, 2.0 / 3}}.look_sizes(47) == std::vector<int>{16, 31});
    CHECK(InterimPolicy{{0.1}}.look_sizes(4).empty());
}

TEST_CASE("simulate trial") {
    const Boundary b{47, 13, 14};
    Stream s(1, {0});
    const auto cfg = null_config(2, 1, 2, kRates);
    for (int r = 0; r < 50; ++r) {
        const auto out = simulate_trial(cfg, b, 0.5, kRates, nullptr, {}, s);
        CHECK(out.total_enrolled == 2 * 47);
    }

    // Every patient toxic and responding: arms stop for safety at the first look.
    DesignRates sure = kRates;
    HypothesisConfig all_bad{{HypothesisKind::null, 0, 0}, {{0.999999, 0.999999, DoseClass::toxic_efficacious},
                                                            {0.999999, 0.999999, DoseClass::toxic_efficacious}}};
    const InterimPolicy policy{{0.5}};
    const auto out = simulate_trial(all_bad, {20, 20, 0}, 0.999, sure, &policy, {}, s);
    CHECK(out.total_enrolled == 20);
    CHECK(out.stop_reasons == std::vector<ArmStatus>{ArmStatus::stopped_safety, ArmStatus::stopped_safety});
    CHECK(out.admissible_set.empty());
}

TEST_CASE("simulated selection frequency matches the exact power") {
    const Boundary b{47, 13, 14};
    const auto lfs = least_favorable_set(2, kRates)[1];
    const double exact = global_oc(b, 2, kRates, 0.5, PowerKind::I, EvalMode::exact(), DecisionRule::isotonic,
                                   Kind1Event::selection)
                             .per_lfs_power[1]
                             .value;
    Stream s(77, {1});
    const int reps = 10000;
    int hits = 0;
    for (int r = 0; r < reps; ++r) {
        const auto out = simulate_trial(lfs, b, 0.5, kRates, nullptr, {}, s);
        bool ok = !out.admissible_set.empty();
        for (int a : out.admissible_set) ok = ok && lfs.doses[a].cls == DoseClass::admissible;
        hits += ok;
    }
    CHECK(std::abs(hits / double(reps) - exact) <= 3 * std::sqrt(exact * (1 - exact) / reps));
}

TEST_CASE("operating characteristics with interim looks") {
    const Boundary b{47, 13, 14};
    const InterimPolicy weak{{0.5}, 0.9999, 0.9999};
    HypothesisConfig good{{HypothesisKind::alternative, 0, 2}, {{0.2, 0.4, DoseClass::admissible},
                                                                {0.2, 0.4, DoseClass::admissible}}};
    const auto w = simulate_oc_with_interim({good}, b, 0.5, kRates, weak, PowerKind::I, 20000, 3);
    CHECK(w[0].with_interim.expected_n == doctest::Approx(94).epsilon(0.01));
    CHECK(w[0].without_interim.expected_n == 94);

    const InterimPolicy one{{0.5}};
    const auto s6 = null_config(2, 2, 2, kRates);
    const auto r = simulate_oc_with_interim({s6}, b, 0.5, kRates, one, PowerKind::I, 20000, 3);
    CHECK(r[0].scenario == 6);
    CHECK(r[0].with_interim.expected_n < 94 - 5 * r[0].with_interim.expected_n_se);

    const auto again = simulate_oc_with_interim({s6}, b, 0.5, kRates, one, PowerKind::I, 20000, 3);
    CHECK(again[0].with_interim.estimate == r[0].with_interim.estimate);
    CHECK(again[0].with_interim.expected_n == r[0].with_interim.expected_n);
}
