#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "merit/oc_engine.hpp"

using namespace merit;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(MERIT_BINARY) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (const auto got = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), got);
    const int raw = pclose(p);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells(1);
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cells.back() += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cells.back() += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                cells.emplace_back();
            } else {
                cells.back() += c;
            }
        }
        rows.push_back(cells);
    }
    return rows;
}

std::string temp_file(const std::string& name, const std::string& body) {
    const std::string path = std::string(MERIT_TEST_DIR) + "/" + name;
    std::ofstream(path) << body;
    return path;
}

const DesignRates kRates{0.4, 0.2, 0.2, 0.4};

}  // namespace

TEST_CASE("design report") {
    const auto r = run("design --phi-E0 0.1 --phi-E1 0.3 --alpha-star 0.1 --beta-star 0.6 --power-kind 1");
    CHECK(r.status == 0);
    CHECK(r.out.find("optimal design: n = 26, m_T = 7, m_E = 6") != std::string::npos);
}

TEST_CASE("design csv lists the feasible pairs at the optimum") {
    const auto r = run("design --phi-E0 0.1 --phi-E1 0.3 --alpha-star 0.1 --beta-star 0.6 --format csv");
    REQUIRE(r.status == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0].size() == 16);
    CHECK(rows[0][10] == "n");
    int optimal = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].size() == 16);
        CHECK(rows[i][10] == "26");
        optimal += rows[i][15] == "1";
    }
    CHECK(optimal == 1);
}

TEST_CASE("exit codes") {
    auto bad = run("design --alpha-star 1.5");
    CHECK(bad.status == 2);
    CHECK(bad.out.find("alpha_star") != std::string::npos);
    CHECK(run("design --no-such-flag").status == 2);
    CHECK(run("evaluate --n 10 --m-T 11 --m-E 2").status == 2);
    CHECK(run("evaluate --n 10").status == 2);
    CHECK(run("simulate --n 20 --m-T 5 --m-E 6 --interim 1.5").status == 2);
    CHECK(run("design --alpha-star 0.01 --beta-star 0.99 --n-max 5").status == 1);
    CHECK(run("evaluate --mode fast --n 10 --m-T 2 --m-E 3").status == 2);
    CHECK(run("evaluate --reps 1e6x --n 10 --m-T 2 --m-E 3").status == 2);

    const auto empty = temp_file("empty_pairs.yaml", "table2:\n  efficacy_pairs: []\n");
    CHECK(run("table2 --config " + empty).status == 2);
    const auto unknown = temp_file("unknown.yaml", "design:\n  colour: red\n");
    const auto u = run("design --config " + unknown);
    CHECK(u.status == 2);
    CHECK(u.out.find("design.colour") != std::string::npos);
}

TEST_CASE("evaluate rows and round trip") {
    const auto r = run("evaluate --n 47 --m-T 13 --m-E 14 --format csv");
    REQUIRE(r.status == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0] == std::vector<std::string>{"scenario", "hypothesis", "type", "value", "se", "expected_n"});
    CHECK(rows[1][1] == "H0(0,0)");
    int nulls = 0, alts = 0;
    const auto oc = global_oc({47, 13, 14}, 2, kRates, 0.5, PowerKind::I, EvalMode::exact(), DecisionRule::isotonic,
                              Kind1Event::selection, true);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double v = std::stod(rows[i][3]);
        const int scen = std::stoi(rows[i][0]);
        if (rows[i][2] == "alpha") {
            ++nulls;
            CHECK(v <= 0.1);
            for (const auto& a : oc.per_null_alpha)
                if (a.scenario == scen) CHECK(std::abs(a.value - v) <= 5e-7);
        } else {
            ++alts;
            CHECK(rows[i][2] == "power_I");
            for (const auto& a : oc.per_alt_power)
                if (a.scenario == scen) CHECK(std::abs(a.value - v) <= 5e-7);
        }
        CHECK(rows[i][5] == "94");
    }
    CHECK(nulls == 6);
    CHECK(alts == 3);
}

TEST_CASE("always-reject boundary") {
    const auto r = run("evaluate --n 12 --m-T 12 --m-E 0 --scenarios null --format csv");
    REQUIRE(r.status == 0);
    const auto rows = csv(r.out);
    CHECK(rows.size() == 7);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][3] == "1.000000");
}

TEST_CASE("exact and simulated evaluation agree") {
    const auto ex = csv(run("evaluate --n 47 --m-T 13 --m-E 14 --format csv").out);
    const auto mc = csv(run("evaluate --n 47 --m-T 13 --m-E 14 --format csv --mode mc --reps 1e6 --seed 11").out);
    REQUIRE(ex.size() == mc.size());
    for (std::size_t i = 1; i < ex.size(); ++i) {
        const double p = std::stod(ex[i][3]);
        const double se = std::sqrt(p * (1 - p) / 1e6);
        CAPTURE(ex[i][1]);
        CHECK(std::abs(std::stod(mc[i][3]) - p) <= 3 * se + 1e-6);
    }
}

TEST_CASE("simulate csv") {
    const auto r = run("simulate --n 30 --m-T 8 --m-E 9 --reps 2000 --interim 1/2 --format csv");
    REQUIRE(r.status == 0);
    const auto rows = csv(r.out);
    CHECK(rows.size() == 10);
    CHECK(rows[0].size() == 11);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][5]) <= 60.0);
}

TEST_CASE("verify theorem") {
    const auto r = run("verify-theorem --J 2 --n 47 --m-T 13 --m-E 14 --rho 0.5 --format csv");
    CHECK(r.status == 0);
    CHECK(csv(r.out).size() == 4);
    CHECK(run("verify-theorem --J 2").status == 0);
}
