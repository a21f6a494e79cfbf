// merit: command-line front end for the design engine.
//
// Exit status: 0 success, 1 infeasible design / theorem violation / failed
// re-validation, 2 invalid input.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "merit/config.hpp"

using namespace merit;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Overrides {
    std::string config;
    std::string mode;
    std::string reps;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
    std::string interim;
    std::optional<int> power_kind;
    std::string rule;
    std::optional<int> J;
    std::optional<double> alpha_star, beta_star, rho;
    std::optional<double> phi_T0, phi_T1, phi_E0, phi_E1;
    std::optional<int> n_max;
    std::optional<int> n, m_T, m_E;
    std::string scenarios;
};

std::int64_t parse_count(const std::string& text, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !(v >= 1.0) || v != std::floor(v) || v > 1e15)
        throw std::invalid_argument(fmt::format("{} must be a positive integer, got '{}'", what, text));
    return static_cast<std::int64_t>(v);
}

RunConfig build_config(const Overrides& o) {
    RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
    auto& s = cfg.spec;
    if (!o.mode.empty()) s.mode.request = parse_mode(o.mode);
    if (!o.reps.empty()) s.mode.replicates = parse_count(o.reps, "--reps");
    if (o.seed) s.mode.seed = *o.seed;
    if (!o.out.empty()) cfg.out = o.out;
    if (!o.format.empty()) cfg.format = o.format;
    if (!o.interim.empty()) cfg.interim.looks = parse_looks(o.interim);
    if (o.power_kind) s.power_kind = parse_power_kind(*o.power_kind);
    if (!o.rule.empty()) s.rule = parse_rule(o.rule);
    if (o.J) {
        s.J = *o.J;
        cfg.verify.J = {*o.J};
    }
    if (o.alpha_star) s.alpha_star = *o.alpha_star;
    if (o.beta_star) s.beta_star = *o.beta_star;
    if (o.rho) {
        s.rho = *o.rho;
        cfg.verify.rho = {*o.rho};
    }
    if (o.phi_T0) s.rates.phi_T0 = *o.phi_T0;
    if (o.phi_T1) s.rates.phi_T1 = *o.phi_T1;
    if (o.phi_E0) s.rates.phi_E0 = *o.phi_E0;
    if (o.phi_E1) s.rates.phi_E1 = *o.phi_E1;
    if (o.n_max) s.n_max = *o.n_max;
    if (o.n || o.m_T || o.m_E) {
        if (!(o.n && o.m_T && o.m_E)) throw std::invalid_argument("--n, --m-T and --m-E must be given together");
        cfg.boundary = Boundary{*o.n, *o.m_T, *o.m_E};
    }
    if (!o.scenarios.empty()) cfg.scenarios = parse_scenarios(o.scenarios);
    cfg.validate();
    return cfg;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument(fmt::format("cannot write '{}'", path));
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

  private:
    std::ofstream file_;
};

std::string prob(double v) { return fmt::format("{:.6f}", v); }

// RFC 4180 quoting for fields that contain a comma or a quote.
std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string kind_name(PowerKind k) { return k == PowerKind::I ? "I" : "II"; }

std::string rates_text(const DesignRates& r) {
    return fmt::format("(phi_T0, phi_T1, phi_E0, phi_E1) = ({}, {}, {}, {})", r.phi_T0, r.phi_T1, r.phi_E0,
                       r.phi_E1);
}

std::string mode_text(const OCResult& oc) {
    return oc.mode == EvalKind::exact ? "exact" : fmt::format("monte carlo, {} replicates", oc.replicates);
}

bool wanted(ScenarioSet set, const HypothesisLabel& label) {
    switch (set) {
        case ScenarioSet::all: return true;
        case ScenarioSet::nulls: return label.kind == HypothesisKind::null;
        case ScenarioSet::alternatives: return label.kind != HypothesisKind::null;
        case ScenarioSet::least_favorable: return label.kind != HypothesisKind::null && is_least_favorable(label);
    }
    return true;
}

void print_oc_rows(std::ostream& os, const OCResult& oc) {
    fmt::print(os, "  {:>8}  {:<10}  {:>10}  {:>9}\n", "scenario", "hypothesis", "value", "se");
    for (const auto& a : oc.per_null_alpha)
        fmt::print(os, "  {:>8}  {:<10}  {:>10}  {:>9}\n", a.scenario, a.label.to_string(), prob(a.value), prob(a.se));
    for (const auto& p : oc.per_lfs_power)
        fmt::print(os, "  {:>8}  {:<10}  {:>10}  {:>9}\n", p.scenario, p.label.to_string(), prob(p.value), prob(p.se));
}

int cmd_design(const RunConfig& cfg) {
    const auto& s = cfg.spec;
    const auto result = find_optimal_design(s);
    Output out(cfg.out);
    auto& os = out.stream();
    if (cfg.format == "csv") {
        fmt::print(os, "J,phi_T0,phi_T1,phi_E0,phi_E1,alpha_star,beta_star,power_kind,rho,rule,n,m_T,m_E,alpha,beta,optimal\n");
        auto row = [&](const Boundary& b, const OCResult& oc, bool optimal) {
            fmt::print(os, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", s.J, s.rates.phi_T0, s.rates.phi_T1,
                       s.rates.phi_E0, s.rates.phi_E1, s.alpha_star, s.beta_star, static_cast<int>(s.power_kind),
                       s.rho, to_string(s.rule), b.n, b.m_T, b.m_E, prob(oc.global_alpha), prob(oc.global_power),
                       optimal ? 1 : 0);
        };
        if (result.feasible)
            for (const auto& c : result.alternatives_at_n) row(c.boundary, c.oc, c.boundary == result.boundary);
        else
            row(result.boundary, result.oc, false);
    } else {
        fmt::print(os, "MERIT design, J = {}, {}, rho = {}\n", s.J, rates_text(s.rates), s.rho);
        fmt::print(os, "target: alpha* = {}, beta* = {} (power {}), rule {}, n_max {}\n", s.alpha_star, s.beta_star,
                   kind_name(s.power_kind), to_string(s.rule), s.n_max);
        const auto& b = result.boundary;
        if (result.feasible) {
            fmt::print(os, "optimal design: n = {}, m_T = {}, m_E = {}\n", b.n, b.m_T, b.m_E);
        } else {
            fmt::print(os, "no feasible design with n <= {}\n", s.n_max);
            fmt::print(os, "nearest miss: n = {}, m_T = {}, m_E = {}\n", b.n, b.m_T, b.m_E);
        }
        fmt::print(os, "global alpha = {}, global power {} = {} ({})\n", prob(result.oc.global_alpha),
                   kind_name(s.power_kind), prob(result.oc.global_power), mode_text(result.oc));
        print_oc_rows(os, result.oc);
        if (result.feasible) fmt::print(os, "feasible (m_T, m_E) pairs at n = {}: {}\n", b.n, result.alternatives_at_n.size());
    }
    return result.feasible ? kOk : kFail;
}

int cmd_evaluate(const RunConfig& cfg) {
    if (!cfg.boundary) throw std::invalid_argument("evaluate needs a boundary (config 'boundary' or --n/--m-T/--m-E)");
    const auto& s = cfg.spec;
    const auto& b = *cfg.boundary;
    const auto oc = global_oc(b, s.J, s.rates, s.rho, s.power_kind, s.mode, s.rule, s.event, true);
    Output out(cfg.out);
    auto& os = out.stream();
    const int expected_n = s.J * b.n;

    struct Row {
        const ScenarioValue* v;
        const char* type;
    };
    std::vector<Row> rows;
    for (const auto& a : oc.per_null_alpha)
        if (wanted(cfg.scenarios, a.label)) rows.push_back({&a, "alpha"});
    for (const auto& p : oc.per_alt_power)
        if (wanted(cfg.scenarios, p.label)) rows.push_back({&p, s.power_kind == PowerKind::I ? "power_I" : "power_II"});

    if (cfg.format == "csv") {
        fmt::print(os, "scenario,hypothesis,type,value,se,expected_n\n");
        for (const auto& r : rows)
            fmt::print(os, "{},{},{},{},{},{}\n", r.v->scenario, csv_field(r.v->label.to_string()), r.type, prob(r.v->value),
                       prob(r.v->se), expected_n);
        return kOk;
    }
    fmt::print(os, "MERIT evaluation of (n, m_T, m_E) = ({}, {}, {}), J = {}, {}, rho = {}\n", b.n, b.m_T, b.m_E,
               s.J, rates_text(s.rates), s.rho);
    fmt::print(os, "rule {}, {}\n", to_string(s.rule), mode_text(oc));
    fmt::print(os, "global alpha = {}, global power {} = {}\n", prob(oc.global_alpha), kind_name(s.power_kind),
               prob(oc.global_power));
    fmt::print(os, "  {:>8}  {:<10}  {:<8}  {:>10}  {:>9}\n", "scenario", "hypothesis", "type", "value", "se");
    for (const auto& r : rows)
        fmt::print(os, "  {:>8}  {:<10}  {:<8}  {:>10}  {:>9}\n", r.v->scenario, r.v->label.to_string(), r.type,
                   prob(r.v->value), prob(r.v->se));
    return kOk;
}

int cmd_simulate(const RunConfig& cfg) {
    if (!cfg.boundary) throw std::invalid_argument("simulate needs a boundary (config 'boundary' or --n/--m-T/--m-E)");
    const auto& s = cfg.spec;
    const auto& b = *cfg.boundary;
    std::vector<HypothesisConfig> scenarios;
    for (auto& c : enumerate_null(s.J, s.rates))
        if (wanted(cfg.scenarios, c.label)) scenarios.push_back(std::move(c));
    for (auto& c : enumerate_alternative(s.J, s.rates))
        if (wanted(cfg.scenarios, c.label)) scenarios.push_back(std::move(c));
    const auto res = simulate_oc_with_interim(scenarios, b, s.rho, s.rates, cfg.interim, s.power_kind,
                                              s.mode.replicates, s.mode.seed, cfg.isotonic);
    Output out(cfg.out);
    auto& os = out.stream();
    auto type = [&](const HypothesisConfig& c) {
        return c.is_null() ? "alpha" : (s.power_kind == PowerKind::I ? "power_I" : "power_II");
    };
    if (cfg.format == "csv") {
        fmt::print(os, "scenario,hypothesis,type,value_interim,se_interim,expected_n_interim,value_no_interim,"
                       "se_no_interim,expected_n_no_interim,delta_value,delta_expected_n\n");
        for (const auto& r : res)
            fmt::print(os, "{},{},{},{},{},{:.3f},{},{},{:.3f},{},{:.3f}\n", r.scenario,
                       csv_field(r.config.label.to_string()), type(r.config), prob(r.with_interim.estimate),
                       prob(r.with_interim.se),
                       r.with_interim.expected_n, prob(r.without_interim.estimate), prob(r.without_interim.se),
                       r.without_interim.expected_n, prob(r.with_interim.estimate - r.without_interim.estimate),
                       r.with_interim.expected_n - r.without_interim.expected_n);
        return kOk;
    }
    std::string looks;
    for (int k : cfg.interim.look_sizes(b.n)) looks += fmt::format("{}{}", looks.empty() ? "" : ", ", k);
    fmt::print(os, "MERIT interim simulation of (n, m_T, m_E) = ({}, {}, {}), J = {}, {}, rho = {}\n", b.n, b.m_T,
               b.m_E, s.J, rates_text(s.rates), s.rho);
    fmt::print(os, "looks after [{}] patients per arm, C_T = {}, C_E = {}, prior Beta({}, {}), {} replicates\n", looks,
               cfg.interim.C_T, cfg.interim.C_E, cfg.interim.prior_a, cfg.interim.prior_b, s.mode.replicates);
    fmt::print(os, "  {:>8}  {:<10}  {:<8}  {:>10}  {:>10}  {:>9}  {:>10}  {:>10}\n", "scenario", "hypothesis", "type",
               "interim", "no interim", "delta", "E[N] int", "E[N] none");
    for (const auto& r : res)
        fmt::print(os, "  {:>8}  {:<10}  {:<8}  {:>10}  {:>10}  {:>9}  {:>10.2f}  {:>10.2f}\n", r.scenario,
                   r.config.label.to_string(), type(r.config), prob(r.with_interim.estimate),
                   prob(r.without_interim.estimate), prob(r.with_interim.estimate - r.without_interim.estimate),
                   r.with_interim.expected_n, r.without_interim.expected_n);
    return kOk;
}

int cmd_verify(const RunConfig& cfg) {
    Output out(cfg.out);
    auto& os = out.stream();
    const bool csv = cfg.format == "csv";
    if (csv) fmt::print(os, "J,rho,n,m_T,m_E,hypothesis,beta_I,lfs_min_I,beta_II,lfs_min_II,violation\n");
    int total = 0;

    auto run = [&](int J, double rho, const std::vector<Boundary>& grid, bool detail) {
        const auto report = verify_theorem1(J, cfg.spec.rates, rho, grid);
        total += report.violations;
        for (const auto& r : report.rows) {
            const bool bad = r.violated[0] || r.violated[1];
            if (csv) {
                fmt::print(os, "{},{},{},{},{},{},{},{},{},{},{}\n", J, rho, r.boundary.n, r.boundary.m_T, r.boundary.m_E,
                           csv_field(r.label.to_string()), prob(r.beta[0]), prob(r.lfs_min[0]), prob(r.beta[1]),
                           prob(r.lfs_min[1]), bad ? 1 : 0);
            } else if (detail || bad) {
                fmt::print(os, "  {}{} at {}: beta_I {} (lfs min {}), beta_II {} (lfs min {})\n",
                           bad ? "VIOLATION " : "", r.label.to_string(), r.boundary.to_string(), prob(r.beta[0]),
                           prob(r.lfs_min[0]), prob(r.beta[1]), prob(r.lfs_min[1]));
            }
        }
        if (!csv)
            fmt::print(os, "J = {}, rho = {}, {} boundaries, {} rows: {} violations\n", J, rho, grid.size(),
                       report.rows.size(), report.violations);
    };

    std::optional<Boundary> single = cfg.boundary ? cfg.boundary : cfg.verify.single;
    for (int J : cfg.verify.J)
        for (double rho : cfg.verify.rho) {
            if (single) {
                run(J, rho, {*single}, true);
                continue;
            }
            for (int n : cfg.verify.n) run(J, rho, full_boundary_grid(n), false);
        }
    if (!csv) fmt::print(os, "total violations: {}\n", total);
    return total == 0 ? kOk : kFail;
}

int cmd_table2(const RunConfig& cfg) {
    Table2Options opt;
    opt.rho = cfg.spec.rho;
    opt.n_max = cfg.spec.n_max;
    opt.rule = cfg.spec.rule;
    opt.event = cfg.spec.event;
    opt.mode = cfg.spec.mode;
    opt.check_replicates = cfg.table2_check_replicates;
    const auto rows = reproduce_table2(cfg.table2, opt);
    if (rows.empty()) throw std::invalid_argument("no published cells match the table2 selection");

    Output out(cfg.out);
    auto& os = out.stream();
    int exact = 0, within = 0, revalidated = 0;
    for (const auto& r : rows) {
        exact += r.match == CellMatch::exact;
        within += r.match != CellMatch::mismatch;
        revalidated += r.revalidated;
    }
    if (cfg.format == "csv") {
        fmt::print(os, "phi_E0,phi_E1,J,power_kind,alpha_star,beta_star,published_n,published_m_T,published_m_E,"
                       "n,m_T,m_E,match,alpha,beta,se,revalidated\n");
        for (const auto& r : rows) {
            const auto& p = r.published;
            const auto& c = r.computed.boundary;
            fmt::print(os, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", p.phi_E0, p.phi_E1, p.J,
                       static_cast<int>(p.kind), p.alpha_star, p.beta_star, p.design.n, p.design.m_T, p.design.m_E,
                       c.n, c.m_T, c.m_E, to_string(r.match), prob(r.check_alpha), prob(r.check_power),
                       prob(r.check_se), r.revalidated ? 1 : 0);
        }
    } else {
        fmt::print(os, "{:>10}  {:>2}  {:>4}  {:>5}  {:>5}  {:>12}  {:>12}  {:<8}  {:>8}  {:>8}  {}\n", "phi_E", "J",
                   "kind", "a*", "b*", "published", "computed", "flag", "alpha", "power", "valid");
        for (const auto& r : rows) {
            const auto& p = r.published;
            const auto& c = r.computed.boundary;
            fmt::print(os, "{:>10}  {:>2}  {:>4}  {:>5}  {:>5}  {:>12}  {:>12}  {:<8}  {:>8.4f}  {:>8.4f}  {}\n",
                       fmt::format("({},{})", p.phi_E0, p.phi_E1), p.J, kind_name(p.kind), p.alpha_star, p.beta_star,
                       p.design.to_string(), r.computed.feasible ? c.to_string() : "infeasible", to_string(r.match),
                       r.check_alpha, r.check_power, r.revalidated ? "yes" : "NO");
        }
        fmt::print(os, "cells: {}, exact: {}, n within 1: {}, re-validated: {}\n", rows.size(), exact, within,
                   revalidated);
    }
    return revalidated == static_cast<int>(rows.size()) ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MERIT multiple-dose randomized phase II design engine"};
    app.require_subcommand(1);
    Overrides o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "YAML run configuration");
        sub->add_option("--mode", o.mode, "exact | mc | auto");
        sub->add_option("--reps", o.reps, "Monte Carlo replicates");
        sub->add_option("--seed", o.seed, "master random seed");
        sub->add_option("--out", o.out, "write the report to this file");
        sub->add_option("--format", o.format, "table | csv");
        sub->add_option("--interim", o.interim, "look fractions, e.g. 1/2 or 1/3,2/3");
        sub->add_option("--power-kind", o.power_kind, "1 or 2");
        sub->add_option("--rule", o.rule, "isotonic | threshold");
        sub->add_option("--J", o.J, "number of doses");
        sub->add_option("--alpha-star", o.alpha_star, "target global type I error");
        sub->add_option("--beta-star", o.beta_star, "target generalized power");
        sub->add_option("--rho", o.rho, "latent toxicity-efficacy correlation");
        sub->add_option("--phi-T0", o.phi_T0, "unacceptable toxicity rate");
        sub->add_option("--phi-T1", o.phi_T1, "acceptable toxicity rate");
        sub->add_option("--phi-E0", o.phi_E0, "unacceptable efficacy rate");
        sub->add_option("--phi-E1", o.phi_E1, "acceptable efficacy rate");
        sub->add_option("--n-max", o.n_max, "largest per-arm sample size searched");
        sub->add_option("--n", o.n, "per-arm sample size of the boundary");
        sub->add_option("--m-T", o.m_T, "toxicity boundary");
        sub->add_option("--m-E", o.m_E, "efficacy boundary");
        sub->add_option("--scenarios", o.scenarios, "all | null | alternative | lfs");
    };

    auto* design = app.add_subcommand("design", "find the optimal (n, m_T, m_E)");
    auto* evaluate = app.add_subcommand("evaluate", "per-scenario alpha and power of a boundary");
    auto* simulate = app.add_subcommand("simulate", "operating characteristics with and without interim looks");
    auto* verify = app.add_subcommand("verify-theorem", "check the least favorable set numerically");
    auto* table2 = app.add_subcommand("table2", "recompute the published design table");
    for (auto* sub : {design, evaluate, simulate, verify, table2}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const RunConfig cfg = build_config(o);
        if (*design) return cmd_design(cfg);
        if (*evaluate) return cmd_evaluate(cfg);
        if (*simulate) return cmd_simulate(cfg);
        if (*verify) return cmd_verify(cfg);
        if (*table2) return cmd_table2(cfg);
    } catch (const std::invalid_argument& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kUsage;
    } catch (const std::domain_error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kFail;
    }
    return kUsage;
}
