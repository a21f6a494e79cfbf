#include "merit/design_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace merit {

namespace {

constexpr double kSlack = 1e-12;

void check_open_unit(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0))
        throw std::invalid_argument(fmt::format("{} must lie in (0, 1), got {}", name, v));
}

GridRequest request_at(const DesignSpec& spec, int n) {
    return {n, spec.J, spec.rates, spec.rho, spec.rule, spec.event, spec.mode};
}

std::vector<Candidate> scan(const OcGrid& grid, const Target& target, bool prune) {
    std::vector<Candidate> out;
    const int n = grid.n;
    for (int me = 0; me <= n; ++me) {
        for (int mt = 0; mt <= n; ++mt) {
            const double a = grid.global_alpha(mt, me);
            if (a > target.alpha_star + kSlack) {
                if (prune) break;
                continue;
            }
            if (grid.global_power(mt, me, target.kind) >= target.beta_star - kSlack)
                out.push_back({{n, mt, me}, grid.result(mt, me, target.kind)});
        }
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.boundary.m_T, a.boundary.m_E) < std::tie(b.boundary.m_T, b.boundary.m_E);
    });
    return out;
}

bool better(const Candidate& a, const Candidate& b) {
    if (a.oc.global_power != b.oc.global_power) return a.oc.global_power > b.oc.global_power;
    if (a.oc.global_alpha != b.oc.global_alpha) return a.oc.global_alpha < b.oc.global_alpha;
    if (a.boundary.m_E != b.boundary.m_E) return a.boundary.m_E < b.boundary.m_E;
    return a.boundary.m_T < b.boundary.m_T;
}

struct NearMiss {
    double shortfall = std::numeric_limits<double>::infinity();
    Boundary boundary;
    OCResult oc;
};

void track_near_miss(const OcGrid& grid, const Target& target, NearMiss& best) {
    for (int mt = 0; mt <= grid.n; ++mt)
        for (int me = 0; me <= grid.n; ++me) {
            const double s = std::max(0.0, grid.global_alpha(mt, me) - target.alpha_star) +
                             std::max(0.0, target.beta_star - grid.global_power(mt, me, target.kind));
            if (s < best.shortfall) {
                best.shortfall = s;
                best.boundary = {grid.n, mt, me};
                best.oc = grid.result(mt, me, target.kind);
            }
        }
}

Target target_of(const DesignSpec& spec) { return {spec.alpha_star, spec.beta_star, spec.power_kind}; }

}  // namespace

void DesignSpec::validate() const {
    rates.validate();
    if (J < 1) throw std::invalid_argument(fmt::format("J must be >= 1, got {}", J));
    check_open_unit(alpha_star, "alpha_star");
    check_open_unit(beta_star, "beta_star");
    if (!(std::abs(rho) < 1.0)) throw std::invalid_argument(fmt::format("rho must lie in (-1, 1), got {}", rho));
    if (n_max < 1) throw std::invalid_argument(fmt::format("n_max must be >= 1, got {}", n_max));
    if (mode.request != EvalMode::Request::exact && mode.replicates < 1)
        throw std::invalid_argument(fmt::format("replicates must be >= 1, got {}", mode.replicates));
}

std::vector<Candidate> feasible_boundaries(int n, const DesignSpec& spec) {
    spec.validate();
    if (n < 1 || n > spec.n_max)
        throw std::invalid_argument(fmt::format("n must lie in [1, n_max={}], got {}", spec.n_max, n));
    return scan(evaluate_grid(request_at(spec, n)), target_of(spec), true);
}

std::vector<Candidate> feasible_boundaries_naive(int n, const DesignSpec& spec) {
    spec.validate();
    if (n < 1 || n > spec.n_max)
        throw std::invalid_argument(fmt::format("n must lie in [1, n_max={}], got {}", spec.n_max, n));
    return scan(evaluate_grid(request_at(spec, n)), target_of(spec), false);
}

std::vector<DesignResult> find_optimal_designs(const DesignSpec& base, std::span<const Target> targets) {
    base.validate();
    for (const auto& t : targets) {
        check_open_unit(t.alpha_star, "alpha_star");
        check_open_unit(t.beta_star, "beta_star");
    }
    std::vector<DesignResult> results(targets.size());
    std::vector<bool> done(targets.size(), false);
    std::vector<NearMiss> misses(targets.size());
    std::size_t open = targets.size();

    for (int n = 1; n <= base.n_max && open > 0; ++n) {
        const OcGrid grid = evaluate_grid(request_at(base, n));
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (done[i]) continue;
            auto found = scan(grid, targets[i], true);
            if (found.empty()) {
                track_near_miss(grid, targets[i], misses[i]);
                continue;
            }
            const auto best = std::min_element(found.begin(), found.end(), better);
            results[i].boundary = best->boundary;
            results[i].oc = best->oc;
            results[i].feasible = true;
            results[i].alternatives_at_n = std::move(found);
            done[i] = true;
            --open;
        }
    }
    for (std::size_t i = 0; i < targets.size(); ++i)
        if (!done[i]) {
            results[i].boundary = misses[i].boundary;
            results[i].oc = misses[i].oc;
            results[i].feasible = false;
        }
    return results;
}

DesignResult find_optimal_design(const DesignSpec& spec) {
    const Target t = target_of(spec);
    return find_optimal_designs(spec, std::span<const Target>(&t, 1)).front();
}

std::vector<CurvePoint> sample_size_curve(const DesignSpec& spec, std::span<const double> alpha_grid) {
    if (alpha_grid.empty()) throw std::invalid_argument("alpha grid must not be empty");
    std::vector<Target> targets;
    for (double a : alpha_grid) targets.push_back({a, spec.beta_star, spec.power_kind});
    const auto results = find_optimal_designs(spec, targets);
    std::vector<CurvePoint> out;
    for (std::size_t i = 0; i < results.size(); ++i)
        out.push_back({alpha_grid[i], results[i].feasible ? std::optional<int>(results[i].boundary.n)
                                                          : std::nullopt});
    return out;
}

std::string to_string(CellMatch m) {
    switch (m) {
        case CellMatch::exact: return "match";
        case CellMatch::within_one: return "n+-1";
        case CellMatch::mismatch: return "mismatch";
    }
    return "?";
}

std::vector<Table2Row> reproduce_table2(const Table2Filter& filter, const Table2Options& options) {
    auto selected = [&](const PublishedCell& c) {
        const bool pair_ok =
            filter.efficacy_pairs.empty() ||
            std::any_of(filter.efficacy_pairs.begin(), filter.efficacy_pairs.end(), [&](const auto& p) {
                return std::abs(p.first - c.phi_E0) < 1e-9 && std::abs(p.second - c.phi_E1) < 1e-9;
            });
        const bool J_ok = filter.J.empty() || std::find(filter.J.begin(), filter.J.end(), c.J) != filter.J.end();
        return pair_ok && J_ok;
    };

    // Cells sharing (phi_E, J) share every OC grid.
    std::map<std::tuple<double, double, int>, std::vector<PublishedCell>> groups;
    for (const auto& c : published_table2())
        if (selected(c)) groups[{c.phi_E0, c.phi_E1, c.J}].push_back(c);

    std::vector<Table2Row> rows;
    for (const auto& [key, cells] : groups) {
        DesignSpec base;
        base.rates = {0.4, 0.2, std::get<0>(key), std::get<1>(key)};
        base.J = std::get<2>(key);
        base.rho = options.rho;
        base.n_max = options.n_max;
        base.rule = options.rule;
        base.event = options.event;
        base.mode = options.mode;

        std::vector<Target> targets;
        for (const auto& c : cells) targets.push_back({c.alpha_star, c.beta_star, c.kind});
        const auto results = find_optimal_designs(base, targets);

        std::map<int, OcGrid> checks;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            Table2Row row{cells[i], results[i]};
            const auto& b = row.computed.boundary;
            if (row.computed.feasible) {
                if (b == cells[i].design) row.match = CellMatch::exact;
                else if (std::abs(b.n - cells[i].design.n) <= 1) row.match = CellMatch::within_one;

                auto it = checks.find(b.n);
                if (it == checks.end()) {
                    GridRequest req{b.n, base.J, base.rates, base.rho, base.rule, base.event, EvalMode::exact()};
                    if (!exact_within_budget(req))
                        req.mode = EvalMode::monte_carlo(options.check_replicates,
                                                         options.mode.seed ^ 0x9e3779b97f4a7c15ULL);
                    it = checks.emplace(b.n, evaluate_grid(req)).first;
                }
                const OCResult oc = it->second.result(b.m_T, b.m_E, cells[i].kind);
                row.check_alpha = oc.global_alpha;
                row.check_power = oc.global_power;
                row.check_se = oc.mc_standard_error.value_or(0.0);
                const double tol = 3.0 * row.check_se + kSlack;
                row.revalidated = oc.global_alpha <= cells[i].alpha_star + tol &&
                                  oc.global_power >= cells[i].beta_star - tol;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace merit
