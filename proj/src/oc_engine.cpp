#include "merit/oc_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <fmt/format.h>

#include "merit/copula_binary.hpp"
#include "merit/parallel.hpp"

namespace merit {

namespace {

// Enumeration work is counted as outcome visits times 2^J (the subsets
// scored per visit).
constexpr double kSoftBudget = 1e9;    // automatic mode enumerates up to here
constexpr double kHardBudget = 5e11;   // exact mode refuses beyond this
constexpr double kDroppedMass = 1e-13; // per-arm mass discarded from enumeration
constexpr std::int64_t kBlock = 10000; // MC replicates per substream
constexpr int kMaxArmsEnumerated = 12;
constexpr int kMaxArms = 30;

bool is_toxic(DoseClass c) {
    return c == DoseClass::toxic_futile || c == DoseClass::toxic_efficacious;
}

void require_null(const HypothesisConfig& config) {
    if (!config.is_null())
        throw std::invalid_argument(
            fmt::format("type I error needs a null configuration, got {}", config.label.to_string()));
}

void require_alternative(const HypothesisConfig& config) {
    if (config.is_null() || config.num_admissible() == 0)
        throw std::invalid_argument(
            fmt::format("power needs an alternative configuration, got {}", config.label.to_string()));
}

// Per-arm exact quantities at a fixed n, shared by all boundaries.
struct ArmTable {
    JointCounts counts;
    std::vector<double> tox_above;  // Pr(n_T > m), m = 0..n
    std::vector<double> eff_below;  // Pr(n_E < m), m = 0..n

    ArmTable(int n, const DoseRates& d, double rho)
        : counts(n, cell_probabilities(d.pi_T, d.pi_E, rho)) {
        tox_above.resize(static_cast<std::size_t>(n) + 1);
        eff_below.resize(static_cast<std::size_t>(n) + 1);
        for (int m = 0; m <= n; ++m) {
            tox_above[m] = marginal_tail(n, m, d.pi_T, TailSide::upper);
            eff_below[m] = m == 0 ? 0.0 : marginal_tail(n, m - 1, d.pi_E, TailSide::lower);
        }
    }
};

class TableCache {
  public:
    TableCache(int n, double rho) : n_(n), rho_(rho) {}

    const ArmTable& get(const DoseRates& d) {
        const auto key = std::make_pair(d.pi_T, d.pi_E);
        auto it = tables_.find(key);
        if (it == tables_.end())
            it = tables_.emplace(key, std::make_unique<ArmTable>(n_, d, rho_)).first;
        return *it->second;
    }

  private:
    int n_;
    double rho_;
    std::map<std::pair<double, double>, std::unique_ptr<ArmTable>> tables_;
};

double null_formula(const HypothesisConfig& cfg, TableCache& cache, int m_T, int m_E) {
    double none = 1.0;
    for (const auto& d : cfg.doses) none *= 1.0 - cache.get(d).counts.tail(m_T, m_E);
    return std::clamp(1.0 - none, 0.0, 1.0);
}

double power_formula(const HypothesisConfig& cfg, TableCache& cache, int m_T, int m_E,
                     PowerKind kind, Kind1Event event) {
    double none_adm = 1.0;
    double none_other = 1.0;
    double factors = 1.0;
    for (const auto& d : cfg.doses) {
        const auto& t = cache.get(d);
        const double q = t.counts.tail(m_T, m_E);
        if (d.cls == DoseClass::admissible) {
            none_adm *= 1.0 - q;
        } else {
            none_other *= 1.0 - q;
            if (d.cls == DoseClass::safe_futile) factors *= t.eff_below[m_E];
            if (is_toxic(d.cls)) factors *= t.tox_above[m_T];
        }
    }
    double v = 1.0 - none_adm;
    if (kind == PowerKind::I) {
        // selection: Pr(no other arm accepted) - Pr(no arm accepted)
        v = event == Kind1Event::factor ? factors * v : none_other * (1.0 - none_adm);
    }
    return std::clamp(v, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Outcome accumulation. Every joint outcome of the J arms yields, per arm, the
// smallest m_T accepting its toxicity (lo) and the largest m_E accepting its
// efficacy (hi). The set of boundaries where an event holds is a union of
// rectangles in the (m_T, m_E) plane; each rectangle is stored as four signed
// corner masses and a final 2-D prefix sum turns masses into probabilities.

template <class T>
class CornerGrid {
  public:
    explicit CornerGrid(int n) : n_(n), mass_(static_cast<std::size_t>(n + 1) * (n + 1), T{}) {}

    // Region m_T >= x, m_E <= y.
    void quad(int x, int y, T w) {
        if (x > n_ || y < 0) return;
        mass_[static_cast<std::size_t>(std::max(x, 0)) * (n_ + 1) + std::min(y, n_)] += w;
    }
    // Region x0 <= m_T <= x1, y0 <= m_E <= y1.
    void rect(int x0, int x1, int y0, int y1, T w) {
        x0 = std::max(x0, 0);
        x1 = std::min(x1, n_);
        y0 = std::max(y0, 0);
        y1 = std::min(y1, n_);
        if (x0 > x1 || y0 > y1) return;
        quad(x0, y1, w);
        quad(x1 + 1, y1, -w);
        quad(x0, y0 - 1, -w);
        quad(x1 + 1, y0 - 1, w);
    }
    void add(const CornerGrid& other) {
        for (std::size_t i = 0; i < mass_.size(); ++i) mass_[i] += other.mass_[i];
    }
    // value(m_T, m_E) = sum of masses at x <= m_T, y >= m_E.
    std::vector<double> finish() const {
        const auto side = static_cast<std::size_t>(n_ + 1);
        std::vector<double> out(side * side);
        std::vector<T> col(side, T{});
        for (std::size_t x = 0; x < side; ++x) {
            T run{};
            for (std::size_t y = side; y-- > 0;) {
                run += mass_[x * side + y];
                col[y] += run;
                out[x * side + y] = static_cast<double>(col[y]);
            }
        }
        return out;
    }

  private:
    int n_;
    std::vector<T> mass_;
};

struct Job {
    HypothesisConfig config;
    bool null = true;
    unsigned all = 0;
    unsigned adm = 0;
    unsigned other = 0;
    unsigned toxic = 0;
    unsigned futile = 0;
    std::uint64_t stream_id = 0;
};

Job make_job(const HypothesisConfig& cfg, std::uint64_t stream_id) {
    Job job{cfg, cfg.is_null(), 0, 0, 0, 0, 0, stream_id};
    for (int j = 0; j < cfg.num_doses(); ++j) {
        const unsigned bit = 1u << j;
        const auto cls = cfg.doses[j].cls;
        job.all |= bit;
        if (cls == DoseClass::admissible) job.adm |= bit;
        else job.other |= bit;
        if (is_toxic(cls)) job.toxic |= bit;
        if (cls == DoseClass::safe_futile) job.futile |= bit;
    }
    return job;
}

// Accumulators for one job: one grid for a null, kind I and kind II for a power job.
template <class T>
struct JobGrids {
    std::vector<CornerGrid<T>> grids;
    JobGrids(int n, bool null) : grids(null ? 1 : 2, CornerGrid<T>(n)) {}
};

template <class T>
class OutcomeScorer {
  public:
    OutcomeScorer(int n, int J, DecisionRule rule, Kind1Event event)
        : n_(n), J_(J), rule_(rule), event_(event), lo_(J), hi_(J),
          max_lo_(std::size_t{1} << J), min_hi_(std::size_t{1} << J) {}

    void score(const Job& job, const int* t, const int* e, T w, JobGrids<T>& out) {
        bounds(t, e);
        if (job.null) {
            union_of(job.all, n_, 0, w, out.grids[0]);
            return;
        }
        union_of(job.adm, n_, 0, w, out.grids[1]);
        if (event_ == Kind1Event::selection) {
            union_of(job.all, n_, 0, w, out.grids[0]);
            if (job.other) union_of(job.other, n_, 0, -w, out.grids[0]);
        } else {
            int cap_T = n_;
            int cap_E = 0;
            for (int j = 0; j < J_; ++j) {
                if (job.toxic >> j & 1u) cap_T = std::min(cap_T, lo_[j] - 1);
                if (job.futile >> j & 1u) cap_E = std::max(cap_E, hi_[j] + 1);
            }
            union_of(job.adm, cap_T, cap_E, w, out.grids[0]);
        }
    }

  private:
    void bounds(const int* t, const int* e) {
        if (rule_ == DecisionRule::threshold) {
            for (int j = 0; j < J_; ++j) {
                lo_[j] = t[j];
                hi_[j] = e[j];
            }
        } else {
            pooled(t, lo_.data(), true);
            pooled(e, hi_.data(), false);
        }
        max_lo_[0] = -1;
        min_hi_[0] = n_ + 1;
        for (std::size_t s = 1; s < max_lo_.size(); ++s) {
            const int j = std::countr_zero(s);
            const std::size_t rest = s & (s - 1);
            max_lo_[s] = std::max(max_lo_[rest], lo_[j]);
            min_hi_[s] = std::min(min_hi_[rest], hi_[j]);
        }
    }

    // Equal-weight PAVA on integer counts without allocation; writes the
    // ceiling (up) or floor of each fitted value.
    void pooled(const int* x, int* out, bool up) const {
        int sum[kMaxArms];
        int size[kMaxArms];
        int top = 0;
        for (int j = 0; j < J_; ++j) {
            sum[top] = x[j];
            size[top] = 1;
            ++top;
            while (top > 1 && static_cast<long long>(sum[top - 2]) * size[top - 1] >
                                  static_cast<long long>(sum[top - 1]) * size[top - 2]) {
                sum[top - 2] += sum[top - 1];
                size[top - 2] += size[top - 1];
                --top;
            }
        }
        int j = 0;
        for (int b = 0; b < top; ++b) {
            const int v = up ? (sum[b] + size[b] - 1) / size[b] : sum[b] / size[b];
            for (int k = 0; k < size[b]; ++k) out[j++] = v;
        }
    }

    // Inclusion-exclusion over the nonempty subsets of `mask`, clipped to
    // m_T <= cap_T and m_E >= cap_E.
    void union_of(unsigned mask, int cap_T, int cap_E, T w, CornerGrid<T>& grid) {
        const bool clipped = cap_T < n_ || cap_E > 0;
        for (unsigned s = mask; s != 0; s = (s - 1) & mask) {
            const T sw = (std::popcount(s) & 1) ? w : -w;
            if (clipped) grid.rect(max_lo_[s], cap_T, cap_E, min_hi_[s], sw);
            else grid.quad(max_lo_[s], min_hi_[s], sw);
        }
    }

    int n_;
    int J_;
    DecisionRule rule_;
    Kind1Event event_;
    std::vector<int> lo_, hi_, max_lo_, min_hi_;
};

struct Support {
    std::vector<int> t, e;
    std::vector<double> p;
};

Support support_of(const JointCounts& counts) {
    const int n = counts.n();
    std::vector<std::pair<double, int>> cells;
    cells.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int i = 0; i < (n + 1) * (n + 1); ++i) cells.emplace_back(counts.pmf_table()[i], i);
    std::sort(cells.begin(), cells.end());
    double dropped = 0.0;
    std::size_t first = 0;
    while (first < cells.size() && dropped + cells[first].first <= kDroppedMass)
        dropped += cells[first++].first;
    Support s;
    std::sort(cells.begin() + static_cast<std::ptrdiff_t>(first), cells.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    for (std::size_t i = first; i < cells.size(); ++i) {
        s.t.push_back(cells[i].second / (n + 1));
        s.e.push_back(cells[i].second % (n + 1));
        s.p.push_back(cells[i].first);
    }
    return s;
}

std::vector<HypothesisConfig> power_configs(const GridRequest& req) {
    return req.all_alternatives ? enumerate_alternative(req.J, req.rates)
                                : least_favorable_set(req.J, req.rates);
}

// Stream ids follow the standard scenario numbers so a configuration sees
// the same draws whichever set it is evaluated in.
std::vector<Job> make_jobs(const GridRequest& req) {
    std::vector<Job> jobs;
    for (const auto& c : enumerate_null(req.J, req.rates))
        jobs.push_back(make_job(c, static_cast<std::uint64_t>(scenario_number(c.label, req.J))));
    for (const auto& c : power_configs(req))
        jobs.push_back(make_job(c, static_cast<std::uint64_t>(scenario_number(c.label, req.J))));
    return jobs;
}

double enumeration_work(const GridRequest& req, TableCache& cache) {
    std::map<std::pair<double, double>, double> sizes;
    double total = 0.0;
    for (const auto& job : make_jobs(req)) {
        double w = 1.0;
        for (const auto& d : job.config.doses) {
            auto key = std::make_pair(d.pi_T, d.pi_E);
            auto it = sizes.find(key);
            if (it == sizes.end())
                it = sizes.emplace(key, static_cast<double>(support_of(cache.get(d).counts).p.size())).first;
            w *= it->second;
        }
        total += w;
    }
    return total * std::ldexp(1.0, req.J);
}

void store(ScenarioGrid& out, std::vector<double> values, std::int64_t reps) {
    for (auto& v : values) v = std::clamp(v, 0.0, 1.0);
    if (reps > 0) {
        out.se.resize(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            out.se[i] = std::sqrt(values[i] * (1.0 - values[i]) / static_cast<double>(reps));
    }
    out.value = std::move(values);
}

OcGrid formula_grid(const GridRequest& req, TableCache& cache) {
    OcGrid g;
    g.n = req.n;
    g.J = req.J;
    const int n = req.n;
    const auto cells = static_cast<std::size_t>(n + 1) * (n + 1);
    for (const auto& cfg : enumerate_null(req.J, req.rates)) {
        std::vector<double> v(cells);
        for (int mt = 0; mt <= n; ++mt)
            for (int me = 0; me <= n; ++me) v[g.index(mt, me)] = null_formula(cfg, cache, mt, me);
        g.nulls.push_back({cfg, {}, {}});
        store(g.nulls.back(), std::move(v), 0);
    }
    for (int k = 0; k < 2; ++k) {
        const auto kind = k == 0 ? PowerKind::I : PowerKind::II;
        for (const auto& cfg : power_configs(req)) {
            std::vector<double> v(cells);
            for (int mt = 0; mt <= n; ++mt)
                for (int me = 0; me <= n; ++me)
                    v[g.index(mt, me)] = power_formula(cfg, cache, mt, me, kind, req.event);
            g.power[k].push_back({cfg, {}, {}});
            store(g.power[k].back(), std::move(v), 0);
        }
    }
    return g;
}

template <class T>
void collect(OcGrid& g, const std::vector<Job>& jobs, std::vector<JobGrids<T>>& acc,
             std::int64_t reps) {
    auto finish = [reps](const CornerGrid<T>& grid) {
        auto v = grid.finish();
        if (reps > 0)
            for (auto& x : v) x /= static_cast<double>(reps);
        return v;
    };
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (jobs[i].null) {
            g.nulls.push_back({jobs[i].config, {}, {}});
            store(g.nulls.back(), finish(acc[i].grids[0]), reps);
            continue;
        }
        for (int k = 0; k < 2; ++k) {
            g.power[k].push_back({jobs[i].config, {}, {}});
            store(g.power[k].back(), finish(acc[i].grids[k]), reps);
        }
    }
}

OcGrid enumerate_grid(const GridRequest& req, TableCache& cache) {
    if (req.J > kMaxArmsEnumerated)
        throw std::domain_error("exact enumeration supports at most 12 arms");
    const int n = req.n;
    const int J = req.J;
    const auto jobs = make_jobs(req);

    // Fixed partition of each job by the first arm's outcome; chunks are
    // reduced in index order so results do not depend on scheduling.
    constexpr std::size_t kChunks = 16;
    struct Task {
        std::size_t job;
        std::size_t chunk;
    };
    std::vector<Task> tasks;
    for (std::size_t j = 0; j < jobs.size(); ++j)
        for (std::size_t c = 0; c < kChunks; ++c) tasks.push_back({j, c});

    std::vector<std::vector<const Support*>> supports(jobs.size());
    std::map<std::pair<double, double>, Support> support_store;
    for (std::size_t j = 0; j < jobs.size(); ++j)
        for (const auto& d : jobs[j].config.doses) {
            auto key = std::make_pair(d.pi_T, d.pi_E);
            auto it = support_store.find(key);
            if (it == support_store.end())
                it = support_store.emplace(key, support_of(cache.get(d).counts)).first;
            supports[j].push_back(&it->second);
        }

    std::vector<std::unique_ptr<JobGrids<double>>> partial(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t ti) {
        const auto& job = jobs[tasks[ti].job];
        const auto& sup = supports[tasks[ti].job];
        auto out = std::make_unique<JobGrids<double>>(n, job.null);
        OutcomeScorer<double> scorer(n, J, req.rule, req.event);
        std::vector<int> t(J), e(J);
        const std::size_t first = sup[0]->p.size();
        const std::size_t lo = first * tasks[ti].chunk / kChunks;
        const std::size_t hi = first * (tasks[ti].chunk + 1) / kChunks;

        auto recurse = [&](auto&& self, int arm, double w) -> void {
            if (arm == J) {
                scorer.score(job, t.data(), e.data(), w, *out);
                return;
            }
            const Support& s = *sup[arm];
            for (std::size_t i = 0; i < s.p.size(); ++i) {
                t[arm] = s.t[i];
                e[arm] = s.e[i];
                self(self, arm + 1, w * s.p[i]);
            }
        };
        for (std::size_t i = lo; i < hi; ++i) {
            t[0] = sup[0]->t[i];
            e[0] = sup[0]->e[i];
            recurse(recurse, 1, sup[0]->p[i]);
        }
        partial[ti] = std::move(out);
    });

    std::vector<JobGrids<double>> acc;
    for (const auto& job : jobs) acc.emplace_back(n, job.null);
    for (std::size_t ti = 0; ti < tasks.size(); ++ti)
        for (std::size_t k = 0; k < acc[tasks[ti].job].grids.size(); ++k)
            acc[tasks[ti].job].grids[k].add(partial[ti]->grids[k]);

    OcGrid g;
    g.n = n;
    g.J = J;
    collect(g, jobs, acc, 0);
    return g;
}

OcGrid monte_carlo_grid(const GridRequest& req, TableCache& cache) {
    if (req.mode.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (req.J > kMaxArms) throw std::domain_error("Monte Carlo evaluation supports at most 30 arms");
    const int n = req.n;
    const int J = req.J;
    const auto jobs = make_jobs(req);
    const std::int64_t reps = req.mode.replicates;
    const std::int64_t blocks = (reps + kBlock - 1) / kBlock;

    std::map<std::pair<double, double>, std::unique_ptr<CountSampler>> samplers;
    std::vector<std::vector<const CountSampler*>> arm_samplers(jobs.size());
    for (std::size_t j = 0; j < jobs.size(); ++j)
        for (const auto& d : jobs[j].config.doses) {
            auto key = std::make_pair(d.pi_T, d.pi_E);
            auto it = samplers.find(key);
            if (it == samplers.end())
                it = samplers.emplace(key, std::make_unique<CountSampler>(cache.get(d).counts)).first;
            arm_samplers[j].push_back(it->second.get());
        }

    std::vector<JobGrids<std::int64_t>> acc;
    for (const auto& job : jobs) acc.emplace_back(n, job.null);
    std::vector<std::mutex> locks(jobs.size());

    const auto tasks = jobs.size() * static_cast<std::size_t>(blocks);
    parallel_for(tasks, [&](std::size_t ti) {
        const std::size_t j = ti / static_cast<std::size_t>(blocks);
        const auto block = static_cast<std::int64_t>(ti % static_cast<std::size_t>(blocks));
        const auto& job = jobs[j];
        const std::int64_t count = std::min(kBlock, reps - block * kBlock);
        Stream stream(req.mode.seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(J),
                                      job.stream_id, static_cast<std::uint64_t>(block)});
        JobGrids<std::int64_t> local(n, job.null);
        OutcomeScorer<std::int64_t> scorer(n, J, req.rule, req.event);
        std::vector<int> t(J), e(J);
        for (std::int64_t r = 0; r < count; ++r) {
            for (int a = 0; a < J; ++a) {
                const auto c = arm_samplers[j][a]->draw(stream);
                t[a] = c.n_T;
                e[a] = c.n_E;
            }
            scorer.score(job, t.data(), e.data(), 1, local);
        }
        std::lock_guard lock(locks[j]);
        for (std::size_t k = 0; k < local.grids.size(); ++k) acc[j].grids[k].add(local.grids[k]);
    });

    OcGrid g;
    g.n = n;
    g.J = J;
    g.mode = EvalKind::monte_carlo;
    g.replicates = reps;
    collect(g, jobs, acc, reps);
    return g;
}

std::vector<ScenarioValue> scenario_values(const std::vector<ScenarioGrid>& grids, std::size_t idx,
                                           int J) {
    std::vector<ScenarioValue> out;
    for (const auto& s : grids)
        out.push_back({s.config.label, scenario_number(s.config.label, J), s.value[idx],
                       s.se.empty() ? 0.0 : s.se[idx]});
    return out;
}

OCResult summarize(std::vector<ScenarioValue> alphas, std::vector<ScenarioValue> powers,
                   PowerKind kind, EvalKind mode, std::int64_t reps) {
    OCResult r;
    r.kind = kind;
    r.mode = mode;
    r.replicates = mode == EvalKind::exact ? 0 : reps;
    std::vector<ScenarioValue> lfs;
    const bool all_alts = std::any_of(powers.begin(), powers.end(), [](const ScenarioValue& v) {
        return v.label.kind == HypothesisKind::alternative;
    });
    for (const auto& p : powers) {
        if (!is_least_favorable(p.label)) continue;
        lfs.push_back(p);
        if (p.label.kind == HypothesisKind::alternative)
            lfs.back().label = {HypothesisKind::least_favorable, p.label.second, 0};
    }
    const ScenarioValue* worst_alpha = nullptr;
    const ScenarioValue* worst_power = nullptr;
    for (const auto& a : alphas)
        if (!worst_alpha || a.value > worst_alpha->value) worst_alpha = &a;
    for (const auto& p : lfs)
        if (!worst_power || p.value < worst_power->value) worst_power = &p;
    r.global_alpha = worst_alpha ? worst_alpha->value : 0.0;
    r.global_power = worst_power ? worst_power->value : 1.0;
    if (mode == EvalKind::monte_carlo)
        r.mc_standard_error = std::max(worst_alpha ? worst_alpha->se : 0.0,
                                       worst_power ? worst_power->se : 0.0);
    r.per_null_alpha = std::move(alphas);
    r.per_lfs_power = std::move(lfs);
    if (all_alts) r.per_alt_power = std::move(powers);
    return r;
}

}  // namespace

void Boundary::validate() const {
    if (n < 1) throw std::invalid_argument(fmt::format("boundary n must be >= 1, got {}", n));
    if (m_T < 0 || m_T > n)
        throw std::invalid_argument(fmt::format("boundary m_T must lie in [0, n={}], got {}", n, m_T));
    if (m_E < 0 || m_E > n)
        throw std::invalid_argument(fmt::format("boundary m_E must lie in [0, n={}], got {}", n, m_E));
}

std::string Boundary::to_string() const { return fmt::format("({}, {}, {})", n, m_T, m_E); }

double arm_acceptance(double pi_T, double pi_E, double rho, const Boundary& b) {
    b.validate();
    return JointCounts(b.n, cell_probabilities(pi_T, pi_E, rho)).tail(b.m_T, b.m_E);
}

double type1_error(const HypothesisConfig& config, double rho, const Boundary& b) {
    require_null(config);
    b.validate();
    TableCache cache(b.n, rho);
    return null_formula(config, cache, b.m_T, b.m_E);
}

double power(const HypothesisConfig& config, double rho, const Boundary& b, PowerKind kind) {
    require_alternative(config);
    b.validate();
    TableCache cache(b.n, rho);
    return power_formula(config, cache, b.m_T, b.m_E, kind, Kind1Event::factor);
}

bool is_least_favorable(const HypothesisLabel& label) {
    return label.kind == HypothesisKind::least_favorable ||
           (label.kind == HypothesisKind::alternative && label.second - label.first == 1);
}

double OcGrid::global_alpha(int m_T, int m_E) const {
    double v = 0.0;
    for (const auto& s : nulls) v = std::max(v, s.value[index(m_T, m_E)]);
    return v;
}

double OcGrid::global_power(int m_T, int m_E, PowerKind kind) const {
    double v = 1.0;
    for (const auto& s : power[static_cast<int>(kind) - 1])
        if (is_least_favorable(s.config.label)) v = std::min(v, s.value[index(m_T, m_E)]);
    return v;
}

OCResult OcGrid::result(int m_T, int m_E, PowerKind kind) const {
    const auto idx = index(m_T, m_E);
    return summarize(scenario_values(nulls, idx, J),
                     scenario_values(power[static_cast<int>(kind) - 1], idx, J), kind, mode,
                     replicates);
}

bool exact_within_budget(const GridRequest& req) {
    if (req.rule == DecisionRule::threshold && !req.force_enumeration) return true;
    TableCache cache(req.n, req.rho);
    return enumeration_work(req, cache) <= kSoftBudget;
}

OcGrid evaluate_grid(const GridRequest& req) {
    if (req.J < 1) throw std::invalid_argument("J must be >= 1");
    if (req.n < 1) throw std::invalid_argument("n must be >= 1");
    req.rates.validate();
    TableCache cache(req.n, req.rho);

    using R = EvalMode::Request;
    if (req.mode.request == R::monte_carlo) return monte_carlo_grid(req, cache);
    if (req.rule == DecisionRule::threshold && !req.force_enumeration) return formula_grid(req, cache);

    const double work = enumeration_work(req, cache);
    if (req.mode.request == R::automatic && work > kSoftBudget) return monte_carlo_grid(req, cache);
    if (work > kHardBudget)
        throw std::domain_error(fmt::format(
            "exact isotonic evaluation at n={}, J={} needs ~{:.2g} work units; use Monte Carlo",
            req.n, req.J, work));
    return enumerate_grid(req, cache);
}

OCResult global_oc(const Boundary& b, int J, const DesignRates& rates, double rho, PowerKind kind,
                   const EvalMode& mode, DecisionRule rule, Kind1Event event, bool all_alternatives) {
    b.validate();
    rates.validate();
    if (rule == DecisionRule::threshold && mode.request != EvalMode::Request::monte_carlo) {
        TableCache cache(b.n, rho);
        std::vector<ScenarioValue> alphas, powers;
        for (const auto& cfg : enumerate_null(J, rates))
            alphas.push_back({cfg.label, scenario_number(cfg.label, J),
                              null_formula(cfg, cache, b.m_T, b.m_E), 0.0});
        for (const auto& cfg : all_alternatives ? enumerate_alternative(J, rates) : least_favorable_set(J, rates))
            powers.push_back({cfg.label, scenario_number(cfg.label, J),
                              power_formula(cfg, cache, b.m_T, b.m_E, kind, event), 0.0});
        return summarize(std::move(alphas), std::move(powers), kind, EvalKind::exact, 0);
    }
    GridRequest req{b.n, J, rates, rho, rule, event, mode, all_alternatives};
    return evaluate_grid(req).result(b.m_T, b.m_E, kind);
}

std::vector<ScenarioValue> power_over_all_alternatives(const Boundary& b, int J,
                                                       const DesignRates& rates, double rho,
                                                       PowerKind kind) {
    b.validate();
    TableCache cache(b.n, rho);
    std::vector<ScenarioValue> out;
    for (const auto& cfg : enumerate_alternative(J, rates))
        out.push_back({cfg.label, scenario_number(cfg.label, J),
                       power_formula(cfg, cache, b.m_T, b.m_E, kind, Kind1Event::factor), 0.0});
    return out;
}

std::vector<Boundary> full_boundary_grid(int n) {
    std::vector<Boundary> out;
    for (int mt = 0; mt <= n; ++mt)
        for (int me = 0; me <= n; ++me) out.push_back({n, mt, me});
    return out;
}

Theorem1Report verify_theorem1(int J, const DesignRates& rates, double rho,
                               std::span<const Boundary> grid) {
    rates.validate();
    Theorem1Report report;
    report.J = J;
    report.rho = rho;
    const auto alts = enumerate_alternative(J, rates);
    const auto lfs = least_favorable_set(J, rates);
    std::map<int, std::unique_ptr<TableCache>> caches;

    for (const auto& b : grid) {
        b.validate();
        auto& slot = caches[b.n];
        if (!slot) slot = std::make_unique<TableCache>(b.n, rho);
        TableCache& cache = *slot;

        double lfs_min[2] = {1.0, 1.0};
        for (int k = 0; k < 2; ++k)
            for (const auto& cfg : lfs)
                lfs_min[k] = std::min(lfs_min[k],
                                      power_formula(cfg, cache, b.m_T, b.m_E,
                                                    k == 0 ? PowerKind::I : PowerKind::II,
                                                    Kind1Event::factor));
        for (const auto& cfg : alts) {
            Theorem1Row row;
            row.boundary = b;
            row.label = cfg.label;
            for (int k = 0; k < 2; ++k) {
                row.beta[k] = power_formula(cfg, cache, b.m_T, b.m_E,
                                            k == 0 ? PowerKind::I : PowerKind::II, Kind1Event::factor);
                row.lfs_min[k] = lfs_min[k];
                row.violated[k] = lfs_min[k] > row.beta[k] + 1e-12;
                report.violations += row.violated[k] ? 1 : 0;
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace merit
