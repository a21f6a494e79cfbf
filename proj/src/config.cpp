#include "merit/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace merit {

namespace {

void check_keys(const YAML::Node& node, const std::string& section, const std::set<std::string>& allowed) {
    if (!node.IsMap()) throw std::invalid_argument(fmt::format("'{}' must be a mapping", section));
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key))
            throw std::invalid_argument(fmt::format("unknown field '{}{}{}'", section,
                                                    section.empty() ? "" : ".", key));
    }
}

template <class T>
void read(const YAML::Node& node, const char* key, const std::string& section, T& out) {
    const auto v = node[key];
    if (!v) return;
    try {
        out = v.as<T>();
    } catch (const YAML::Exception&) {
        throw std::invalid_argument(fmt::format("field '{}.{}' has the wrong type", section, key));
    }
}

Boundary read_boundary(const YAML::Node& node, const std::string& section) {
    check_keys(node, section, {"n", "m_T", "m_E"});
    Boundary b;
    for (const char* k : {"n", "m_T", "m_E"})
        if (!node[k]) throw std::invalid_argument(fmt::format("field '{}.{}' is required", section, k));
    read(node, "n", section, b.n);
    read(node, "m_T", section, b.m_T);
    read(node, "m_E", section, b.m_E);
    return b;
}

void read_design(const YAML::Node& node, DesignSpec& spec) {
    check_keys(node, "design", {"J", "rates", "alpha_star", "beta_star", "power_kind", "rho", "n_max",
                                "rule", "kind1_event"});
    read(node, "J", "design", spec.J);
    read(node, "alpha_star", "design", spec.alpha_star);
    read(node, "beta_star", "design", spec.beta_star);
    read(node, "rho", "design", spec.rho);
    read(node, "n_max", "design", spec.n_max);
    if (node["power_kind"]) {
        int k = 1;
        read(node, "power_kind", "design", k);
        spec.power_kind = parse_power_kind(k);
    }
    if (node["rule"]) {
        std::string r;
        read(node, "rule", "design", r);
        spec.rule = parse_rule(r);
    }
    if (node["kind1_event"]) {
        std::string e;
        read(node, "kind1_event", "design", e);
        if (e == "selection") spec.event = Kind1Event::selection;
        else if (e == "factor") spec.event = Kind1Event::factor;
        else throw std::invalid_argument(fmt::format("design.kind1_event must be selection or factor, got '{}'", e));
    }
    if (const auto r = node["rates"]) {
        check_keys(r, "design.rates", {"phi_T0", "phi_T1", "phi_E0", "phi_E1"});
        read(r, "phi_T0", "design.rates", spec.rates.phi_T0);
        read(r, "phi_T1", "design.rates", spec.rates.phi_T1);
        read(r, "phi_E0", "design.rates", spec.rates.phi_E0);
        read(r, "phi_E1", "design.rates", spec.rates.phi_E1);
    }
}

void read_interim(const YAML::Node& node, RunConfig& cfg) {
    check_keys(node, "interim", {"looks", "C_T", "C_E", "prior_a", "prior_b", "isotonic_toxicity",
                                 "isotonic_efficacy"});
    if (const auto looks = node["looks"]) {
        if (looks.IsSequence()) {
            cfg.interim.looks.clear();
            for (const auto& l : looks) {
                try {
                    cfg.interim.looks.push_back(l.as<double>());
                } catch (const YAML::Exception&) {
                    cfg.interim.looks.push_back(parse_looks(l.as<std::string>()).front());
                }
            }
        } else {
            cfg.interim.looks = parse_looks(looks.as<std::string>());
        }
    }
    read(node, "C_T", "interim", cfg.interim.C_T);
    read(node, "C_E", "interim", cfg.interim.C_E);
    read(node, "prior_a", "interim", cfg.interim.prior_a);
    read(node, "prior_b", "interim", cfg.interim.prior_b);
    read(node, "isotonic_toxicity", "interim", cfg.isotonic.toxicity);
    read(node, "isotonic_efficacy", "interim", cfg.isotonic.efficacy);
}

void read_verify(const YAML::Node& node, VerifySettings& v) {
    check_keys(node, "verify", {"J", "n", "rho", "boundary"});
    read(node, "J", "verify", v.J);
    read(node, "n", "verify", v.n);
    read(node, "rho", "verify", v.rho);
    if (node["boundary"]) v.single = read_boundary(node["boundary"], "verify.boundary");
}

void read_table2(const YAML::Node& node, RunConfig& cfg) {
    check_keys(node, "table2", {"efficacy_pairs", "J", "check_replicates"});
    if (const auto pairs = node["efficacy_pairs"]) {
        if (!pairs.IsSequence()) throw std::invalid_argument("table2.efficacy_pairs must be a list of pairs");
        for (const auto& p : pairs) {
            if (!p.IsSequence() || p.size() != 2)
                throw std::invalid_argument("table2.efficacy_pairs entries must be [phi_E0, phi_E1]");
            cfg.table2.efficacy_pairs.emplace_back(p[0].as<double>(), p[1].as<double>());
        }
        if (cfg.table2.efficacy_pairs.empty())
            throw std::invalid_argument("table2.efficacy_pairs must not be empty");
    }
    read(node, "J", "table2", cfg.table2.J);
    read(node, "check_replicates", "table2", cfg.table2_check_replicates);
}

}  // namespace

EvalMode::Request parse_mode(const std::string& text) {
    if (text == "exact") return EvalMode::Request::exact;
    if (text == "mc" || text == "monte_carlo") return EvalMode::Request::monte_carlo;
    if (text == "auto") return EvalMode::Request::automatic;
    throw std::invalid_argument(fmt::format("mode must be exact, mc or auto, got '{}'", text));
}

DecisionRule parse_rule(const std::string& text) {
    if (text == "isotonic") return DecisionRule::isotonic;
    if (text == "threshold") return DecisionRule::threshold;
    throw std::invalid_argument(fmt::format("rule must be isotonic or threshold, got '{}'", text));
}

PowerKind parse_power_kind(int value) {
    if (value == 1) return PowerKind::I;
    if (value == 2) return PowerKind::II;
    throw std::invalid_argument(fmt::format("power_kind must be 1 or 2, got {}", value));
}

ScenarioSet parse_scenarios(const std::string& text) {
    if (text == "all") return ScenarioSet::all;
    if (text == "null") return ScenarioSet::nulls;
    if (text == "alternative") return ScenarioSet::alternatives;
    if (text == "lfs") return ScenarioSet::least_favorable;
    throw std::invalid_argument(fmt::format("scenarios must be all, null, alternative or lfs, got '{}'", text));
}

std::string to_string(EvalMode::Request r) {
    switch (r) {
        case EvalMode::Request::exact: return "exact";
        case EvalMode::Request::monte_carlo: return "mc";
        case EvalMode::Request::automatic: return "auto";
    }
    return "?";
}

std::string to_string(DecisionRule r) { return r == DecisionRule::isotonic ? "isotonic" : "threshold"; }

std::string to_string(Kind1Event e) { return e == Kind1Event::selection ? "selection" : "factor"; }

void RunConfig::validate() const {
    spec.validate();
    if (boundary) boundary->validate();
    interim.validate();
    if (format != "table" && format != "csv")
        throw std::invalid_argument(fmt::format("output.format must be table or csv, got '{}'", format));
    for (int J : verify.J)
        if (J < 1) throw std::invalid_argument(fmt::format("verify.J entries must be >= 1, got {}", J));
    for (int n : verify.n)
        if (n < 1) throw std::invalid_argument(fmt::format("verify.n entries must be >= 1, got {}", n));
    for (double r : verify.rho)
        if (!(r > -1.0 && r < 1.0)) throw std::invalid_argument(fmt::format("verify.rho entries must lie in (-1, 1), got {}", r));
    if (verify.single) verify.single->validate();
    if (table2_check_replicates < 1) throw std::invalid_argument("table2.check_replicates must be >= 1");
}

RunConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw std::invalid_argument(fmt::format("config is not valid YAML: {}", e.what()));
    }
    RunConfig cfg;
    if (!root || root.IsNull()) return cfg;
    check_keys(root, "", {"design", "evaluation", "boundary", "interim", "scenarios", "verify", "table2", "output"});

    if (root["design"]) read_design(root["design"], cfg.spec);
    if (const auto e = root["evaluation"]) {
        check_keys(e, "evaluation", {"mode", "replicates", "seed"});
        if (e["mode"]) {
            std::string m;
            read(e, "mode", "evaluation", m);
            cfg.spec.mode.request = parse_mode(m);
        }
        read(e, "replicates", "evaluation", cfg.spec.mode.replicates);
        read(e, "seed", "evaluation", cfg.spec.mode.seed);
    }
    if (root["boundary"]) cfg.boundary = read_boundary(root["boundary"], "boundary");
    if (root["interim"]) read_interim(root["interim"], cfg);
    if (root["scenarios"]) {
        std::string s;
        read(root, "scenarios", "", s);
        cfg.scenarios = parse_scenarios(s);
    }
    if (root["verify"]) read_verify(root["verify"], cfg.verify);
    if (root["table2"]) read_table2(root["table2"], cfg);
    if (const auto o = root["output"]) {
        check_keys(o, "output", {"path", "format"});
        read(o, "path", "output", cfg.out);
        read(o, "format", "output", cfg.format);
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(fmt::format("cannot open config '{}'", path));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace merit
